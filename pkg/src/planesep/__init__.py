"""Exact plane-separation solvers for Point-On-3-Lines and related
3Sum-hard problems, with quantum subroutines emulated under a cost ledger."""

from .geometry import (
    Angle,
    GeometryError,
    HalfPlane,
    Line,
    Point,
    Segment,
    Strip,
    Triangle,
    dual_of_line,
    dual_of_point,
    dual_of_segment,
)
from .quantum import CostLedger, ExecMode, amplitude_amplify, grover_search, solve_3sum
from .solvers import (
    CoveringInstance,
    SolverConfig,
    solve_3_points_on_line,
    solve_general_covering,
    solve_point_covering,
    solve_point_on_3_lines,
    solve_segment_separator,
    solve_strips_cover_box,
    solve_triangles_cover_triangle,
    solve_visibility_between_segments,
)

__version__ = "0.1.0"
