"""Solvers for Point-On-3-Lines, General-Covering and their reductions."""

from .covering import CoveringInstance, solve_general_covering
from .hull import convex_hull
from .lines import Concurrency, find_triple, solve_point_on_3_lines
from .params import Params, SolverConfig, choose_parameters
from .reductions import (
    is_separator,
    solve_3_points_on_line,
    solve_point_covering,
    solve_segment_separator,
    solve_strips_cover_box,
    solve_triangles_cover_triangle,
    solve_visibility_between_segments,
    visibility_witness_ok,
)

__all__ = [
    "Concurrency",
    "CoveringInstance",
    "Params",
    "SolverConfig",
    "choose_parameters",
    "convex_hull",
    "find_triple",
    "is_separator",
    "solve_3_points_on_line",
    "solve_general_covering",
    "solve_point_covering",
    "solve_point_on_3_lines",
    "solve_segment_separator",
    "solve_strips_cover_box",
    "solve_triangles_cover_triangle",
    "solve_visibility_between_segments",
    "visibility_witness_ok",
]
