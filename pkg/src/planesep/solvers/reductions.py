"""The 3Sum-hard problems, each reduced to Point-On-3-Lines or General-Covering."""

from __future__ import annotations

import math
from typing import Optional, Sequence

from ..arrangement import Box
from ..geometry import (
    GeometryError,
    HalfPlane,
    Line,
    Point,
    Segment,
    Strip,
    Triangle,
    dual_of_point,
    dual_of_segment,
    intersect,
    side,
)
from ..quantum import CostLedger, ExecMode
from .covering import CoveringInstance, solve_general_covering
from .hull import convex_hull
from .lines import solve_point_on_3_lines
from .params import SolverConfig


def _ledger(ledger: Optional[CostLedger]) -> CostLedger:
    return ledger if ledger is not None else CostLedger()


def _nlogn(n: int) -> int:
    return max(1, n) * max(1, math.ceil(math.log2(max(n, 2))))


def solve_3_points_on_line(points: Sequence[Point], eps: float = 0.1, mode: Optional[ExecMode] = None,
                           ledger: Optional[CostLedger] = None, rng=None, *,
                           config: Optional[SolverConfig] = None) -> Optional[tuple[int, int, int]]:
    """Indices of three collinear points, or None.  Points must be distinct."""
    pts = list(points)
    if len(set(pts)) != len(pts):
        raise GeometryError("points must be distinct")
    ledger = _ledger(ledger)
    ledger.charge(steps=_nlogn(len(pts)))
    # duality cannot see vertical lines
    by_x: dict = {}
    for i, p in enumerate(pts):
        by_x.setdefault(p.x, []).append(i)
    for ids in by_x.values():
        if len(ids) >= 3:
            return tuple(ids[:3])
    w = solve_point_on_3_lines([dual_of_point(p) for p in pts], eps, mode, ledger, rng, config=config)
    return None if w is None else w.indices


def box_polygon(box: Box) -> list[Point]:
    return box.corners()


def solve_strips_cover_box(strips: Sequence[Strip], box: Box, eps: float = 0.1,
                           mode: Optional[ExecMode] = None, ledger: Optional[CostLedger] = None,
                           rng=None, *, config: Optional[SolverConfig] = None) -> Optional[Point]:
    """A point of the closed box outside every open strip, or None if covered.

    The witness is a crossing of two lines among the strip boundaries and the
    box edges.
    """
    inst = CoveringInstance(list(strips), extra_lines=list(box.edge_lines().values()),
                            region=box.corners())
    return solve_general_covering(inst, eps, mode, _ledger(ledger), rng, config=config)


def solve_triangles_cover_triangle(triangles: Sequence[Triangle], target: Triangle, eps: float = 0.1,
                                   mode: Optional[ExecMode] = None, ledger: Optional[CostLedger] = None,
                                   rng=None, *, config: Optional[SolverConfig] = None) -> Optional[Point]:
    """A point of the closed target outside every open triangle, or None."""
    inst = CoveringInstance(list(triangles), extra_lines=list(target.lines()),
                            region=list(target.vertices))
    return solve_general_covering(inst, eps, mode, _ledger(ledger), rng, config=config)


def solve_point_covering(halfplanes: Sequence[HalfPlane], t: int, eps: float = 0.1,
                         mode: Optional[ExecMode] = None, ledger: Optional[CostLedger] = None,
                         rng=None, *, config: Optional[SolverConfig] = None) -> Optional[Point]:
    """A point lying in at least ``t`` of the closed half-planes, or None."""
    if not 1 <= t <= len(halfplanes):
        raise ValueError("need 1 <= t <= number of half-planes")
    inst = CoveringInstance(list(halfplanes), depth=t)
    return solve_general_covering(inst, eps, mode, _ledger(ledger), rng, config=config)


def _require_vertical(segments: Sequence[Segment]) -> None:
    for s in segments:
        if not s.vertical:
            raise GeometryError("segments must be vertical")


def blocks(line: Line, seg: Segment) -> bool:
    """Whether ``line`` passes through the open relative interior of ``seg``."""
    return side(line, seg.p) * side(line, seg.q) < 0


def meets(line: Line, seg: Segment) -> bool:
    return side(line, seg.p) * side(line, seg.q) <= 0


def visibility_witness_ok(line: Line, obstacles: Sequence[Segment], s1: Segment, s2: Segment) -> bool:
    lo, hi = sorted((s1.p.x, s2.p.x))
    if line.vertical or not (meets(line, s1) and meets(line, s2)):
        return False
    return not any(blocks(line, o) for o in obstacles if lo <= o.p.x <= hi)


def solve_visibility_between_segments(segments: Sequence[Segment], s1: Segment, s2: Segment,
                                      eps: float = 0.1, mode: Optional[ExecMode] = None,
                                      ledger: Optional[CostLedger] = None, rng=None, *,
                                      config: Optional[SolverConfig] = None) -> Optional[Line]:
    """A line meeting ``s1`` and ``s2`` that passes through no obstacle's open
    interior between them, or None.  Grazing obstacle endpoints is allowed.
    """
    _require_vertical(list(segments) + [s1, s2])
    if s1.p.x == s2.p.x:
        raise GeometryError("s1 and s2 must lie at different abscissae")
    ledger = _ledger(ledger)
    lo, hi = sorted((s1.p.x, s2.p.x))
    obstacles = [o for o in segments if lo <= o.p.x <= hi]
    d1, d2 = dual_of_segment(s1), dual_of_segment(s2)
    corners = [intersect(a, b) for a in d1.lines() for b in d2.lines()]
    region = convex_hull(corners)
    inst = CoveringInstance([dual_of_segment(o) for o in obstacles],
                            extra_lines=list(d1.lines()) + list(d2.lines()), region=region)
    x = solve_general_covering(inst, eps, mode, ledger, rng, config=config)
    if x is None:
        return None
    line = dual_of_point(x)
    if not visibility_witness_ok(line, segments, s1, s2):
        raise GeometryError("internal error: invalid sightline")
    return line


def is_separator(line: Line, segments: Sequence[Segment]) -> bool:
    """No open segment is crossed and both sides hold at least one segment."""
    sides = set()
    for s in segments:
        a, b = side(line, s.p), side(line, s.q)
        if a * b < 0:
            return False
        if a == b == 0:
            return False
        sides.add(a or b)
    return sides == {-1, 1}


def _same_x_separator(segments: Sequence[Segment]) -> Optional[Line]:
    spans = sorted((s.low.y, s.high.y) for s in segments)
    top = spans[0][1]
    for lo, hi in spans[1:]:
        if top <= lo:
            return Line.nonvertical(0, top)
        top = max(top, hi)
    return None


def solve_segment_separator(segments: Sequence[Segment], eps: float = 0.1, mode: Optional[ExecMode] = None,
                            ledger: Optional[CostLedger] = None, rng=None, *,
                            config: Optional[SolverConfig] = None) -> Optional[Line]:
    """A non-vertical line crossing no open segment with segments on both sides."""
    segs = list(segments)
    _require_vertical(segs)
    ledger = _ledger(ledger)
    n = len(segs)
    if n < 2:
        return None
    ledger.charge(steps=_nlogn(n))
    if len({s.p.x for s in segs}) == 1:
        return _same_x_separator(segs)
    hull = convex_hull([p for s in segs for p in (s.p, s.q)], ledger)
    hull_lines = {Line.through(hull[i], hull[(i + 1) % len(hull)]) for i in range(len(hull))} if len(hull) > 1 else set()

    def predicate(x: Point) -> bool:
        line = dual_of_point(x)
        return line not in hull_lines and is_separator(line, segs)

    strips = [dual_of_segment(s) for s in segs]
    inst = CoveringInstance(strips, predicate=predicate, predicate_steps=n)
    x = solve_general_covering(inst, eps, mode, ledger, rng, config=config)
    return None if x is None else dual_of_point(x)
