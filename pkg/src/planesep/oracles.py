"""Brute-force reference answers.

Nothing here touches the separation or recursion code; only the exact
primitives in :mod:`planesep.geometry` are shared.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Optional, Sequence

from .geometry import (
    COINCIDENT,
    Angle,
    HalfPlane,
    Line,
    Point,
    Segment,
    Strip,
    Triangle,
    intersect,
    orientation,
    side,
)

UNCOVERED_IN_REGION = "region-uncovered"
DEPTH = "depth"
CROSSINGS = "crossings"


class OracleRefused(ValueError):
    """Instance larger than the oracle's cap."""


@dataclass(frozen=True)
class OracleReport:
    positive: bool
    witness: object = None
    steps: int = 0


def _cap(n: int, cap: int, what: str) -> None:
    if n > cap:
        raise OracleRefused(f"{what}: {n} exceeds oracle cap {cap}")


def oracle_point_on_3_lines(lines: Sequence[Line], cap: int = 60) -> OracleReport:
    """Pairwise intersections keyed by exact point; coincident inputs count
    as distinct lines sharing every point."""
    _cap(len(lines), cap, "point-on-3-lines")
    hits: dict[Point, set[int]] = {}
    same: list[tuple[int, int]] = []
    steps = 0
    for i, j in itertools.combinations(range(len(lines)), 2):
        steps += 1
        r = intersect(lines[i], lines[j])
        if r == COINCIDENT:
            same.append((i, j))
        elif isinstance(r, Point):
            hits.setdefault(r, set()).update((i, j))
    for p in sorted(hits):
        if len(hits[p]) >= 3:
            return OracleReport(True, (tuple(sorted(hits[p])[:3]), p), steps)
    for i, j in same:
        for l in range(len(lines)):
            if l in (i, j):
                continue
            r = intersect(lines[i], lines[l])
            if r == COINCIDENT:
                return OracleReport(True, (tuple(sorted((i, j, l))), lines[i].anchor()), steps)
            if isinstance(r, Point):
                return OracleReport(True, (tuple(sorted((i, j, l))), r), steps)
    return OracleReport(False, None, steps)


def oracle_3_points_on_line(points: Sequence[Point], cap: int = 60) -> OracleReport:
    """Orientation test over every index triple."""
    _cap(len(points), cap, "3-points-on-line")
    steps = 0
    for i, j, l in itertools.combinations(range(len(points)), 3):
        steps += 1
        if orientation(points[i], points[j], points[l]) == 0:
            return OracleReport(True, (i, j, l), steps)
    return OracleReport(False, None, steps)


# --- cell sampling -----------------------------------------------------------

def _dir(line: Line) -> tuple:
    if line.vertical:
        return (Fraction(0), Fraction(1))
    return (Fraction(1), line.a)


def _half(d) -> int:
    return 0 if d[1] > 0 or (d[1] == 0 and d[0] > 0) else 1


def _angle_order(d1, d2) -> int:
    h1, h2 = _half(d1), _half(d2)
    if h1 != h2:
        return h1 - h2
    cr = d1[0] * d2[1] - d1[1] * d2[0]
    return -1 if cr > 0 else (1 if cr < 0 else 0)


def cell_samples(lines: Sequence[Line]) -> list[Point]:
    """One or more points in every vertex, edge and face of the arrangement."""
    lines = list(dict.fromkeys(lines))
    if not lines:
        return [Point(0, 0)]
    on: list[list[Point]] = [[] for _ in lines]
    through: dict[Point, set[int]] = {}
    for i, j in itertools.combinations(range(len(lines)), 2):
        p = intersect(lines[i], lines[j])
        if isinstance(p, Point):
            through.setdefault(p, set()).update((i, j))
    for p, ids in through.items():
        for i in ids:
            on[i].append(p)
    samples: list[Point] = list(through)

    def along(i: int, p: Point):
        d = _dir(lines[i])
        return p.x * d[0] + p.y * d[1]

    nxt: dict[tuple[int, Point, int], Point] = {}
    for i, line in enumerate(lines):
        d = _dir(line)
        pts = sorted(set(on[i]), key=lambda p: along(i, p))
        if not pts:
            samples.append(line.anchor())
            continue
        for a, b in zip(pts, pts[1:]):
            samples.append(Point((a.x + b.x) / 2, (a.y + b.y) / 2))
            nxt[(i, a, 1)] = b
            nxt[(i, b, -1)] = a
        samples.append(Point(pts[0].x - d[0], pts[0].y - d[1]))
        samples.append(Point(pts[-1].x + d[0], pts[-1].y + d[1]))

    for v, ids in through.items():
        rays = []
        for i in ids:
            d = _dir(lines[i])
            for s in (1, -1):
                end = nxt.get((i, v, s))
                if end is None:
                    end = Point(v.x + s * d[0], v.y + s * d[1])
                rays.append(((s * d[0], s * d[1]), end))
        rays.sort(key=cmp_to_key(lambda r1, r2: _angle_order(r1[0], r2[0])))
        for (_, e1), (_, e2) in zip(rays, rays[1:] + rays[:1]):
            samples.append(Point((v.x + e1.x + e2.x) / 3, (v.y + e1.y + e2.y) / 3))

    if not through:
        # all lines parallel: walk across them along a transversal
        d = _dir(lines[0])
        normal = Line.nonvertical(0, 0) if lines[0].vertical else Line.vertical_at(0)
        cuts = sorted((intersect(l, normal) for l in lines), key=lambda p: (p.x, p.y))
        for a, b in zip(cuts, cuts[1:]):
            samples.append(Point((a.x + b.x) / 2, (a.y + b.y) / 2))
        off = (1, 0) if lines[0].vertical else (0, 1)
        samples.append(Point(cuts[0].x - off[0], cuts[0].y - off[1]))
        samples.append(Point(cuts[-1].x + off[0], cuts[-1].y + off[1]))
    return samples


def _interior(p: Point, obj) -> bool:
    if isinstance(obj, Angle) and obj.double:
        return any(_interior(p, piece) for piece in obj.pieces())
    A = obj.constraints
    return all(c[0] * p.x + c[1] * p.y + c[2] > 0 for c in A)


def _in_closed_polygon(p: Point, poly: Sequence[Point]) -> bool:
    signs = {orientation(poly[i], poly[(i + 1) % len(poly)], p) for i in range(len(poly))}
    return not ({1, -1} <= signs)


def oracle_coverage(objects: Sequence[object], mode: str, *, region: Optional[Sequence[Point]] = None,
                    t: int = 0, extra_lines: Sequence[Line] = (), predicate=None,
                    cap: int = 40) -> OracleReport:
    """Exact coverage questions by sampling every cell of the full arrangement.

    ``region-uncovered``: is some point of the closed ``region`` outside every
    open object?  ``depth``: does some point lie in at least ``t`` closed
    half-planes?  ``crossings``: is some crossing of two boundary lines (or
    ``extra_lines``) outside every open object and accepted by ``predicate``?
    """
    _cap(len(objects), cap, "coverage")
    lines: list[Line] = []
    for o in objects:
        lines.extend(o.lines())
    lines.extend(extra_lines)
    if region is not None:
        lines.extend(Line.through(region[i], region[(i + 1) % len(region)]) for i in range(len(region)))
    steps = 0
    if mode == CROSSINGS:
        pts = set()
        uniq = list(dict.fromkeys(lines))
        for a, b in itertools.combinations(uniq, 2):
            p = intersect(a, b)
            if isinstance(p, Point):
                pts.add(p)
        for p in sorted(pts):
            steps += len(objects)
            if region is not None and not _in_closed_polygon(p, region):
                continue
            if not any(_interior(p, o) for o in objects) and (predicate is None or predicate(p)):
                return OracleReport(True, p, steps)
        return OracleReport(False, None, steps)
    samples = cell_samples(lines)
    if mode == UNCOVERED_IN_REGION:
        for p in samples:
            steps += len(objects)
            if region is not None and not _in_closed_polygon(p, region):
                continue
            if not any(_interior(p, o) for o in objects):
                return OracleReport(True, p, steps)
        return OracleReport(False, None, steps)
    if mode == DEPTH:
        best, arg = -1, None
        for p in samples:
            steps += len(objects)
            d = sum(1 for h in objects if h.contains(p))
            if d > best:
                best, arg = d, p
        return OracleReport(best >= t, arg if best >= t else None, steps)
    raise ValueError(f"unknown coverage mode {mode!r}")


# --- sightlines --------------------------------------------------------------

def _crosses_open(line: Line, s: Segment) -> bool:
    return side(line, s.p) * side(line, s.q) < 0


def _touches(line: Line, s: Segment) -> bool:
    return side(line, s.p) * side(line, s.q) <= 0


def _separates(line: Line, segments: Sequence[Segment]) -> bool:
    seen = set()
    for s in segments:
        a, b = side(line, s.p), side(line, s.q)
        if a * b < 0 or a == b == 0:
            return False
        seen.add(a or b)
    return seen == {1, -1}


def oracle_sightlines(segments: Sequence[Segment], s1: Optional[Segment] = None,
                      s2: Optional[Segment] = None, *, separator: bool = False,
                      cap: int = 60) -> OracleReport:
    """Enumerate lines through endpoint pairs (and horizontals through every
    endpoint) and test each against the full definition."""
    _cap(len(segments), cap, "sightlines")
    ends = [p for s in segments for p in (s.p, s.q)]
    if not separator:
        ends += [s1.p, s1.q, s2.p, s2.q]
        lo, hi = sorted((s1.p.x, s2.p.x))
        blockers = [o for o in segments if lo <= o.p.x <= hi]
    ends = sorted(set(ends))
    cands = {Line.nonvertical(0, p.y) for p in ends}
    for a, b in itertools.combinations(ends, 2):
        if a.x != b.x:
            cands.add(Line.through(a, b))
    steps = 0
    for line in sorted(cands, key=lambda l: (l.a, l.b)):
        steps += len(segments)
        if separator:
            ok = _separates(line, segments)
        else:
            ok = _touches(line, s1) and _touches(line, s2) and not any(_crosses_open(line, o) for o in blockers)
        if ok:
            return OracleReport(True, line, steps)
    return OracleReport(False, None, steps)


def oracle_3sum(values: Sequence[int], cap: int = 400) -> OracleReport:
    _cap(len(values), cap, "3sum")
    steps = 0
    for i, j, k in itertools.combinations(range(len(values)), 3):
        steps += 1
        if values[i] + values[j] + values[k] == 0:
            return OracleReport(True, (values[i], values[j], values[k]), steps)
    return OracleReport(False, None, steps)
