"""Exact convex hull (monotone chain)."""

from __future__ import annotations

import math
from typing import Optional, Sequence

from ..geometry import Point, orientation
from ..quantum import CostLedger


def convex_hull(points: Sequence[Point], ledger: Optional[CostLedger] = None) -> list[Point]:
    """Counter-clockwise hull starting at the lexicographically smallest point.

    Collinear boundary points are dropped.  One or two distinct points give
    a degenerate hull of that many vertices.
    """
    pts = sorted(set(points))
    n = len(pts)
    if ledger is not None:
        ledger.charge(steps=max(1, n) * max(1, math.ceil(math.log2(max(n, 2)))))
    if n <= 2:
        return pts

    def chain(seq):
        out: list[Point] = []
        for p in seq:
            while len(out) >= 2 and orientation(out[-2], out[-1], p) <= 0:
                out.pop()
            out.append(p)
        return out

    lower = chain(pts)
    upper = chain(reversed(pts))
    hull = lower[:-1] + upper[:-1]
    return hull if len(hull) >= 2 else pts[:1]
