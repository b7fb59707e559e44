"""Clipped line arrangements and their triangulation into regions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, cmp_to_key
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels as K
from .geometry import (
    COINCIDENT,
    GeometryError,
    Line,
    Point,
    as_scalar,
    intersect,
    orientation,
    polygon_area2,
)

# supporting-line ids of the clip box edges
BOX_BOTTOM, BOX_RIGHT, BOX_TOP, BOX_LEFT = -1, -2, -3, -4


@dataclass(frozen=True)
class Box:
    xmin: Fraction
    ymin: Fraction
    xmax: Fraction
    ymax: Fraction

    def __post_init__(self):
        for name in ("xmin", "ymin", "xmax", "ymax"):
            object.__setattr__(self, name, as_scalar(getattr(self, name)))
        if not (self.xmin < self.xmax and self.ymin < self.ymax):
            raise GeometryError("box must have positive area")

    def contains(self, p: Point, strict: bool = False) -> bool:
        if strict:
            return self.xmin < p.x < self.xmax and self.ymin < p.y < self.ymax
        return self.xmin <= p.x <= self.xmax and self.ymin <= p.y <= self.ymax

    def corners(self) -> list[Point]:
        """Counter-clockwise from the lower-left corner."""
        return [
            Point(self.xmin, self.ymin),
            Point(self.xmax, self.ymin),
            Point(self.xmax, self.ymax),
            Point(self.xmin, self.ymax),
        ]

    def edge_lines(self) -> dict[int, Line]:
        return {
            BOX_BOTTOM: Line.nonvertical(0, self.ymin),
            BOX_RIGHT: Line.vertical_at(self.xmax),
            BOX_TOP: Line.nonvertical(0, self.ymax),
            BOX_LEFT: Line.vertical_at(self.xmin),
        }

    @property
    def area(self) -> Fraction:
        return (self.xmax - self.xmin) * (self.ymax - self.ymin)


def coefficient_bound(lines: Iterable[Line]) -> tuple[int, int]:
    """Largest numerator magnitude N and denominator D over all line scalars."""
    N, D = 1, 1
    for line in lines:
        for v in ((line.x0,) if line.vertical else (line.a, line.b)):
            N = max(N, abs(v.numerator))
            D = max(D, v.denominator)
    return N, D


def compute_clip_box(lines: Sequence[Line], extra_margin=1) -> Box:
    """Square box strictly containing every pairwise intersection point.

    With numerators at most N and denominators at most D, an intersection has
    ``|x| <= 2*N*D**2`` and ``|y| <= N*|x| + N``; the half-width adds
    ``extra_margin`` on top of ``2*N**2*D**2 + N``.  Each line's anchor point
    (``|coordinate| <= N``) is inside too, so every line crosses the box.
    """
    if not lines:
        raise GeometryError("clip box needs at least one line")
    N, D = coefficient_bound(lines)
    half = Fraction(2 * N * N * D * D + N) + as_scalar(extra_margin)
    if half <= 0:
        raise GeometryError("margin too negative")
    return Box(-half, -half, half, half)


def _box_crossings(line: Line, box: Box) -> list[Point]:
    pts: set[Point] = set()
    if line.vertical:
        if box.xmin <= line.x0 <= box.xmax:
            pts.update((Point(line.x0, box.ymin), Point(line.x0, box.ymax)))
    else:
        for x in (box.xmin, box.xmax):
            y = line.y_at(x)
            if box.ymin <= y <= box.ymax:
                pts.add(Point(x, y))
        if line.a != 0:
            for y in (box.ymin, box.ymax):
                x = (y - line.b) / line.a
                if box.xmin <= x <= box.xmax:
                    pts.add(Point(x, y))
    return sorted(pts)


def _angle_cmp(d1: tuple[Fraction, Fraction], d2: tuple[Fraction, Fraction]) -> int:
    def half(d):
        return 0 if d[1] > 0 or (d[1] == 0 and d[0] > 0) else 1

    h1, h2 = half(d1), half(d2)
    if h1 != h2:
        return h1 - h2
    cross = d1[0] * d2[1] - d1[1] * d2[0]
    return -1 if cross > 0 else (1 if cross < 0 else 0)


@dataclass
class Arrangement:
    """Planar subdivision of ``box`` by ``lines``.

    ``edges`` holds ``(u, v, line_id)`` with box edges tagged by the negative
    ``BOX_*`` ids.  ``faces`` are counter-clockwise vertex-id cycles and
    ``face_lines[f][i]`` supports the edge from ``faces[f][i]`` to the next
    vertex.
    """

    lines: list[Line]
    box: Box
    vertices: list[Point]
    edges: list[tuple[int, int, int]]
    faces: list[list[int]]
    face_lines: list[list[int]]

    def euler_characteristic(self) -> int:
        # +1 for the unbounded face outside the box
        return len(self.vertices) - len(self.edges) + len(self.faces) + 1

    def face_polygon(self, f: int) -> list[Point]:
        return [self.vertices[v] for v in self.faces[f]]

    def dump(self) -> str:
        """One record per line: vertices, edges, faces."""
        out = []
        for i, v in enumerate(self.vertices):
            out.append(f"V {i} {v.x} {v.y}")
        for u, v, lid in self.edges:
            out.append(f"E {u} {v} {lid}")
        for f, cyc in enumerate(self.faces):
            out.append(f"F {f} " + " ".join(map(str, cyc)))
        return "\n".join(out) + "\n"


def build_arrangement(lines: Sequence[Line], box: Box, ledger=None, depth: int = 0) -> Arrangement:
    """Subdivide ``box`` by ``lines``.

    All pairwise intersections must lie strictly inside ``box``; duplicate
    lines are rejected; lines missing the box interior add nothing.
    Charges ``k**2`` classical steps when a ledger is given.
    """
    lines = list(lines)
    k = len(lines)
    if len(set(lines)) != k:
        raise GeometryError("duplicate lines in arrangement input")

    on_line: list[set[Point]] = [set() for _ in range(k)]
    for i in range(k):
        li = lines[i]
        for j in range(i + 1, k):
            p = intersect(li, lines[j])
            if p == COINCIDENT:
                raise GeometryError("duplicate lines in arrangement input")
            if isinstance(p, Point):
                if not box.contains(p, strict=True):
                    raise GeometryError(f"intersection {p} not strictly inside the clip box")
                on_line[i].add(p)
                on_line[j].add(p)
    box_pts: dict[int, set[Point]] = {e: set() for e in (BOX_BOTTOM, BOX_RIGHT, BOX_TOP, BOX_LEFT)}
    c = box.corners()
    box_pts[BOX_BOTTOM].update((c[0], c[1]))
    box_pts[BOX_RIGHT].update((c[1], c[2]))
    box_pts[BOX_TOP].update((c[2], c[3]))
    box_pts[BOX_LEFT].update((c[3], c[0]))
    for i, line in enumerate(lines):
        cross = _box_crossings(line, box)
        if len(cross) < 2:
            # misses the box or grazes a corner: nothing to subdivide
            continue
        for p in cross:
            on_line[i].add(p)
            if p.y == box.ymin:
                box_pts[BOX_BOTTOM].add(p)
            if p.y == box.ymax:
                box_pts[BOX_TOP].add(p)
            if p.x == box.xmin:
                box_pts[BOX_LEFT].add(p)
            if p.x == box.xmax:
                box_pts[BOX_RIGHT].add(p)

    vid: dict[Point, int] = {}
    vertices: list[Point] = []

    def vertex(p: Point) -> int:
        i = vid.get(p)
        if i is None:
            i = vid[p] = len(vertices)
            vertices.append(p)
        return i

    edge_line: dict[tuple[int, int], int] = {}
    edges: list[tuple[int, int, int]] = []
    # interior vertices: (slope rank, backwards?) per neighbour, which is a
    # valid counter-clockwise cyclic key since only input lines meet there
    order = sorted(range(k), key=lambda i: (lines[i].vertical, lines[i].a if not lines[i].vertical else 0))
    rank = {i: r for r, i in enumerate(order)}
    ray: dict[tuple[int, int], tuple[int, int]] = {}

    def chain(pts: Iterable[Point], lid: int, key) -> None:
        ordered = sorted(pts, key=key)
        for p, q in zip(ordered, ordered[1:]):
            u, v = vertex(p), vertex(q)
            e = (min(u, v), max(u, v))
            if e not in edge_line:
                edge_line[e] = lid
                edges.append((u, v, lid))
                if lid >= 0:
                    ray[(u, v)] = (0, rank[lid])
                    ray[(v, u)] = (1, rank[lid])

    for i, line in enumerate(lines):
        chain(on_line[i], i, (lambda p: p.y) if line.vertical else (lambda p: p.x))
    for e, pts in box_pts.items():
        chain(pts, e, (lambda p: p.x) if e in (BOX_BOTTOM, BOX_TOP) else (lambda p: p.y))

    nbrs: list[list[int]] = [[] for _ in vertices]
    for u, v, _ in edges:
        nbrs[u].append(v)
        nbrs[v].append(u)
    pos: list[dict[int, int]] = []
    for u, ns in enumerate(nbrs):
        pu = vertices[u]
        if box.contains(pu, strict=True):
            ns.sort(key=lambda w: ray[(u, w)])
        else:
            ns.sort(key=cmp_to_key(lambda a, b: _angle_cmp(
                (vertices[a].x - pu.x, vertices[a].y - pu.y),
                (vertices[b].x - pu.x, vertices[b].y - pu.y))))
        pos.append({w: i for i, w in enumerate(ns)})

    seen: set[tuple[int, int]] = set()
    faces: list[list[int]] = []
    face_lines: list[list[int]] = []
    for u0, v0, _ in edges:
        for start in ((u0, v0), (v0, u0)):
            if start in seen:
                continue
            cyc, lids = [], []
            u, v = start
            while (u, v) not in seen:
                seen.add((u, v))
                cyc.append(u)
                lids.append(edge_line[(min(u, v), max(u, v))])
                ns = nbrs[v]
                w = ns[(pos[v][u] - 1) % len(ns)]
                u, v = v, w
            if polygon_area2([vertices[i] for i in cyc]) > 0:
                faces.append(cyc)
                face_lines.append(lids)
    if ledger is not None:
        ledger.charge(steps=k * k, depth=depth)
    return Arrangement(lines, box, vertices, edges, faces, face_lines)


# --- triangulation -----------------------------------------------------------


@dataclass(frozen=True)
class Region:
    """Closed triangle, counter-clockwise.  ``sides[i]`` supports the edge
    ``vertices[i] -> vertices[i+1]``: an input-line index, a negative box id,
    or None for a triangulation diagonal."""

    vertices: tuple[Point, Point, Point]
    sides: tuple[Optional[int], Optional[int], Optional[int]]
    face: int

    def contains(self, p: Point) -> bool:
        v = self.vertices
        return all(orientation(v[i], v[(i + 1) % 3], p) >= 0 for i in range(3))

    def area2(self) -> Fraction:
        return polygon_area2(self.vertices)

    def bounding_line_ids(self) -> list[int]:
        """Input lines among the sides; box edges and diagonals excluded."""
        return [s for s in self.sides if s is not None and s >= 0]


@dataclass
class RegionSet:
    regions: list[Region]
    box: Box
    lines: list[Line]
    faces: int = 0

    def __len__(self) -> int:
        return len(self.regions)

    @cached_property
    def hom(self) -> np.ndarray:
        """Vertex homogeneous coordinates, shape ``(t*3, 3)`` (region-major)."""
        return K.point_array([v for r in self.regions for v in r.vertices])

    @cached_property
    def vertex_table(self) -> tuple[np.ndarray, np.ndarray]:
        """Distinct region vertices as homogeneous rows, plus a ``(t, 3)``
        index array mapping each region corner into them."""
        ids: dict[Point, int] = {}
        idx = np.empty((len(self.regions), 3), dtype=np.int64)
        for r, reg in enumerate(self.regions):
            for c, v in enumerate(reg.vertices):
                idx[r, c] = ids.setdefault(v, len(ids))
        return K.point_array(list(ids)), idx

    @cached_property
    def vertex_block(self) -> K.PointBlock:
        return K.PointBlock(self.vertex_table[0])

    def locate(self, x: Point) -> list[int]:
        """Ids of every closed region containing ``x``, ascending."""
        if not self.box.contains(x):
            raise GeometryError(f"{x} is outside the clip box")
        return [i for i, r in enumerate(self.regions) if r.contains(x)]


def _strip_collinear(cyc: list[Point], lids: list[int]) -> tuple[list[Point], list[int]]:
    # consecutive edges are collinear exactly when they share a supporting
    # line; the merged edge keeps that id
    keep = [i for i in range(len(cyc)) if lids[i - 1] != lids[i]]
    return [cyc[i] for i in keep], [lids[i] for i in keep]


def triangulate(arr: Arrangement, ledger=None, depth: int = 0) -> RegionSet:
    """Fan-triangulate every face from its lexicographically smallest vertex."""
    regions: list[Region] = []
    for f, (cyc, lids) in enumerate(zip(arr.faces, arr.face_lines)):
        pts, ids = _strip_collinear([arr.vertices[v] for v in cyc], lids)
        m = len(pts)
        r = min(range(m), key=lambda i: pts[i])
        pts = pts[r:] + pts[:r]
        ids = ids[r:] + ids[:r]
        for i in range(1, m - 1):
            s0 = ids[0] if i == 1 else None
            s2 = ids[m - 1] if i + 1 == m - 1 else None
            regions.append(Region((pts[0], pts[i], pts[i + 1]), (s0, ids[i], s2), f))
    k = len(arr.lines)
    t = len(regions)
    if k >= 2:
        assert t <= 2 * k * k, f"region count {t} exceeds 2k^2 = {2 * k * k}"
    if ledger is not None:
        ledger.charge(steps=t, depth=depth)
    return RegionSet(regions, arr.box, list(arr.lines), faces=len(arr.faces))
