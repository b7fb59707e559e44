"""Random plane separation: sample k boundary lines, triangulate their
arrangement, and record which input objects meet each region."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence, Union

import numpy as np

from . import _kernels as K
from .arrangement import Box, RegionSet, build_arrangement, compute_clip_box, triangulate
from .geometry import (
    Angle,
    GeometryError,
    HalfPlane,
    Line,
    Point,
    Strip,
    Triangle,
    clip_polygon,
    polygon_area2,
)

GeomObject = Union[Line, Strip, Angle, HalfPlane, Triangle]

FULL, PARTIAL, NONE = "full", "partial", "none"

# keeps the (lines x region-vertices) sign block around 16M entries
_CHUNK_CELLS = 1 << 24


class SeparationError(RuntimeError):
    """Some region's crossing set exceeded the size bound (restartable)."""


@dataclass(frozen=True)
class SizeBound:
    threshold: int

    def __post_init__(self):
        if self.threshold < 1:
            raise ValueError("threshold must be positive")

    def violated_by(self, size: int) -> bool:
        return size > self.threshold


def size_bound(n: int, k: int, eps: float) -> SizeBound:
    """``ceil(3 * (n/k) * (5 ln n + ln(2/eps)))`` with natural logarithms."""
    if not n >= k >= 1:
        raise ValueError("need n >= k >= 1")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    value = 3 * (n / k) * (5 * math.log(n) + math.log(2 / eps))
    return SizeBound(max(1, math.ceil(value - 1e-9)))


def boundary_lines(obj: GeomObject) -> tuple[Line, ...]:
    if isinstance(obj, Line):
        return (obj,)
    return obj.lines()


@dataclass
class Separation:
    """Result of :func:`random_plane_separation`.

    ``lines`` are the distinct boundary lines of the input (``object_lines``
    maps objects to them); ``sample`` indexes into ``lines``.  For line
    inputs ``crossing_sets[r]`` lists the lines meeting the closed region r.
    For covering objects it lists the objects that partially cover r, while
    ``crossing_lines[r]`` lists every boundary line meeting r and
    ``fully_covering[r]`` the objects that contain r.
    """

    lines: list[Line]
    object_lines: list[tuple[int, ...]]
    sample: list[int]
    regions: RegionSet
    crossing_sets: list[np.ndarray]
    crossing_lines: list[np.ndarray]
    fully_covering: list[np.ndarray]
    boundary_witnesses: list[tuple[Point, tuple[int, int, int]]] = field(default_factory=list)

    @property
    def t(self) -> int:
        return len(self.regions)

    def max_crossing(self) -> int:
        return max((len(c) for c in self.crossing_lines), default=0)


def _group_pairs(rows: np.ndarray, cols: np.ndarray, t: int) -> list[np.ndarray]:
    """Turn (item, region) pairs into per-region sorted item arrays."""
    if rows.size == 0:
        return [np.zeros(0, dtype=np.int64) for _ in range(t)]
    order = np.lexsort((rows, cols))
    rows, cols = rows[order], cols[order]
    cuts = np.searchsorted(cols, np.arange(t + 1))
    return [rows[cuts[i]:cuts[i + 1]] for i in range(t)]


def _region_signs(larr: np.ndarray, rs: RegionSet) -> np.ndarray:
    """Sign of every line at every region corner, shape ``(n, t, 3)``."""
    _, idx = rs.vertex_table
    return rs.vertex_block.signs(larr)[:, idx]


def _line_crossings(larr: np.ndarray, rs: RegionSet) -> list[np.ndarray]:
    # a line misses a closed triangle iff all three corners are strictly on
    # one side; the test runs on masks packed eight lines to a byte
    _, idx = rs.vertex_table
    t, n = len(rs), larr.shape[0]
    pos, neg = rs.vertex_block.sign_bits(larr, _CHUNK_CELLS)
    nb = pos.shape[1]
    tail = np.uint8((0xFF << (8 * nb - n)) & 0xFF)
    step = max(1, _CHUNK_CELLS // max(1, nb))
    rows, cols = [], []
    for start in range(0, t, step):
        i0, i1, i2 = (idx[start:start + step, c] for c in range(3))
        cross = ~((pos[i0] & pos[i1] & pos[i2]) | (neg[i0] & neg[i1] & neg[i2]))
        if nb:
            cross[:, -1] &= tail
        r, b = np.nonzero(cross)
        bits = np.unpackbits(cross[r, b][:, None], axis=1)
        rr, bit = np.nonzero(bits)
        rows.append(b[rr].astype(np.int64) * 8 + bit)
        cols.append(r[rr] + start)
    return _group_pairs(np.concatenate(rows), np.concatenate(cols), t)


def _boundary_witnesses(larr: np.ndarray, sample: Sequence[int]) -> list[tuple[Point, tuple[int, int, int]]]:
    found: dict[tuple, tuple[int, int, int]] = {}
    n = larr.shape[0]
    for s in sample:
        others = np.array([i for i in range(n) if i != s], dtype=np.int64)
        if others.size < 2:
            continue
        pts = K.cross_rows(larr[others], np.repeat(larr[s:s + 1], others.size, axis=0))
        finite = pts[:, 2] != 0
        pts, ids = K.normalize(pts[finite]), others[finite]
        for grp in K.duplicate_groups(pts):
            key = tuple(int(v) for v in pts[grp[0]])
            if key not in found:
                a, b = sorted(int(ids[g]) for g in grp[:2])
                found[key] = tuple(sorted((s, a, b)))
    return [(Point.from_hom(*key), ids) for key, ids in sorted(found.items())]


def _classify(objects: Sequence[GeomObject], rs: RegionSet) -> list[list[str]]:
    """Relation of every (object, region) pair; objects are open convex
    regions except :class:`HalfPlane`, which is closed."""
    t = len(rs)
    cons, owner = [], []
    for o, obj in enumerate(objects):
        if isinstance(obj, Angle) and obj.double:
            raise GeometryError("split double wedges before separation")
        for c in obj.constraints:
            cons.append(c)
            owner.append(o)
    if not cons:
        return [[] for _ in objects]
    S = _region_signs(K._as_array(cons), rs)
    pos_all = (S > 0).all(axis=2)
    nonneg_all = (S >= 0).all(axis=2)
    nonpos_all = (S <= 0).all(axis=2)
    neg_all = (S < 0).all(axis=2)
    full_cut = {}
    c = 0
    for o, obj in enumerate(objects):
        block = slice(c, c + len(obj.constraints))
        c = block.stop
        if isinstance(obj, HalfPlane):
            full_cut[o] = (nonneg_all[block.start], neg_all[block.start])
        else:
            full_cut[o] = (pos_all[block].all(axis=0), nonpos_all[block].any(axis=0))
    # pairs no single object edge decides: try the region's own edges
    amb_o, amb_r = [], []
    for o, obj in enumerate(objects):
        if not isinstance(obj, (HalfPlane, Strip)):
            full, cut = full_cut[o]
            r = np.flatnonzero(~full & ~cut)
            amb_o.extend([o] * r.size)
            amb_r.extend(r.tolist())
    apart = _separated_by_region_edge(objects, rs, amb_o, amb_r)
    out: list[list[str]] = []
    for o, obj in enumerate(objects):
        full, cut = full_cut[o]
        out.append([FULL if full[r] else (NONE if cut[r] else PARTIAL) for r in range(t)])
    for o, r, sep in zip(amb_o, amb_r, apart):
        if sep:
            out[o][r] = NONE
    return out


def _generators(obj) -> list[tuple[int, int, int]]:
    """Vertices (``W > 0``) and ray directions (``W = 0``) spanning a closed
    convex object."""
    if isinstance(obj, Triangle):
        return [v.hom for v in obj.vertices]
    (A1, B1, C1), (A2, B2, C2) = obj.constraints
    apex = obj.apex.hom
    d1 = (B1, -A1) if A2 * B1 - B2 * A1 > 0 else (-B1, A1)
    d2 = (B2, -A2) if A1 * B2 - B1 * A2 > 0 else (-B2, A2)
    return [apex, (d1[0], d1[1], 0), (d2[0], d2[1], 0)]


def _separated_by_region_edge(objects, rs: RegionSet, objs: list[int], regs: list[int]) -> list[bool]:
    """Whether the object lies in the closed outer side of some region edge.

    Together with the object's own edges this is the separating-axis test:
    convex polygons have disjoint interiors iff an edge line of one of them
    weakly separates the two.
    """
    if not objs:
        return []
    verts, idx = rs.vertex_table
    P, Q, R = (verts[idx[regs, c]].astype(object) for c in range(3))
    # inward-positive edge lines of counter-clockwise triangles
    E = np.stack([K.cross_rows(P, Q), K.cross_rows(Q, R), K.cross_rows(R, P)], axis=1)
    gen = {o: np.array(_generators(objects[o]), dtype=object) for o in set(objs)}
    G = np.stack([gen[o] for o in objs])
    vals = (E[:, :, None, :] * G[:, None, :, :]).sum(axis=3)
    return ((vals <= 0).all(axis=2).any(axis=1)).tolist()


def random_plane_separation(objects: Sequence[GeomObject], k: int, eps: float, rng,
                            ledger=None, box: Optional[Box] = None, depth: int = 0,
                            extra_lines: Sequence[Line] = ()) -> Separation:
    """Separate the plane with ``k`` boundary lines sampled without replacement.

    Crossing sets are computed by testing every object against every region
    (``n * t`` classical steps, plus ``n`` description queries).
    ``extra_lines`` join the sampling pool and ``crossing_lines`` without
    being objects themselves.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    ids: dict[Line, int] = {}
    lines: list[Line] = []
    object_lines: list[tuple[int, ...]] = []
    for obj in objects:
        mine = []
        for line in boundary_lines(obj):
            if line not in ids:
                ids[line] = len(lines)
                lines.append(line)
            mine.append(ids[line])
        object_lines.append(tuple(mine))
    for line in extra_lines:
        if line not in ids:
            ids[line] = len(lines)
            lines.append(line)
    if not 1 <= k <= len(lines):
        raise ValueError(f"k={k} outside [1, {len(lines)}]")
    if box is None:
        box = compute_clip_box(lines)
    sample = rng.sample(range(len(lines)), k)
    arr = build_arrangement([lines[i] for i in sample], box, ledger, depth)
    rs = triangulate(arr, ledger, depth)
    t = len(rs)

    larr = K.line_array(lines)
    crossing_lines = _line_crossings(larr, rs)
    lines_only = bool(objects) and all(isinstance(o, Line) for o in objects)
    if lines_only:
        if len(lines) != len(objects):
            raise GeometryError("line inputs must be distinct")
        crossing_sets = crossing_lines
        fully = [np.zeros(0, dtype=np.int64) for _ in range(t)]
        witnesses = _boundary_witnesses(larr, sample)
    else:
        rel = _classify(objects, rs)
        part_r, part_c, full_r, full_c = [], [], [], []
        for o, row in enumerate(rel):
            for r, lab in enumerate(row):
                if lab == PARTIAL:
                    part_r.append(o)
                    part_c.append(r)
                elif lab == FULL:
                    full_r.append(o)
                    full_c.append(r)
        crossing_sets = _group_pairs(np.array(part_r, dtype=np.int64), np.array(part_c, dtype=np.int64), t)
        fully = _group_pairs(np.array(full_r, dtype=np.int64), np.array(full_c, dtype=np.int64), t)
        witnesses = []
    if ledger is not None:
        m = max(len(objects), len(lines))
        ledger.charge(queries=m, steps=m * t, depth=depth)
    return Separation(lines, object_lines, sample, rs, crossing_sets, crossing_lines, fully, witnesses)
