"""General-Covering: recursive search for an exposed boundary-line crossing.

Two flavours share the recursion:

* *uncovered* -- objects are open (strips, angles, triangles); a witness is
  a crossing of two boundary lines lying in no object's interior.
* *depth* -- objects are closed half-planes; a witness is any point lying in
  at least ``t`` of them.

Both may be confined to a closed convex polygon and filtered by a predicate.
"""

from __future__ import annotations

import dataclasses
import math
import random
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .. import _kernels as K
from ..arrangement import Box, compute_clip_box
from ..geometry import (
    Angle,
    GeometryError,
    HalfPlane,
    Line,
    Point,
    Strip,
    Triangle,
    clip_polygon,
    eval_hom,
    polygon_area2,
)
from ..quantum import CostLedger, ExecMode, amplitude_amplify
from ..sampling import SeparationError, boundary_lines, random_plane_separation, size_bound
from .lines import as_rng
from .params import SolverConfig, choose_parameters

Predicate = Callable[[Point], bool]


def _always(_: Point) -> bool:
    return True


@dataclass
class CoveringInstance:
    """``region`` is a closed convex polygon (any orientation) that witnesses
    must lie in; ``depth`` switches to the half-plane depth flavour."""

    objects: Sequence[object]
    predicate: Predicate = _always
    extra_lines: Sequence[Line] = ()
    region: Optional[Sequence[Point]] = None
    depth: Optional[int] = None
    predicate_steps: int = 1


def polygon_constraints(poly: Sequence[Point]) -> list[tuple[int, int, int]]:
    """Edge constraints (``>= 0`` inside) of a convex polygon with >= 3 vertices."""
    if len(poly) < 3 or polygon_area2(poly) == 0:
        raise GeometryError("polygon must be non-degenerate")
    ccw = list(poly) if polygon_area2(poly) > 0 else list(reversed(poly))
    out = []
    for i in range(len(ccw)):
        p, q = ccw[i], ccw[(i + 1) % len(ccw)]
        A, B, C = Line.through(p, q).coeffs
        r = ccw[(i + 2) % len(ccw)]
        out.append((A, B, C) if eval_hom((A, B, C), r) > 0 else (-A, -B, -C))
    return out


def _clip(poly: list[Point], constraints) -> list[Point]:
    for c in constraints:
        poly = clip_polygon(poly, c)
        if len(poly) < 3:
            return []
    return poly if polygon_area2(poly) != 0 else []


def _box_around(lines: Sequence[Line], poly: Sequence[Point]) -> Box:
    b = compute_clip_box(lines)
    xs = [p.x for p in poly]
    ys = [p.y for p in poly]
    return Box(min(b.xmin, min(xs) - 1), min(b.ymin, min(ys) - 1),
               max(b.xmax, max(xs) + 1), max(b.ymax, max(ys) + 1))


@dataclass
class _Node:
    objs: list[int]
    lines: list[int]
    poly: list[Point]
    need: int = 0


class _Cover:
    def __init__(self, inst: CoveringInstance, eps: float, config: SolverConfig, rng: random.Random):
        self.depth_mode = inst.depth is not None
        objs = []
        for o in inst.objects:
            if isinstance(o, Angle) and o.double:
                objs.extend(o.pieces())
            elif isinstance(o, (Strip, Angle, Triangle)) and not self.depth_mode:
                objs.append(o)
            elif isinstance(o, HalfPlane) and self.depth_mode:
                objs.append(o)
            else:
                raise GeometryError(f"unsupported covering object {type(o).__name__}")
        self.objs = objs
        self.inst = inst
        self.eps = eps
        self.config = config
        self.mode = config.mode
        self.rng = rng
        self.line_id: dict[Line, int] = {}
        self.lines: list[Line] = []
        self.obj_lines: list[tuple[int, ...]] = []
        for o in objs:
            self.obj_lines.append(tuple(self._add(l) for l in boundary_lines(o)))
        for l in inst.extra_lines:
            self._add(l)
        self.cons = [list(o.constraints) for o in objs]

    def _add(self, line: Line) -> int:
        i = self.line_id.get(line)
        if i is None:
            i = self.line_id[line] = len(self.lines)
            self.lines.append(line)
        return i

    # -- witness checks -------------------------------------------------
    def depth_at(self, p: Point, objs: Sequence[int]) -> int:
        return sum(1 for o in objs if eval_hom(self.cons[o][0], p) >= 0)

    def covered(self, p: Point, objs: Sequence[int]) -> bool:
        return any(all(eval_hom(c, p) > 0 for c in self.cons[o]) for o in objs)

    def in_region(self, p: Point) -> bool:
        if self.inst.region is None:
            return True
        return all(eval_hom(c, p) >= 0 for c in polygon_constraints(self.inst.region))

    def verify(self, p: Point) -> bool:
        if not isinstance(p, Point) or not self.in_region(p):
            return False
        every = range(len(self.objs))
        if self.depth_mode:
            return self.depth_at(p, every) >= self.inst.depth
        on = [l for l in self.lines if l.contains(p)]
        return len(on) >= 2 and not self.covered(p, every) and self.inst.predicate(p)

    # -- base case ------------------------------------------------------
    def _candidates(self, node: _Node) -> np.ndarray:
        larr = K.line_array([self.lines[i] for i in node.lines])
        m = larr.shape[0]
        parts = []
        if m >= 2:
            a, b = np.triu_indices(m, 1)
            parts.append(K.cross_rows(larr[a], larr[b]))
        if self.depth_mode:
            parts.append(K.point_array(node.poly))
            if m:
                pc = K._as_array(polygon_constraints(node.poly))
                a, b = np.meshgrid(np.arange(m), np.arange(pc.shape[0]), indexing="ij")
                la = larr[a.ravel()]
                pcb = pc[b.ravel()]
                if la.dtype == object or pcb.dtype == object:
                    la, pcb = la.astype(object), pcb.astype(object)
                parts.append(K.cross_rows(la, pcb))
        if not parts:
            return np.zeros((0, 3), dtype=np.int64)
        if any(p.dtype == object for p in parts):
            parts = [p.astype(object) for p in parts]
        pts = np.concatenate(parts)
        pts = K.normalize(pts[pts[:, 2] != 0])
        if pts.shape[0] == 0:
            return pts
        inside = (K.signs(K._as_array(polygon_constraints(node.poly)), pts) >= 0).all(axis=0)
        return pts[inside]

    def base_case(self, node: _Node, ledger: CostLedger, depth: int) -> Optional[Point]:
        pts = self._candidates(node)
        ncons = sum(len(self.cons[o]) for o in node.objs)
        m = len(node.lines)
        ledger.charge(queries=m + len(node.objs),
                      steps=m * (m - 1) // 2 + pts.shape[0] * (ncons + 1), depth=depth)
        if pts.shape[0] == 0:
            return None
        if node.objs:
            rows = [c for o in node.objs for c in self.cons[o]]
            S = K.signs(K._as_array(rows), pts)
            if self.depth_mode:
                ok = (S >= 0).sum(axis=0) >= node.need
            else:
                starts = np.cumsum([0] + [len(self.cons[o]) for o in node.objs[:-1]])
                inside = np.logical_and.reduceat(S > 0, starts, axis=0)
                ok = ~inside.any(axis=0)
        else:
            ok = np.full(pts.shape[0], not self.depth_mode or node.need <= 0)
        order = np.flatnonzero(ok)
        if not order.size:
            return None
        keys = sorted({tuple(int(v) for v in pts[i]) for i in order}, key=lambda h: Point.from_hom(*h))
        checked = 0
        for h in keys:
            p = Point.from_hom(*h)
            checked += 1
            if self.depth_mode or self.inst.predicate(p):
                ledger.charge(steps=checked * self.inst.predicate_steps, depth=depth)
                return p
        ledger.charge(steps=checked * self.inst.predicate_steps, depth=depth)
        return None

    # -- recursion ------------------------------------------------------
    def separate(self, node: _Node, k: int, ledger: CostLedger, depth: int):
        objs = [self.objs[o] for o in node.objs]
        own = {l for o in node.objs for l in self.obj_lines[o]}
        extra = [self.lines[l] for l in node.lines if l not in own]
        pool = [self.lines[l] for l in node.lines]
        box = _box_around(pool, node.poly)
        bound = size_bound(len(node.lines), k, self.eps / 2)
        for _ in range(self.config.retries + 1):
            sep = random_plane_separation(objs, k, self.eps / 2, self.rng, ledger, box=box,
                                          depth=depth, extra_lines=extra)
            if not bound.violated_by(sep.max_crossing()):
                return sep
        raise SeparationError(f"crossing sets exceeded {bound.threshold} after {self.config.retries} retries")

    def child(self, node: _Node, sep, r: int) -> Optional[_Node]:
        reg = sep.regions.regions[r]
        full = sep.fully_covering[r]
        if not self.depth_mode and full.size:
            return None
        rc = polygon_constraints(list(reg.vertices))
        poly = _clip(list(node.poly), rc)
        if not poly:
            return None
        objs = [node.objs[int(x)] for x in sep.crossing_sets[r]]
        if self.depth_mode:
            own = {l for o in objs for l in self.obj_lines[o]}
            lines = sorted(own)
            need = node.need - int(full.size)
        else:
            lines = sorted(self.line_id[sep.lines[int(x)]] for x in sep.crossing_lines[r])
            need = 0
        return _Node(objs, lines, poly, need)

    def solve(self, node: _Node, ledger: CostLedger, depth: int, hint: Optional[Point] = None,
              root: bool = False) -> Optional[Point]:
        if self.depth_mode:
            if node.need <= 0:
                ledger.charge(steps=1, depth=depth)
                return node.poly[0]
            if len(node.objs) < node.need:
                ledger.charge(steps=1, depth=depth)
                return None
        elif len(node.lines) < 2:
            ledger.charge(steps=1, depth=depth)
            return None
        n = len(node.lines)
        params = choose_parameters(max(n, 2), self.eps, self.config.c2, config=self.config, root=root)
        if params.use_base or params.k >= n:
            return self.base_case(node, ledger, depth)
        sep = self.separate(node, params.k, ledger, depth)
        t = sep.t

        def descend(r: int, led: CostLedger, h: Optional[Point]) -> Optional[Point]:
            sub = self.child(node, sep, r)
            if sub is None:
                led.charge(steps=1, depth=depth + 1)
                return None
            if len(sub.lines) >= n:
                return self.base_case(sub, led, depth + 1)
            return self.solve(sub, led, depth + 1, h)

        def charged_path(led: CostLedger) -> Optional[Point]:
            if hint is not None:
                for r in sep.regions.locate(hint):
                    sub = self.child(node, sep, r)
                    if sub is not None and all(eval_hom(c, hint) >= 0 for c in polygon_constraints(sub.poly)):
                        return descend(r, led, hint)
            # the live child with the largest crossing set, smallest id on ties
            for r in sorted(range(t), key=lambda r: (-len(sep.crossing_lines[r]), r)):
                if self.child(node, sep, r) is not None:
                    return descend(r, led, None)
            return None

        def sampled(rng, led: CostLedger) -> Optional[Point]:
            return descend(rng.randrange(t), led, None)

        return amplitude_amplify(sampled, 1 / t, self.eps / 2, self.mode, ledger, self.rng,
                                 charged_path=charged_path, verify=self.verify)

    def root(self) -> Optional[_Node]:
        every = list(range(len(self.objs)))
        lines = list(range(len(self.lines)))
        if self.inst.region is not None:
            poly = list(self.inst.region)
            polygon_constraints(poly)
        elif self.lines:
            poly = compute_clip_box(self.lines).corners()
        else:
            return None
        return _Node(every, lines, poly, self.inst.depth or 0)


def solve_general_covering(inst: CoveringInstance, eps: float = 0.1, mode: Optional[ExecMode] = None,
                           ledger: Optional[CostLedger] = None, rng=None, *,
                           config: Optional[SolverConfig] = None) -> Optional[Point]:
    """Witness point of a covering instance, or None."""
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    config = config or SolverConfig()
    if mode is not None:
        config = dataclasses.replace(config, mode=mode)
    ledger = ledger if ledger is not None else CostLedger()
    eng = _Cover(inst, eps, config, as_rng(rng))
    node = eng.root()
    if node is None:
        if eng.depth_mode and (inst.depth or 0) <= 0:
            return Point(0, 0)
        return None
    hint = None
    if config.mode.charged and len(node.lines) >= config.base_cutoff:
        # uncharged scaffolding: the witness the deterministic descent follows
        hint = eng.base_case(node, CostLedger(), 0)
    w = eng.solve(node, ledger, 0, hint, root=True)
    if w is not None and not eng.verify(w):
        raise GeometryError("internal error: unverifiable covering witness")
    return w
