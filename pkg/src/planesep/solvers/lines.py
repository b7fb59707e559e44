"""Point-On-3-Lines via recursive random plane separation."""

from __future__ import annotations

import dataclasses
import math
import random
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .. import _kernels as K
from ..geometry import COINCIDENT, GeometryError, Line, Point, intersect
from ..quantum import CostLedger, ExecMode, amplitude_amplify
from ..sampling import SeparationError, random_plane_separation, size_bound
from .params import SolverConfig, base_cost, choose_parameters

# rows per block in the pairwise scan
_BLOCK_PAIRS = 1 << 20


@dataclass(frozen=True)
class Concurrency:
    """Three input positions whose lines pass through ``point``."""

    indices: tuple[int, int, int]
    point: Point

    def verify(self, lines: Sequence[Line]) -> bool:
        i, j, l = self.indices
        if len({i, j, l}) != 3:
            return False
        return all(lines[x].contains(self.point) for x in (i, j, l))


def as_rng(rng) -> random.Random:
    if isinstance(rng, random.Random):
        return rng
    return random.Random(rng)


def find_triple(larr: np.ndarray) -> Optional[tuple[tuple[int, int, int], tuple[int, int, int]]]:
    """Smallest-first concurrent triple among distinct lines given as
    coefficient rows; returns ``((i, j, l), (X, Y, W))`` or None.

    Each triple point is seen from its smallest line, where two later lines
    produce the same normalized intersection.
    """
    n = larr.shape[0]
    if n < 3:
        return None
    rows_per_block = max(1, _BLOCK_PAIRS // n)
    for start in range(0, n - 2, rows_per_block):
        stop = min(n - 2, start + rows_per_block)
        ii, jj = [], []
        for i in range(start, stop):
            j = np.arange(i + 1, n)
            ii.append(np.full(j.size, i))
            jj.append(j)
        ii, jj = np.concatenate(ii), np.concatenate(jj)
        pts = K.cross_rows(larr[ii], larr[jj])
        finite = pts[:, 2] != 0
        ii, jj, pts = ii[finite], jj[finite], pts[finite]
        groups = K.same_point_groups(ii, pts, larr[ii, 1] == 0)
        if groups:
            g = min(groups, key=lambda grp: (int(ii[grp[0]]), sorted(int(jj[x]) for x in grp)))
            js = sorted(int(jj[x]) for x in g)
            i = int(ii[g[0]])
            X, Y, W = (int(v) for v in pts[g[0]])
            if W < 0:
                X, Y, W = -X, -Y, -W
            return (i, js[0], js[1]), (X, Y, W)
    return None


def base_case(lines: Sequence[Line], ledger: CostLedger, depth: int = 0) -> Optional[Concurrency]:
    """Classical check over all pairwise intersections (``C(m,2)*ceil(log2 m)``
    steps plus ``m`` queries for reading the lines)."""
    m = len(lines)
    ledger.charge(queries=m, steps=base_cost(m) - m, depth=depth)
    hit = find_triple(K.line_array(lines)) if m >= 3 else None
    if hit is None:
        return None
    ids, hom = hit
    return Concurrency(ids, Point.from_hom(*hom))


def _handle_duplicates(lines: Sequence[Line]):
    """Collapse coincident inputs.  Returns ``(witness, distinct, origin)``."""
    groups: dict[Line, list[int]] = {}
    for i, line in enumerate(lines):
        groups.setdefault(line, []).append(i)
    distinct = list(groups)
    for line, ids in groups.items():
        if len(ids) >= 3:
            return Concurrency(tuple(ids[:3]), line.anchor()), distinct, None
    for line, ids in groups.items():
        if len(ids) == 2:
            for other in distinct:
                p = intersect(line, other)
                if isinstance(p, Point):
                    third = groups[other][0]
                    return Concurrency(tuple(sorted((ids[0], ids[1], third))), p), distinct, None
    return None, distinct, [groups[l][0] for l in distinct]


class _Runner:
    def __init__(self, lines: list[Line], eps: float, config: SolverConfig, rng: random.Random):
        self.lines = lines
        self.eps = eps
        self.config = config
        self.mode = config.mode
        self.rng = rng

    def verify(self, w: Concurrency) -> bool:
        return w.verify(self.lines)

    def separate(self, ids: list[int], k: int, ledger: CostLedger, depth: int):
        sub = [self.lines[i] for i in ids]
        bound = size_bound(len(ids), k, self.eps / 2)
        for _ in range(self.config.retries + 1):
            sep = random_plane_separation(sub, k, self.eps / 2, self.rng, ledger, depth=depth)
            if not bound.violated_by(sep.max_crossing()):
                return sep
        raise SeparationError(f"crossing sets exceeded {bound.threshold} after {self.config.retries} retries")

    def solve(self, ids: list[int], ledger: CostLedger, depth: int, hint: Optional[Point] = None,
              root: bool = False) -> Optional[Concurrency]:
        n = len(ids)
        if n < 3:
            ledger.charge(queries=n, depth=depth)
            return None
        params = choose_parameters(n, self.eps, self.config.c2, config=self.config, root=root)
        if params.use_base or params.k >= n:
            w = base_case([self.lines[i] for i in ids], ledger, depth)
            if w is None:
                return None
            return Concurrency(tuple(sorted(ids[x] for x in w.indices)), w.point)

        sep = self.separate(ids, params.k, ledger, depth)
        for point, triple in sep.boundary_witnesses:
            w = Concurrency(tuple(sorted(ids[x] for x in triple)), point)
            if self.verify(w):
                return w
        t = sep.t

        def descend(r: int, led: CostLedger, h: Optional[Point]) -> Optional[Concurrency]:
            sub = [ids[int(x)] for x in sep.crossing_sets[r]]
            if len(sub) >= n:
                w = base_case([self.lines[i] for i in sub], led, depth + 1)
                return None if w is None else Concurrency(tuple(sorted(sub[x] for x in w.indices)), w.point)
            return self.solve(sub, led, depth + 1, h)

        def charged_path(led: CostLedger) -> Optional[Concurrency]:
            if hint is not None:
                r = sep.regions.locate(hint)[0]
            else:
                r = max(range(t), key=lambda i: (len(sep.crossing_sets[i]), -i))
            return descend(r, led, hint)

        def sampled(rng, led: CostLedger) -> Optional[Concurrency]:
            return descend(rng.randrange(t), led, None)

        return amplitude_amplify(sampled, 1 / t, self.eps / 2, self.mode, ledger, self.rng,
                                 charged_path=charged_path, verify=self.verify)


def solve_point_on_3_lines(lines: Sequence[Line], eps: float = 0.1, mode: Optional[ExecMode] = None,
                           ledger: Optional[CostLedger] = None, rng=None, *,
                           config: Optional[SolverConfig] = None) -> Optional[Concurrency]:
    """Find three input lines through one point, or None.

    Coincident inputs use index semantics: three copies of a line are a
    positive answer, as are two copies plus any line crossing them.
    """
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    config = config or SolverConfig()
    if mode is not None:
        config = dataclasses.replace(config, mode=mode)
    ledger = ledger if ledger is not None else CostLedger()
    rng = as_rng(rng)
    lines = list(lines)
    n = len(lines)
    ledger.charge(steps=n * max(1, math.ceil(math.log2(max(n, 2)))))
    dup, distinct, origin = _handle_duplicates(lines)
    if dup is not None:
        return dup
    runner = _Runner(distinct, eps, config, rng)
    hint = None
    if config.mode.charged and len(distinct) >= config.base_cutoff:
        # uncharged scaffolding: the witness the deterministic descent follows
        hit = find_triple(K.line_array(distinct))
        hint = Point.from_hom(*hit[1]) if hit else None
    w = runner.solve(list(range(len(distinct))), ledger, 0, hint, root=True)
    if w is None:
        return None
    out = Concurrency(tuple(sorted(origin[i] for i in w.indices)), w.point)
    if not out.verify(lines):
        raise GeometryError("internal error: unverifiable witness")
    return out
