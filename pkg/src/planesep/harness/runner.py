"""Dispatch instances to solvers; oracle-equivalence sweeps and benchmarks."""

from __future__ import annotations

import csv
import io
import statistics
import time
from dataclasses import asdict, dataclass, fields
from typing import Optional, Sequence

from ..geometry import Line, Point
from ..quantum import CHARGED, CostLedger, ExecMode, solve_3sum
from ..solvers import (
    CoveringInstance,
    SolverConfig,
    choose_parameters,
    solve_3_points_on_line,
    solve_general_covering,
    solve_point_covering,
    solve_point_on_3_lines,
    solve_segment_separator,
    solve_strips_cover_box,
    solve_triangles_cover_triangle,
    solve_visibility_between_segments,
)
from .generators import gen_instance, oracle_answer
from .instances import (
    GENERAL_COVERING,
    POINT_COVERING,
    POINT_ON_3_LINES,
    SEPARATOR,
    STRIPS_COVER_BOX,
    THREE_POINTS_ON_LINE,
    THREE_SUM,
    TRIANGLES_COVER_TRIANGLE,
    VISIBILITY,
    Instance,
    fmt,
)


@dataclass(frozen=True)
class Answer:
    positive: bool
    witness: object = None


def solve_instance(inst: Instance, eps: float = 0.1, mode: Optional[ExecMode] = None,
                   ledger: Optional[CostLedger] = None, rng=None,
                   config: Optional[SolverConfig] = None) -> Answer:
    mode = mode or ExecMode()
    ledger = ledger if ledger is not None else CostLedger()
    p, objs = inst.problem, inst.objects
    kw = dict(ledger=ledger, rng=rng, config=config)
    if p == THREE_SUM:
        w = solve_3sum(objs, mode, ledger)
    elif p == POINT_ON_3_LINES:
        w = solve_point_on_3_lines(objs, eps, mode, **kw)
    elif p == THREE_POINTS_ON_LINE:
        w = solve_3_points_on_line(objs, eps, mode, **kw)
    elif p == STRIPS_COVER_BOX:
        w = solve_strips_cover_box(objs, inst.targets[0], eps, mode, **kw)
    elif p == TRIANGLES_COVER_TRIANGLE:
        w = solve_triangles_cover_triangle(objs, inst.targets[0], eps, mode, **kw)
    elif p == POINT_COVERING:
        w = solve_point_covering(objs, inst.params["t"], eps, mode, **kw)
    elif p == GENERAL_COVERING:
        w = solve_general_covering(CoveringInstance(objs), eps, mode, **kw)
    elif p == VISIBILITY:
        w = solve_visibility_between_segments(objs, inst.targets[0], inst.targets[1], eps, mode, **kw)
    elif p == SEPARATOR:
        w = solve_segment_separator(objs, eps, mode, **kw)
    else:
        raise ValueError(f"unknown problem {p!r}")
    return Answer(w is not None, w)


def describe(witness) -> str:
    """Human-readable witness."""
    if witness is None:
        return "none"
    if isinstance(witness, Point):
        return f"point {fmt(witness.x)} {fmt(witness.y)}"
    if isinstance(witness, Line):
        return f"line x {fmt(witness.x0)}" if witness.vertical else f"line y {fmt(witness.a)} {fmt(witness.b)}"
    if hasattr(witness, "indices") and hasattr(witness, "point"):
        i, j, l = witness.indices
        return f"lines {i} {j} {l} at point {fmt(witness.point.x)} {fmt(witness.point.y)}"
    if isinstance(witness, tuple):
        return " ".join(str(v) for v in witness)
    return str(witness)


# --- oracle equivalence ------------------------------------------------------

@dataclass
class VerifyReport:
    problem: str
    n: int
    trials: int
    mismatches: int
    errors: int
    false_negatives: int
    false_positives: int

    @property
    def failure_rate(self) -> float:
        return (self.mismatches + self.errors) / self.trials if self.trials else 0.0


def verify(problem: str, n: int, trials: int, eps: float = 0.1, seed: int = 0,
           mode: Optional[ExecMode] = None, config: Optional[SolverConfig] = None) -> VerifyReport:
    """Solve alternating planted/unplanted instances and compare with the oracle."""
    rep = VerifyReport(problem, n, trials, 0, 0, 0, 0)
    for trial in range(trials):
        planted = trial % 2 == 0
        inst = gen_instance(problem, n, planted, seed * 100003 + trial)
        # generator-verified instances already carry the oracle's answer
        truth = inst.planted if inst.verified else oracle_answer(inst).positive
        try:
            got = solve_instance(inst, eps, mode, CostLedger(), rng=(seed, trial), config=config).positive
        except Exception:  # noqa: BLE001 - reported as an error, never aborts the sweep
            rep.errors += 1
            continue
        if got != truth:
            rep.mismatches += 1
            if truth:
                rep.false_negatives += 1
            else:
                rep.false_positives += 1
    return rep


# --- benchmarks --------------------------------------------------------------

@dataclass
class BenchRecord:
    problem: str
    n: int
    k: str
    alpha: str
    eps: float
    mode: str
    seed: int
    answer: str
    quantum_queries: int
    classical_steps: int
    depth: int
    wall_seconds: float

    @property
    def total(self) -> int:
        return self.quantum_queries + self.classical_steps


def trial_seed(seed: int, n: int, trial: int) -> int:
    return (seed * 1_000_003 + n) * 1009 + trial


def run_bench(problem: str, sizes: Sequence[int], trials: int, eps: float = 0.1,
              mode: Optional[ExecMode] = None, seed: int = 0, planted: bool = True,
              config: Optional[SolverConfig] = None) -> list[BenchRecord]:
    """One record per (size, trial); failures are recorded as ``answer=error``."""
    mode = mode or ExecMode()
    config = config or SolverConfig()
    out = []
    for n in sorted(sizes):
        for trial in range(trials):
            s = trial_seed(seed, n, trial)
            led = CostLedger()
            k = alpha = ""
            if problem == POINT_ON_3_LINES and n >= 2:
                prm = choose_parameters(n, eps, config.c2, config=config)
                k, alpha = str(prm.k), f"{prm.alpha:.6f}"
            t0 = time.perf_counter()
            try:
                inst = gen_instance(problem, n, planted, s)
                ans = solve_instance(inst, eps, mode, led, rng=s, config=config)
                answer = "found" if ans.positive else "none"
            except Exception as exc:  # noqa: BLE001
                answer = f"error:{type(exc).__name__}"
            wall = time.perf_counter() - t0
            out.append(BenchRecord(problem, n, k, alpha, eps, mode.kind, s, answer, led.quantum_queries,
                                   led.classical_steps, led.max_recursion_depth, round(wall, 6)))
    return out


def median_costs(records: Sequence[BenchRecord]) -> dict[int, float]:
    by: dict[int, list[int]] = {}
    for r in records:
        by.setdefault(r.n, []).append(r.total)
    return {n: statistics.median(v) for n, v in sorted(by.items())}


def cost_ratios(records: Sequence[BenchRecord]) -> dict[int, Optional[float]]:
    """``median(2n) / median(n)`` keyed by the larger size; None when ``n/2`` is absent."""
    med = median_costs(records)
    return {n: (med[n] / med[n // 2] if n % 2 == 0 and n // 2 in med and med[n // 2] else None) for n in med}


COLUMNS = [f.name for f in fields(BenchRecord)] + ["total", "ratio"]


def to_csv(records: Sequence[BenchRecord], wall: bool = True) -> str:
    ratios = cost_ratios(records)
    buf = io.StringIO()
    cols = COLUMNS if wall else [c for c in COLUMNS if c != "wall_seconds"]
    w = csv.DictWriter(buf, fieldnames=cols, lineterminator="\n")
    w.writeheader()
    for r in records:
        row = asdict(r)
        row["total"] = r.total
        ratio = ratios.get(r.n)
        row["ratio"] = "" if ratio is None else f"{ratio:.6f}"
        if not wall:
            row.pop("wall_seconds")
        w.writerow(row)
    return buf.getvalue()
