"""Classical emulation of Grover search and amplitude amplification.

Answers come from exact classical evaluation; costs are charged to a
:class:`CostLedger` using the quantum query formulas.  Two execution modes:

``charged``
    Deterministic.  Amplitude amplification follows one success path and
    charges ``ceil(C_aa / sqrt(p)) * boost_reps(eps)`` times its cost.
``sampling``
    Randomised.  The subroutine is actually repeated with fresh randomness,
    ``ceil(ln(2/eps) / p)`` times at most, so empirical success rates can be
    measured (the recorded cost is then classical, not quantum).
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

CHARGED = "charged"
SAMPLING = "sampling"


def ceil_scaled_sqrt(c, m) -> int:
    """Exact ``ceil(c * sqrt(m))`` for rational ``c >= 0`` and ``m >= 0``."""
    target = Fraction(c) ** 2 * Fraction(m)
    if target <= 0:
        return 0
    q = math.isqrt(target.numerator // target.denominator)
    while q * q < target:
        q += 1
    return q


@dataclass
class CostLedger:
    quantum_queries: int = 0
    classical_steps: int = 0
    aa_invocations: int = 0
    max_recursion_depth: int = 0
    levels: dict[int, list[int]] = field(default_factory=dict)

    def charge(self, queries: int = 0, steps: int = 0, depth: int = 0) -> None:
        if queries < 0 or steps < 0:
            raise ValueError("ledger charges must be non-negative")
        self.quantum_queries += queries
        self.classical_steps += steps
        lvl = self.levels.setdefault(depth, [0, 0])
        lvl[0] += queries
        lvl[1] += steps
        self.max_recursion_depth = max(self.max_recursion_depth, depth)

    def absorb(self, other: "CostLedger", times: int = 1) -> None:
        """Add ``times`` copies of ``other``'s counters."""
        self.quantum_queries += times * other.quantum_queries
        self.classical_steps += times * other.classical_steps
        self.aa_invocations += times * other.aa_invocations
        for d, (q, s) in other.levels.items():
            lvl = self.levels.setdefault(d, [0, 0])
            lvl[0] += times * q
            lvl[1] += times * s
        self.max_recursion_depth = max(self.max_recursion_depth, other.max_recursion_depth)

    def merge(self, other: "CostLedger") -> "CostLedger":
        out = CostLedger()
        out.absorb(self)
        out.absorb(other)
        return out

    @property
    def total(self) -> int:
        return self.quantum_queries + self.classical_steps

    def per_level(self) -> list[tuple[int, int, int]]:
        return [(d, q, s) for d, (q, s) in sorted(self.levels.items())]

    def to_row(self, n: int, k: Optional[int], alpha: Optional[float], mode: str,
               wall_seconds: float) -> dict:
        return {
            "n": n,
            "k": "" if k is None else k,
            "alpha": "" if alpha is None else f"{alpha:.6f}",
            "mode": mode,
            "quantum_queries": self.quantum_queries,
            "classical_steps": self.classical_steps,
            "depth": self.max_recursion_depth,
            "wall_seconds": f"{wall_seconds:.6f}",
        }


@dataclass(frozen=True)
class ExecMode:
    kind: str = CHARGED
    c_g: Fraction = Fraction(1)
    c_aa: Fraction = Fraction(2)

    def __post_init__(self):
        if self.kind not in (CHARGED, SAMPLING):
            raise ValueError(f"unknown execution mode {self.kind!r}")
        object.__setattr__(self, "c_g", Fraction(self.c_g))
        object.__setattr__(self, "c_aa", Fraction(self.c_aa))
        if self.c_g < 1 or self.c_aa < 1:
            raise ValueError("cost constants must be >= 1")

    @property
    def charged(self) -> bool:
        return self.kind == CHARGED

    @staticmethod
    def boost_reps(eps: float) -> int:
        """Repetitions of a 2/3-success procedure needed to fail with prob <= eps/2."""
        if not 0 < eps < 2:
            raise ValueError("eps must lie in (0, 2)")
        return max(1, math.ceil(math.log(2 / eps) / math.log(3) - 1e-12))

    def aa_multiplier(self, p_lower, eps: float) -> int:
        return max(1, ceil_scaled_sqrt(self.c_aa, 1 / Fraction(p_lower))) * self.boost_reps(eps)

    def sampling_budget(self, p_lower, eps: float) -> int:
        return max(1, math.ceil(math.log(2 / eps) / float(p_lower) - 1e-9))


def grover_search(m: int, marked: Callable[[int], bool], ledger: CostLedger,
                  mode: ExecMode = ExecMode(), *, predicate_steps: int = 0,
                  depth: int = 0) -> Optional[int]:
    """Find a marked index in ``range(m)``.

    Charges exactly ``ceil(C_g * sqrt(m))`` queries, plus ``predicate_steps``
    classical steps per charged query.  The emulation scans classically; the
    scan itself is not charged.
    """
    if m < 0:
        raise ValueError("domain size must be non-negative")
    q = ceil_scaled_sqrt(mode.c_g, m)
    ledger.charge(queries=q, steps=q * predicate_steps, depth=depth)
    for i in range(m):
        if marked(i):
            return i
    return None


def amplitude_amplify(sub: Callable[[object, CostLedger], Optional[object]],
                      p_lower, eps_target: float, mode: ExecMode, ledger: CostLedger,
                      rng=None, *,
                      charged_path: Optional[Callable[[CostLedger], Optional[object]]] = None,
                      verify: Optional[Callable[[object], bool]] = None):
    """Boost a one-sided-error subroutine ``sub(rng, ledger)``.

    ``p_lower`` lower-bounds the success probability of one invocation.  In
    charged mode ``charged_path(ledger)`` (default: one call of ``sub``) is run
    against a scratch ledger that is then absorbed with the amplification
    multiplier.  Returned witnesses are re-checked with ``verify``.
    """
    if not 0 < p_lower <= 1:
        raise ValueError("p_lower must lie in (0, 1]")
    ledger.aa_invocations += 1

    def ok(res) -> bool:
        return res is not None and (verify is None or verify(res))

    if mode.charged:
        scratch = CostLedger()
        res = charged_path(scratch) if charged_path is not None else sub(rng, scratch)
        ledger.absorb(scratch, times=mode.aa_multiplier(p_lower, eps_target))
        return res if ok(res) else None
    for _ in range(mode.sampling_budget(p_lower, eps_target)):
        res = sub(rng, ledger)
        if ok(res):
            return res
    return None


def solve_3sum(values: Sequence[int], mode: ExecMode = ExecMode(),
               ledger: Optional[CostLedger] = None) -> Optional[tuple[int, int, int]]:
    """Grover search over position pairs for ``a + b + c = 0``.

    Returns a value triple taken from three distinct positions, or None.
    """
    ledger = ledger if ledger is not None else CostLedger()
    n = len(values)
    if n < 3:
        ledger.charge(queries=ceil_scaled_sqrt(mode.c_g, n * n))
        return None
    index = sorted((v, i) for i, v in enumerate(values))
    keys = [v for v, _ in index]
    log_n = max(1, math.ceil(math.log2(n)))
    ledger.charge(steps=n * log_n)

    def third(i: int, j: int) -> Optional[int]:
        want = -(values[i] + values[j])
        lo = bisect.bisect_left(keys, want)
        for pos in range(lo, min(lo + 3, n)):
            if keys[pos] != want:
                break
            if index[pos][1] not in (i, j):
                return index[pos][1]
        return None

    def marked(x: int) -> bool:
        i, j = divmod(x, n)
        return i < j and third(i, j) is not None

    hit = grover_search(n * n, marked, ledger, mode, predicate_steps=log_n)
    if hit is None:
        return None
    i, j = divmod(hit, n)
    l = third(i, j)
    assert l is not None and values[i] + values[j] + values[l] == 0
    return values[i], values[j], values[l]
