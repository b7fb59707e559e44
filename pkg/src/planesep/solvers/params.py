"""Recursion parameters: the asymptotic formulas and the desk-scale policy.

The asymptotic choice of ``k`` exceeds ``n`` for every size a desk machine can
handle, which would make the recursion a single base case.  The ``balanced``
policy uses ``k = ceil(k_scale * n**(1/3))`` instead: the cube root balances the
separation term ``n * k**2`` against the amplified base case
``k * (n/k)**2``, and a generous ``k_scale`` keeps the deterministic
separation term dominant so ledger totals vary little between trials.
Nodes below the root fall back to the base case whenever a cost model says
it is cheaper.  The asymptotic values are still computed and reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from ..quantum import ExecMode, ceil_scaled_sqrt

BALANCED = "balanced"
PAPER = "paper"


@dataclass(frozen=True)
class SolverConfig:
    mode: ExecMode = ExecMode()
    base_cutoff: int = 64
    c2: float = 8.0
    # crossing set of the region holding a witness is about sigma * n / k (measured)
    sigma: float = 4.5
    k_scale: float = 16.0
    policy: str = BALANCED
    k: Optional[int] = None
    retries: int = 3

    def __post_init__(self):
        if self.base_cutoff < 4:
            raise ValueError("base_cutoff must be at least 4")
        if self.c2 <= 1:
            raise ValueError("c2 must exceed 1")
        if self.policy not in (BALANCED, PAPER):
            raise ValueError(f"unknown policy {self.policy!r}")
        if self.k is not None and self.k < 1:
            raise ValueError("k must be positive")
        if self.k_scale <= 0:
            raise ValueError("k_scale must be positive")
        if self.retries < 0:
            raise ValueError("retries must be non-negative")


@dataclass(frozen=True)
class Params:
    alpha: float
    k_paper: int
    k: int
    base_cutoff: int
    c2: float
    use_base: bool
    predicted_cost: Optional[int] = None


def alpha_of(n: int, c2: float) -> float:
    """``sqrt(2 ln n / (ln C2 + ln ln n))``, floored at 1."""
    if n < 2:
        raise ValueError("n must be at least 2")
    denom = math.log(c2) + math.log(math.log(n))
    if denom <= 0:
        return 1.0
    return max(1.0, math.sqrt(2 * math.log(n) / denom))


def paper_k(n: int, eps: float, c2: float) -> int:
    """``ceil(n**(1/alpha) * 3 * (5 ln n + ln(2/eps)))`` clamped to ``[4, n-1]``."""
    a = alpha_of(n, c2)
    raw = math.ceil(n ** (1 / a) * 3 * (5 * math.log(n) + math.log(2 / eps)))
    return max(4, min(raw, n - 1)) if n > 4 else 4


def base_cost(m: int) -> int:
    """Ledger cost of the classical base case on ``m`` lines."""
    if m < 2:
        return m
    return math.comb(m, 2) * math.ceil(math.log2(m)) + m


def region_count(k: int) -> int:
    """Regions produced by ``k`` lines in general position, box included."""
    return k * k + k + 2


def balanced_k(n: int, k_scale: float) -> int:
    return max(4, min(n - 1, math.ceil(k_scale * n ** (1 / 3))))


@lru_cache(maxsize=None)
def _model(n: int, eps: float, sigma: float, k_scale: float, c_aa: float, cutoff: int) -> tuple[int, bool]:
    """Modelled ledger cost of a node on ``n`` lines and whether separating
    beats the base case there."""
    if n < cutoff:
        return base_cost(n), False
    k = balanced_k(n, k_scale)
    m = math.ceil(sigma * n / k)
    if m >= n:
        return base_cost(n), False
    t = region_count(k)
    sub = _model(m, eps, sigma, k_scale, c_aa, cutoff)[0]
    boost = ExecMode.boost_reps(eps / 2)
    cost = k * k + t + n + n * t + ceil_scaled_sqrt(c_aa, t) * boost * sub
    return min(cost, base_cost(n)), cost < base_cost(n)


def choose_parameters(n: int, eps: float, c2: float = 8.0, *,
                      config: SolverConfig = SolverConfig(), root: bool = True) -> Params:
    """Parameters for a node of the recursion on ``n`` distinct lines."""
    if n < 2:
        raise ValueError("n must be at least 2")
    if not 0 < eps < 1:
        raise ValueError("eps must lie in (0, 1)")
    alpha = alpha_of(n, c2)
    kp = paper_k(n, eps, c2)
    cutoff = config.base_cutoff
    if n < cutoff:
        return Params(alpha, kp, min(kp, max(1, n - 1)), cutoff, c2, True, base_cost(n))
    if config.k is not None:
        return Params(alpha, kp, min(config.k, n - 1), cutoff, c2, False)
    if config.policy == PAPER:
        # base case when the node is smaller than the sample
        return Params(alpha, kp, kp, cutoff, c2, n <= kp)
    k = balanced_k(n, config.k_scale)
    cost, separate = _model(n, float(eps), float(config.sigma), float(config.k_scale),
                            float(config.mode.c_aa), cutoff)
    # the root always separates; deeper nodes follow the model
    return Params(alpha, kp, k, cutoff, c2, not (root or separate), cost)
