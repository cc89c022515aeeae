"""Closed-form stability predictions for representative states.

The per-index error probability of a representative state built from a
subset of size ``subset_size`` with uniform disagreement rate ``p``, in a
network of N units storing K states, is

    p_error = 1/2 * (1 - erf(subset_size * (1 - 4p + 4p^2) * sqrt(N / (2K))))

which depends on N and K only through the load ratio K/N. Setting
subset_size = 1 and p = 0 recovers the classical single-state expression,
whose 0.0036 error level corresponds to the familiar 0.138 capacity ratio.

The Gaussian approximation behind the formula assumes large N and K and
randomly distributed non-subset states; the functions here evaluate the
formula as written and do not enforce those assumptions, so small-N values
are approximations only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .prototypes import agreement_factor

__all__ = [
    "CapacityQuery",
    "StabilityQuery",
    "TheoryPoint",
    "capacity_ratio",
    "erf",
    "p_error",
    "p_error_at_ratio",
    "p_error_single",
    "theory_curve",
]

_TWO_OVER_SQRT_PI = 2.0 / math.sqrt(math.pi)
_ERF_SATURATION = 6.0  # |erf(x)| is within 2.2e-17 of 1 beyond here

_CAPACITY_BRACKET = (1e-6, 1e4)
_CAPACITY_REL_TOL = 1e-6


def erf(x: float) -> float:
    """Error function via the scaled all-positive series.

    Uses erf(x) = (2x e^{-x^2} / sqrt(pi)) * sum_n (2x^2)^n / (2n+1)!!,
    which has no cancellation, so the absolute error stays near machine
    precision over [-6, 6]; beyond that |erf| rounds to 1.
    """
    if not math.isfinite(x):
        raise ValueError(f"erf input must be finite, got {x}")
    ax = abs(x)
    if ax >= _ERF_SATURATION:
        return math.copysign(1.0, x)
    t = 2.0 * ax * ax
    term = 1.0
    total = 1.0
    n = 0
    while term > 1e-18 * total:
        n += 1
        term *= t / (2 * n + 1)
        total += term
    value = min(_TWO_OVER_SQRT_PI * ax * math.exp(-ax * ax) * total, 1.0)
    return math.copysign(value, x)


@dataclass(frozen=True)
class StabilityQuery:
    """Arguments of the prototype error probability."""

    subset_size: int
    p: float
    N: int
    K: int

    def __post_init__(self):
        if self.subset_size < 1:
            raise ValueError(f"subset_size must be >= 1, got {self.subset_size}")
        if not 0.0 <= self.p <= 0.5:
            raise ValueError(f"p must lie in [0, 0.5], got {self.p}")
        if self.N < 1 or self.K < 1:
            raise ValueError(f"N and K must be >= 1, got N={self.N}, K={self.K}")
        if self.subset_size > self.K:
            raise ValueError(f"subset_size {self.subset_size} exceeds K={self.K}")


@dataclass(frozen=True)
class CapacityQuery:
    """Target error level to invert for the maximum load ratio K/N."""

    target_p_error: float
    subset_size: int = 1
    p: float = 0.0

    def __post_init__(self):
        if not 0.0 < self.target_p_error < 0.5:
            raise ValueError(f"target_p_error must lie in (0, 0.5), got {self.target_p_error}")
        if self.subset_size < 1:
            raise ValueError(f"subset_size must be >= 1, got {self.subset_size}")
        if not 0.0 <= self.p <= 0.5:
            raise ValueError(f"p must lie in [0, 0.5], got {self.p}")


def p_error_at_ratio(subset_size: int, p: float, ratio: float) -> float:
    """Per-index error probability at load ratio K/N (the formula is scale-free)."""
    if subset_size < 1:
        raise ValueError(f"subset_size must be >= 1, got {subset_size}")
    if ratio <= 0.0:
        raise ValueError(f"ratio K/N must be positive, got {ratio}")
    argument = subset_size * agreement_factor(p) * math.sqrt(1.0 / (2.0 * ratio))
    return 0.5 * (1.0 - erf(argument))


def p_error(q: StabilityQuery) -> float:
    """Probability any single index of the representative state is unstable."""
    return p_error_at_ratio(q.subset_size, q.p, q.K / q.N)


def p_error_single(N: int, K: int) -> float:
    """Classical single-state error probability: p_error with subset_size=1, p=0."""
    if N < 1 or K < 1:
        raise ValueError(f"N and K must be >= 1, got N={N}, K={K}")
    return p_error_at_ratio(1, 0.0, K / N)


def capacity_ratio(q: CapacityQuery) -> float:
    """Largest load ratio K/N whose error probability stays at or below the target.

    Bisection on the ratio (p_error is increasing in it) to relative
    tolerance 1e-6. Raises when the target cannot be met inside the bracket,
    e.g. p = 0.5 pins p_error at exactly 0.5.
    """
    lo, hi = _CAPACITY_BRACKET
    if p_error_at_ratio(q.subset_size, q.p, lo) > q.target_p_error:
        raise ValueError(
            f"target p_error {q.target_p_error} is unreachable: even ratio {lo} errs at "
            f"{p_error_at_ratio(q.subset_size, q.p, lo)}"
        )
    if p_error_at_ratio(q.subset_size, q.p, hi) < q.target_p_error:
        raise ValueError(f"target p_error {q.target_p_error} is not reached by ratio {hi}")
    while (hi - lo) > _CAPACITY_REL_TOL * lo:
        mid = 0.5 * (lo + hi)
        if p_error_at_ratio(q.subset_size, q.p, mid) <= q.target_p_error:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class TheoryPoint:
    """One evaluated grid point of the error-probability surface."""

    ratio: float
    subset_size: int
    p: float
    p_error: float


def theory_curve(subset_sizes, ps, ratio_grid) -> list[TheoryPoint]:
    """Dense evaluation over the cartesian grid, for plotting against the 0.0036 line."""
    subset_sizes = list(subset_sizes)
    ps = list(ps)
    ratios = list(ratio_grid)
    if not subset_sizes or not ps or not ratios:
        raise ValueError("theory_curve grids must be non-empty")
    rows = []
    for size in subset_sizes:
        for p in ps:
            for ratio in ratios:
                rows.append(TheoryPoint(ratio=ratio, subset_size=size, p=p, p_error=p_error_at_ratio(size, p, ratio)))
    return rows
