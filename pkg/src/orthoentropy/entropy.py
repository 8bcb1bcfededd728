"""Christoffel-normalized discrete distributions and their entropies.

The distribution at a point x assigns cell j the mass lambda_n(x) *
p_{j-1}(x)^2, which sums to 1 by the definition of the Christoffel
function and does not depend on how the weight is normalized.  For both
Chebyshev weights the entropy at a zero of p_n has an exact closed form
in terms of the entropy-correction function and an integer gcd.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .orthopoly import RecurrenceCoefficients, _require_kind, eval_orthonormal
from .specfun import entropy_correction

__all__ = [
    "ENTROPY_CSV_HEADER",
    "DiscreteDistribution",
    "EntropyReport",
    "chebyshev_distribution_entropy",
    "christoffel_distribution",
    "entropy_kernel_split",
    "format_float",
    "kl_divergence",
    "shannon_entropy",
    "zero_entropy_direct",
    "zero_entropy_first_kind",
    "zero_entropy_second_kind",
]

_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class DiscreteDistribution:
    """Probability vector: nonnegative entries summing to 1 within 1e-12."""

    probs: np.ndarray

    def __post_init__(self) -> None:
        probs = np.array(self.probs, dtype=float)
        if probs.ndim != 1 or probs.size == 0:
            raise ValueError("probs must be a nonempty 1-d array")
        if not np.all(np.isfinite(probs)) or np.any(probs < 0.0):
            raise ValueError("probabilities must be finite and nonnegative")
        if abs(float(probs.sum()) - 1.0) > 1e-12:
            raise ValueError("probabilities must sum to 1 within 1e-12")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    def __len__(self) -> int:
        return self.probs.size

    @property
    def shannon(self) -> float:
        return shannon_entropy(self)

    @property
    def divergence(self) -> float:
        return kl_divergence(self)


def christoffel_distribution(
    rec: RecurrenceCoefficients, x: float, n: int
) -> DiscreteDistribution:
    """Distribution with cells proportional to p_0(x)^2, ..., p_{n-1}(x)^2."""
    if not -1.0 < x < 1.0:
        raise ValueError(f"x must lie in (-1, 1), got {x}")
    vals = eval_orthonormal(rec, x, n).values
    sq = vals * vals
    return DiscreteDistribution(sq / sq.sum())


def shannon_entropy(dist: DiscreteDistribution) -> float:
    """-sum nu_i log(nu_i), with 0 * log(0) = 0; lies in [0, log n]."""
    p = dist.probs
    return float(-xlogy(p, p).sum())


def kl_divergence(dist: DiscreteDistribution) -> float:
    """Divergence from the uniform distribution: log(n) - entropy >= 0."""
    return math.log(len(dist)) - shannon_entropy(dist)


def entropy_kernel_split(rec: RecurrenceCoefficients, x: float, n: int) -> float:
    """Entropy via the split form -log(lambda_n) - lambda_n sum p^2 log(p^2).

    Algebraically identical to the direct route but computed independently,
    for cross-validation.
    """
    if not -1.0 < x < 1.0:
        raise ValueError(f"x must lie in (-1, 1), got {x}")
    vals = eval_orthonormal(rec, x, n).values
    sq = vals * vals
    kernel = float(sq.sum())
    return math.log(kernel) - float(xlogy(sq, sq).sum()) / kernel


def _require_zero_index(n: int, j: int) -> None:
    if n < 1:
        raise IndexError(f"n must be >= 1, got {n}")
    if not 1 <= j <= n:
        raise IndexError(f"zero index j={j} outside 1..{n}")


def zero_entropy_first_kind(n: int, j: int) -> float:
    """Exact entropy at the j-th zero for the first-kind Chebyshev weight.

    log(n) + log(2) - 1 + log(2)/n - correction(d / (2n)) with
    d = gcd(2j - 1, n).
    """
    _require_zero_index(n, j)
    d = math.gcd(2 * j - 1, n)
    return math.log(n) + _LOG2 - 1.0 + _LOG2 / n - entropy_correction(d / (2.0 * n))


def zero_entropy_second_kind(n: int, j: int) -> float:
    """Exact entropy at the j-th zero for the second-kind Chebyshev weight.

    log(n+1) + log(2) - 1 - correction(d / (n+1)) with d = gcd(j, n+1).
    """
    _require_zero_index(n, j)
    d = math.gcd(j, n + 1)
    return math.log(n + 1) + _LOG2 - 1.0 - entropy_correction(d / (n + 1.0))


def chebyshev_distribution_entropy(kind: str, n: int, theta: float) -> float:
    """Entropy of the size-n distribution at x = cos(theta), Chebyshev weight.

    Uses the explicit trigonometric polynomial values rather than the
    recurrence, which keeps closed-form verification free of recurrence
    round-off.  Relative cell weights suffice since the entropy of the
    normalized vector only needs the total.
    """
    _require_kind(kind)
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if not 0.0 < theta < math.pi:
        raise ValueError(f"theta must lie in (0, pi), got {theta}")
    m = np.arange(n)
    if kind == "first":
        rel = np.cos(m * theta) ** 2
        rel[0] = 0.5
    else:
        rel = np.sin((m + 1) * theta) ** 2
    total = float(rel.sum())
    return math.log(total) - float(xlogy(rel, rel).sum()) / total


def zero_entropy_direct(kind: str, n: int, j: int) -> float:
    """Entropy at the j-th zero by direct summation (oracle for the closed forms)."""
    _require_kind(kind)
    _require_zero_index(n, j)
    if kind == "first":
        theta = (2 * j - 1) * math.pi / (2 * n)
    else:
        theta = j * math.pi / (n + 1)
    return chebyshev_distribution_entropy(kind, n, theta)


ENTROPY_CSV_HEADER = "n,x,shannon,divergence,d_infinity,gap"


def format_float(value: float) -> str:
    """Fixed 17-significant-digit formatting; round-trips any double."""
    return f"{value:.17g}"


@dataclass(frozen=True)
class EntropyReport:
    """One output row: (n, x, entropy, divergence, limit, gap to the limit)."""

    n: int
    x: float
    shannon: float
    divergence: float
    d_infinity: float | None = None
    gap: float | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not -1e-12 <= self.shannon <= math.log(self.n) + 1e-12:
            raise ValueError("entropy outside [0, log n]")
        if self.divergence < -1e-12:
            raise ValueError("divergence must be nonnegative")

    def to_csv_row(self) -> str:
        cells = [
            str(self.n),
            format_float(self.x),
            format_float(self.shannon),
            format_float(self.divergence),
            "" if self.d_infinity is None else format_float(self.d_infinity),
            "" if self.gap is None else format_float(self.gap),
        ]
        return ",".join(cells)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "x": self.x,
            "shannon": self.shannon,
            "divergence": self.divergence,
            "d_infinity": self.d_infinity,
            "gap": self.gap,
        }
