"""Finite real-valued probability distributions.

All operations are exact weighted sums over the support; nothing here is
sampled or approximated. Distributions are immutable values and safe to
share across concurrent tasks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .rng import RandomSource

__all__ = [
    "FiniteDist",
    "Moments",
    "make_dist",
    "moments",
    "quantile",
    "truncated_mean",
    "shift_split",
    "pair_square_diff",
    "conditional_above",
    "sample",
    "sample_n",
    "hard_instance_subgaussian",
    "hard_instance_statebased",
]

# Probability bookkeeping tolerances: inputs may deviate from a unit total by
# _SUM_TOL before rejection; internal tail comparisons allow _TAIL_SLACK of
# accumulated round-off.
_SUM_TOL = 1e-9
_TAIL_SLACK = 1e-12

# pair_square_diff enumerates the full product measure.
_MAX_PAIR_ATOMS = 20_000


@dataclass(frozen=True, eq=False)
class Moments:
    mean: float
    variance: float
    second_moment: float


@dataclass(frozen=True, eq=False)
class FiniteDist:
    """A distribution on a strictly increasing, finite real support.

    ``values`` and ``probs`` are aligned; probabilities are non-negative and
    sum to one (within 1e-12 after construction through :func:`make_dist`).
    """

    values: np.ndarray
    probs: np.ndarray

    def __post_init__(self) -> None:
        v = np.asarray(self.values, dtype=float)
        p = np.asarray(self.probs, dtype=float)
        object.__setattr__(self, "values", v)
        object.__setattr__(self, "probs", p)
        if v.ndim != 1 or p.shape != v.shape or v.size == 0:
            raise ValueError("support and probabilities must be aligned, non-empty 1-d arrays")
        if not np.all(np.isfinite(v)):
            raise ValueError("support values must be finite")
        if np.any(np.diff(v) <= 0):
            raise ValueError("support values must be strictly increasing")
        if np.any(p < 0):
            raise ValueError("probabilities must be non-negative")
        if abs(float(p.sum()) - 1.0) > 1e-12:
            raise ValueError("probabilities must sum to one")

    def __len__(self) -> int:
        return int(self.values.size)

    @classmethod
    def _trusted(cls, values: np.ndarray, probs: np.ndarray) -> "FiniteDist":
        # Internal constructor for slices whose invariants hold by
        # construction; skips validation.
        obj = object.__new__(cls)
        object.__setattr__(obj, "values", values)
        object.__setattr__(obj, "probs", probs)
        return obj

    @cached_property
    def _cum(self) -> np.ndarray:
        return np.cumsum(self.probs)

    @cached_property
    def _tail(self) -> np.ndarray:
        # _tail[i] = P[X >= values[i]]
        return np.cumsum(self.probs[::-1])[::-1]


def make_dist(values, probs) -> FiniteDist:
    """Build a distribution, merging duplicate support values.

    Raises ``ValueError`` on empty input, negative probabilities, or a total
    probability off from one by more than 1e-9. The result is normalized and
    zero-probability atoms are dropped.
    """
    v = np.asarray(values, dtype=float)
    p = np.asarray(probs, dtype=float)
    if v.ndim != 1 or v.size == 0 or p.shape != v.shape:
        raise ValueError("need equally long, non-empty value and probability lists")
    if not np.all(np.isfinite(v)):
        raise ValueError("support values must be finite")
    if np.any(p < 0):
        raise ValueError(f"negative probability: {p.min()}")
    total = float(p.sum())
    if abs(total - 1.0) > _SUM_TOL:
        raise ValueError(f"probabilities sum to {total!r}, not 1")
    uniq, inverse = np.unique(v, return_inverse=True)
    merged = np.zeros(uniq.size)
    np.add.at(merged, inverse, p)
    merged /= merged.sum()
    keep = merged > 0.0
    return FiniteDist(uniq[keep], merged[keep])


def moments(d: FiniteDist) -> Moments:
    mean = float(np.dot(d.values, d.probs))
    m2 = float(np.dot(d.values * d.values, d.probs))
    var = max(m2 - mean * mean, 0.0)
    return Moments(mean=mean, variance=var, second_moment=m2)


def quantile(d: FiniteDist, p: float) -> float:
    """Largest support value x with P[X >= x] >= p (tail-oriented order-p quantile)."""
    if not 0.0 < p <= 1.0:
        raise ValueError(f"quantile order must be in (0, 1], got {p}")
    ok = d._tail >= p - _TAIL_SLACK
    idx = int(np.nonzero(ok)[0][-1])
    return float(d.values[idx])


def truncated_mean(d: FiniteDist, a: float, b: float) -> float:
    """E[X 1{a < X <= b}], the mean restricted to the half-open window (a, b]."""
    if not a < b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    m = (d.values > a) & (d.values <= b)
    return float(np.dot(d.values[m], d.probs[m]))


def shift_split(d: FiniteDist, eta: float) -> tuple[FiniteDist, FiniteDist]:
    """Split X about eta into the non-negative parts above and below.

    Returns the distributions of max(X - eta, 0) and max(eta - X, 0). The
    identity mean(X) = eta + mean(up) - mean(down) holds exactly, and the
    second moments of the parts add up to E[(X - eta)^2].
    """
    up = make_dist(np.maximum(d.values - eta, 0.0), d.probs)
    down = make_dist(np.maximum(eta - d.values, 0.0), d.probs)
    return up, down


def pair_square_diff(d: FiniteDist) -> FiniteDist:
    """Distribution of (X - X')^2 / 2 for an independent pair X, X'.

    Enumerates the full product measure, so the support must stay desk-sized.
    The mean of the result equals the variance of ``d``.
    """
    if len(d) > _MAX_PAIR_ATOMS:
        raise ValueError(f"support too large for pairwise enumeration ({len(d)} atoms)")
    diffs = np.subtract.outer(d.values, d.values)
    vals = (diffs * diffs / 2.0).ravel()
    ps = np.multiply.outer(d.probs, d.probs).ravel()
    return make_dist(vals, ps)


def conditional_above(d: FiniteDist, x: float) -> tuple[FiniteDist | None, float]:
    """Distribution of X given X > x, plus the tail mass P[X > x].

    ``x`` may be +-inf. An empty conditional is signalled as (None, 0.0),
    not an error.
    """
    if len(d) == 1:
        if x < d.values[0]:
            return d, float(d.probs[0])
        return None, 0.0
    idx = int(np.searchsorted(d.values, x, side="right"))
    if idx >= len(d):
        return None, 0.0
    tail = float(np.sum(d.probs[idx:]))
    if tail <= 0.0:
        return None, 0.0
    return FiniteDist._trusted(d.values[idx:], d.probs[idx:] / tail), tail


def sample(d: FiniteDist, rng: RandomSource) -> float:
    """One draw from ``d``; deterministic under a fixed rng state."""
    if len(d) == 1:
        return float(d.values[0])
    u = float(rng.gen.random())
    idx = min(int(np.searchsorted(d._cum, u, side="right")), len(d) - 1)
    return float(d.values[idx])


def sample_n(d: FiniteDist, rng: RandomSource, n: int) -> np.ndarray:
    """``n`` i.i.d. draws from ``d`` as an array."""
    u = rng.gen.random(n)
    idx = np.minimum(np.searchsorted(d._cum, u, side="right"), len(d) - 1)
    return d.values[idx]


def hard_instance_subgaussian(m: float, sigma: float) -> tuple[FiniteDist, FiniteDist]:
    """Two-point instances that pin down the cost of sub-Gaussian estimation.

    Both distributions place mass 1/m^2 on a spike of magnitude
    b = m*sigma/sqrt(1 - 1/m^2) (positive for the first, negative for the
    second) and the rest at zero. Each has variance exactly sigma^2 while
    their means differ by 2b/m^2 > 2*sigma/m.
    """
    if not m > 1:
        raise ValueError(f"need m > 1, got {m}")
    if not sigma > 0:
        raise ValueError(f"need sigma > 0, got {sigma}")
    b = m * sigma / math.sqrt(1.0 - 1.0 / (m * m))
    q = 1.0 / (m * m)
    p0 = make_dist([0.0, b], [1.0 - q, q])
    p1 = make_dist([-b, 0.0], [q, 1.0 - q])
    return p0, p1


def hard_instance_statebased(m: float, sigma: float) -> tuple[FiniteDist, FiniteDist, float]:
    """Two-point instances on a shared support for state-discrimination bounds.

    With b = m*sigma/sqrt(m-1) and tilt alpha = 2*ln(1 + sqrt(1 - 1/m)), the
    first distribution takes b with probability e^alpha/m and the second with
    probability 1/m. The second has variance exactly sigma^2; the first's
    standard deviation lies in [sigma, 2*sigma]. Returns (p0, p1, alpha).
    """
    if not m > 1:
        raise ValueError(f"need m > 1, got {m}")
    if not sigma > 0:
        raise ValueError(f"need sigma > 0, got {sigma}")
    alpha = 2.0 * math.log1p(math.sqrt(1.0 - 1.0 / m))
    q0 = math.exp(alpha) / m
    if q0 >= 1.0:
        raise ValueError(f"tilted spike probability e^alpha/m = {q0:.6f} >= 1; increase m")
    b = m * sigma / math.sqrt(m - 1.0)
    p0 = make_dist([0.0, b], [1.0 - q0, q0])
    p1 = make_dist([0.0, b], [1.0 - 1.0 / m, 1.0 / m])
    return p0, p1, alpha
