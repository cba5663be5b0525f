"""Classical mean-estimation baselines."""

from __future__ import annotations

import math

import numpy as np

from .kernels import lower_median

__all__ = ["empirical_mean", "median_of_means", "classical_truncated_mean"]


def empirical_mean(samples) -> float:
    x = np.asarray(samples, dtype=float)
    if x.size == 0:
        raise ValueError("empty sample")
    return float(x.mean())


def median_of_means(samples, delta: float) -> float:
    """Lower median of group means over ceil(ln(1/delta)) equal groups.

    Samples are grouped contiguously in the given order; the tail excess that
    does not fill a group is dropped. Sub-Gaussian: the error stays within a
    constant times sqrt(variance * log(1/delta) / n).
    """
    if not 0.0 < delta < 1.0:
        raise ValueError(f"failure probability must be in (0, 1), got {delta}")
    x = np.asarray(samples, dtype=float)
    groups = math.ceil(math.log(1.0 / delta))
    if x.size < groups:
        raise ValueError(f"need at least {groups} samples, got {x.size}")
    size = x.size // groups
    means = x[: groups * size].reshape(groups, size).mean(axis=1)
    return lower_median(means.tolist())


def classical_truncated_mean(samples, second_moment: float, n: int) -> float:
    """Empirical mean after zeroing samples above sqrt(n * second_moment).

    A pedagogical baseline for non-negative data: the true second moment is
    supplied as an oracle input and sets the truncation level.
    """
    x = np.asarray(samples, dtype=float)
    if x.size != n:
        raise ValueError(f"expected exactly n={n} samples, got {x.size}")
    if np.any(x < 0):
        raise ValueError("samples must be non-negative")
    if not second_moment > 0:
        raise ValueError(f"second moment must be positive, got {second_moment}")
    b = math.sqrt(n * second_moment)
    return float(np.where(x > b, 0.0, x).mean())
