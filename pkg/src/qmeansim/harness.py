"""Config-driven sweep runner, aggregation and validation utilities.

A sweep crosses a parameter grid with independent trials, one row per
(grid point, trial). Rows are deterministic functions of (config, seed):
every cell owns the random stream derived from its (grid index, trial)
coordinates, so results do not depend on scheduling. Floats are serialized
with 17 significant digits, which makes repeated runs byte-identical.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, fields
from itertools import product
from typing import Iterator

import numpy as np

from .baselines import classical_truncated_mean, empirical_mean, median_of_means
from .dist import FiniteDist, moments, quantile, sample_n, truncated_mean
from .estimators import (
    ConstantProfile,
    bern_est,
    default_profile,
    quantile_est,
    relative_est,
    seq_bern_est,
    seq_relative_est,
    subgauss_est,
)
from .generators import resolve_distribution
from .kernels import ExperimentCounter, QVar
from .qpe_ref import qpe_statevector_dist, total_variation
from .rng import RandomSource

__all__ = [
    "ConfigError",
    "SweepConfig",
    "SweepRow",
    "run_sweep",
    "write_csv",
    "read_csv",
    "summarize",
    "fit_loglog_slope",
    "load_profile_spec",
    "verify_ae",
    "VERIFY_AE_AMPLITUDES",
]

ESTIMATOR_NAMES = (
    "subgauss",
    "relative",
    "seq-relative",
    "bern",
    "quantile",
    "seq-bern",
    "median-of-means",
    "empirical",
    "classical-truncated",
)

# Grid keys in canonical iteration order; scalar keys apply to every cell.
_GRID_KEYS = ("n", "epsilon", "delta", "p")
_SCALAR_KEYS = ("ch", "a", "b")

# Parameters each estimator consumes (grid keys only).
_REQUIRED = {
    "subgauss": ("n", "delta"),
    "relative": ("epsilon", "delta"),
    "seq-relative": ("epsilon", "delta"),
    "bern": ("n", "delta"),
    "quantile": ("p", "delta"),
    "seq-bern": (),
    "median-of-means": ("n", "delta"),
    "empirical": ("n",),
    "classical-truncated": ("n",),
}


class ConfigError(ValueError):
    """Invalid sweep configuration."""


@dataclass
class SweepConfig:
    estimator: str
    distribution: str
    grid: dict[str, list[float]]
    trials: int
    seed: int
    profile: str = "calibrated"
    budget: int | None = None
    ch: float | None = None
    a: float | None = None
    b: float | None = None

    def __post_init__(self) -> None:
        if self.estimator not in ESTIMATOR_NAMES:
            raise ConfigError(f"unknown estimator {self.estimator!r}")
        if self.trials < 1:
            raise ConfigError(f"trials must be >= 1, got {self.trials}")
        if not self.grid or any(not v for v in self.grid.values()):
            raise ConfigError("grid must be non-empty with non-empty value lists")
        for key in self.grid:
            if key not in _GRID_KEYS:
                raise ConfigError(f"unknown grid key {key!r}")
        for key in _REQUIRED[self.estimator]:
            if key not in self.grid:
                raise ConfigError(f"estimator {self.estimator!r} needs grid key {key!r}")
        if self.estimator == "relative" and self.ch is None:
            raise ConfigError("estimator 'relative' needs scalar key 'ch'")
        if self.estimator == "bern" and (self.a is None or self.b is None):
            raise ConfigError("estimator 'bern' needs scalar keys 'a' and 'b'")

    @classmethod
    def from_dict(cls, raw: dict) -> "SweepConfig":
        known = {f.name for f in fields(cls)}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")
        missing = {"estimator", "distribution", "grid", "trials", "seed"} - set(raw)
        if missing:
            raise ConfigError(f"missing config keys: {sorted(missing)}")
        return cls(**raw)

    def load_profile(self) -> ConstantProfile:
        return load_profile_spec(self.profile)


def load_profile_spec(spec: str) -> ConstantProfile:
    """Resolve a profile name ("calibrated"/"theoretical") or JSON file path."""
    if spec in ("calibrated", "theoretical"):
        return default_profile(spec)
    with open(spec) as fh:
        return ConstantProfile.from_json(fh.read())


@dataclass
class SweepRow:
    estimator: str
    distribution: str
    n: float | None
    epsilon: float | None
    delta: float | None
    p: float | None
    trial: int
    estimate: float
    true_mean: float
    abs_error: float
    rel_error: float | None
    oracle_experiments: int
    aa_applications: int
    interrupted: bool
    seed: int


CSV_FIELDS = [f.name for f in fields(SweepRow)]


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, ".17g")
    return str(value)


def _run_cell(
    config: SweepConfig,
    dist: FiniteDist,
    profile: ConstantProfile,
    params: dict[str, float],
    trial: int,
    stream: RandomSource,
) -> tuple[float, ExperimentCounter]:
    counter = ExperimentCounter(budget=config.budget)
    qvar = QVar(dist, counter)
    kind = config.estimator
    if kind == "subgauss":
        rep = subgauss_est(qvar, params["n"], params["delta"], profile, stream)
    elif kind == "relative":
        rep = relative_est(qvar, config.ch, params["epsilon"], params["delta"], profile, stream)
    elif kind == "seq-relative":
        rep = seq_relative_est(qvar, params["epsilon"], params["delta"], profile, stream)
    elif kind == "bern":
        rep = bern_est(qvar, params["n"], config.a, config.b, params["delta"], stream,
                       log_base=profile.log_base)
    elif kind == "quantile":
        rep = quantile_est(qvar, params["p"], params["delta"], profile, stream)
    elif kind == "seq-bern":
        rep = seq_bern_est(qvar, stream)
    else:
        # classical baselines: one random experiment is simulated by a state
        # preparation plus a measurement, two oracle experiments per sample
        n = int(params["n"])
        samples = sample_n(dist, stream, n)
        counter.charge(n * (qvar.cost_u + qvar.cost_measure))
        if kind == "median-of-means":
            est = median_of_means(samples, params["delta"])
        elif kind == "empirical":
            est = empirical_mean(samples)
        else:
            est = classical_truncated_mean(samples, moments(dist).second_moment, n)
        return est, counter.snapshot()
    return rep.estimate, rep.counter_snapshot


def run_sweep(config: SweepConfig) -> Iterator[SweepRow]:
    """Yield one row per (grid point, trial), in canonical order.

    Grid points whose parameters violate an estimator precondition are
    reported once on stderr and skipped; the sweep continues.
    """
    dist = resolve_distribution(config.distribution)
    profile = config.load_profile()
    true_mean = moments(dist).mean
    grid_keys = [k for k in _GRID_KEYS if k in config.grid]
    combos = list(product(*(config.grid[k] for k in grid_keys)))
    base = RandomSource(config.seed)
    for gi, combo in enumerate(combos):
        params = dict(zip(grid_keys, combo))
        for trial in range(config.trials):
            stream = base.derive(gi, trial)
            try:
                estimate, snap = _run_cell(config, dist, profile, params, trial, stream)
            except ValueError as exc:
                import sys

                print(f"skipping grid point {params}: {exc}", file=sys.stderr)
                break
            abs_error = abs(estimate - true_mean)
            rel_error = abs_error / abs(true_mean) if true_mean != 0 else None
            yield SweepRow(
                estimator=config.estimator,
                distribution=config.distribution,
                n=params.get("n"),
                epsilon=params.get("epsilon"),
                delta=params.get("delta"),
                p=params.get("p"),
                trial=trial,
                estimate=estimate,
                true_mean=true_mean,
                abs_error=abs_error,
                rel_error=rel_error,
                oracle_experiments=snap.oracle_experiments,
                aa_applications=snap.aa_applications,
                interrupted=snap.interrupted,
                seed=config.seed,
            )


def write_csv(rows, out) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(CSV_FIELDS)
    for row in rows:
        writer.writerow([_fmt(getattr(row, name)) for name in CSV_FIELDS])


def _parse_opt_float(text: str) -> float | None:
    return float(text) if text else None


def read_csv(inp) -> list[SweepRow]:
    reader = csv.DictReader(inp)
    rows = []
    for rec in reader:
        rows.append(
            SweepRow(
                estimator=rec["estimator"],
                distribution=rec["distribution"],
                n=_parse_opt_float(rec["n"]),
                epsilon=_parse_opt_float(rec["epsilon"]),
                delta=_parse_opt_float(rec["delta"]),
                p=_parse_opt_float(rec["p"]),
                trial=int(rec["trial"]),
                estimate=float(rec["estimate"]),
                true_mean=float(rec["true_mean"]),
                abs_error=float(rec["abs_error"]),
                rel_error=_parse_opt_float(rec["rel_error"]),
                oracle_experiments=int(rec["oracle_experiments"]),
                aa_applications=int(rec["aa_applications"]),
                interrupted=rec["interrupted"] == "true",
                seed=int(rec["seed"]),
            )
        )
    return rows


def _error_bound(row: SweepRow, dist: FiniteDist, profile: ConstantProfile):
    """Per-estimator deviation bound used for failure-rate aggregation.

    Returns (kind, value): kind "abs" compares abs_error to value, kind
    "interval" checks the estimate lies in the value interval. None when no
    bound applies.
    """
    mom = moments(dist)
    if row.estimator in ("subgauss", "relative", "seq-relative", "median-of-means"):
        if row.estimator == "subgauss":
            return "abs", mom.variance**0.5 * math.log(1 / row.delta) / row.n
        if row.estimator == "median-of-means":
            return "abs", 2.0 * math.sqrt(mom.variance * math.log(1 / row.delta) / row.n)
        return "abs", row.epsilon * abs(row.true_mean)
    if row.estimator == "seq-bern":
        return "abs", profile.seq_rel_err * abs(row.true_mean)
    if row.estimator == "quantile":
        lo = quantile(dist, row.p)
        hi = quantile(dist, profile.quantile_order_factor * row.p)
        return "interval", (lo, hi)
    if row.estimator == "bern":
        # windowed-mean bound with the full-support window (0, max]; sweeps
        # with custom windows should aggregate with --bound none
        b = float(dist.values[-1])
        if b <= 0:
            return None
        mu_ab = truncated_mean(dist, 0.0, b)
        log_term = math.log(1 / row.delta)
        return "abs", math.sqrt(b * mu_ab) * log_term / row.n + b * log_term**2 / row.n**2
    return None


def summarize(rows: list[SweepRow], bound: str = "auto",
              profile: ConstantProfile | None = None) -> list[dict]:
    """Aggregate rows per grid point: errors, costs and bound failure rate."""
    if not rows:
        raise ValueError("no rows to summarize")
    if profile is None:
        profile = default_profile("calibrated")
    groups: dict[tuple, list[SweepRow]] = {}
    for row in rows:
        groups.setdefault((row.estimator, row.distribution, row.n, row.epsilon,
                           row.delta, row.p), []).append(row)
    out = []
    for key, members in groups.items():
        errs = np.array([m.abs_error for m in members])
        rec = {
            "estimator": key[0],
            "distribution": key[1],
            "n": key[2],
            "epsilon": key[3],
            "delta": key[4],
            "p": key[5],
            "trials": len(members),
            "mean_abs_error": float(errs.mean()),
            "p90_abs_error": float(np.percentile(errs, 90)),
            "mean_oracle": float(np.mean([m.oracle_experiments for m in members])),
            "mean_aa": float(np.mean([m.aa_applications for m in members])),
            "failure_rate": None,
            "bound": None,
        }
        if bound == "auto":
            dist = resolve_distribution(key[1])
            spec = _error_bound(members[0], dist, profile)
            if spec is not None:
                kind, value = spec
                if kind == "abs":
                    fails = sum(m.abs_error > value for m in members)
                    rec["bound"] = value
                else:
                    lo, hi = value
                    fails = sum(not lo <= m.estimate <= hi for m in members)
                    rec["bound"] = hi
                rec["failure_rate"] = fails / len(members)
        out.append(rec)
    return out


def fit_loglog_slope(points) -> float:
    """Least-squares slope of ln(error) against ln(cost)."""
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 3:
        raise ValueError(f"need at least 3 points, got {len(pts)}")
    if any(x <= 0 or y <= 0 for x, y in pts):
        raise ValueError("coordinates must be positive for a log-log fit")
    lx = np.log([x for x, _ in pts])
    ly = np.log([y for _, y in pts])
    return float(np.polyfit(lx, ly, 1)[0])


# Amplitude panel for kernel validation: degenerate, on-grid for power-of-two
# registers, and generic off-grid values.
VERIFY_AE_AMPLITUDES = tuple(
    round(v, 17)
    for v in (
        0.0,
        1.0,
        0.5,
        0.25,
        0.75,
        0.1,
        0.9,
        0.3,
        0.7,
        0.05,
        0.95,
        0.01,
        0.99,
        1e-4,
        1 - 1e-4,
        math.sin(math.pi / 8) ** 2,
        math.sin(math.pi / 16) ** 2,
        math.sin(3 * math.pi / 8) ** 2,
        0.36,
        0.64,
    )
)


def verify_ae(max_m: int = 32) -> dict:
    """Compare the closed-form estimation law to the statevector reference.

    Sweeps register sizes {2, 4, 8, 16, 32} up to ``max_m`` crossed with the
    20-amplitude panel; returns the worst total-variation distance and the
    per-case table.
    """
    if max_m > 32:
        raise ValueError("statevector reference is intended for M <= 32")
    from .kernels import ae_outcome_dist

    cases = []
    worst = 0.0
    for m in (2, 4, 8, 16, 32):
        if m > max_m:
            continue
        for p in VERIFY_AE_AMPLITUDES:
            tv = total_variation(ae_outcome_dist(p, m), qpe_statevector_dist(p, m))
            cases.append({"M": m, "p": p, "tv": tv})
            worst = max(worst, tv)
    return {"max_tv": worst, "cases": cases}
