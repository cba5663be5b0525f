"""Exact classical simulation of amplitude amplification and estimation.

The marked amplitude p of a state-preparation routine is known here, so the
quantum primitives reduce to closed-form probability laws:

* amplitude amplification with n rounds succeeds with probability
  sin^2((2n+1) * asin(sqrt(p)));
* the sequential (restartable) variant draws its round count from a
  geometrically growing grid and stops at the first success;
* M-point amplitude estimation measures an index y whose exact law is a
  half/half mixture of Fejer kernels centred on the two eigenphases
  +-asin(sqrt(p))/pi.

Every routine charges an :class:`ExperimentCounter` under two parallel
accountings: low-level oracle experiments (state preparations, comparison or
rotation oracles, their inverses, and measurements) and amplification
applications (state preparation, its inverse, and the ancilla reflection).
Ancilla-only reflections cost nothing at the oracle level but one unit at the
amplification level. An optional budget caps the oracle tally; the cap is
checked at single-charge granularity, is never exceeded, and trips the
counter's ``interrupted`` flag.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .dist import FiniteDist
from .rng import RandomSource

__all__ = [
    "ExperimentCounter",
    "QVar",
    "AEOutcome",
    "grover_angle",
    "aamp_success_prob",
    "seq_aamp",
    "ae_outcome_dist",
    "aest_sample",
    "aest_median",
    "seq_aest",
    "sin2_frac",
]

# Growth rate of the sequential amplification schedule.
GROWTH = 1.1

# Largest M for which an M-point outcome law is materialized.
_MAX_AE_POINTS = 1 << 23


@dataclass
class ExperimentCounter:
    """Dual running tally of simulated quantum work.

    ``oracle_experiments`` counts unitary/oracle applications and
    measurements; ``aa_applications`` counts amplification steps. When
    ``budget`` is set, the oracle tally is clamped at the budget and
    ``interrupted`` records that the cap was hit.
    """

    oracle_experiments: int = 0
    aa_applications: int = 0
    budget: int | None = None
    interrupted: bool = False

    def remaining(self) -> int | None:
        if self.budget is None:
            return None
        return max(self.budget - self.oracle_experiments, 0)

    def charge(self, oracle: int = 0, aa: int = 0) -> bool:
        """Apply a charge; returns False if it did not fit under the budget.

        A charge that lands exactly on the budget is applied in full but
        still trips ``interrupted``. A charge that would overshoot clamps the
        oracle tally to the budget and is reported as not applied.
        """
        if self.interrupted:
            return False
        if self.budget is not None and self.oracle_experiments + oracle > self.budget:
            self.oracle_experiments = self.budget
            self.interrupted = True
            return False
        self.oracle_experiments += int(oracle)
        self.aa_applications += int(aa)
        if self.budget is not None and self.oracle_experiments >= self.budget:
            self.interrupted = True
        return True

    def exhaust(self, aa: int = 0) -> None:
        """Burn whatever oracle budget remains, crediting ``aa`` partial steps."""
        if self.budget is not None:
            self.oracle_experiments = self.budget
        self.aa_applications += int(aa)
        self.interrupted = True

    def child(self, budget: int | None = None) -> "ExperimentCounter":
        """A fresh counter capped by ``budget`` and by this counter's remainder."""
        rem = self.remaining()
        if budget is None:
            cap = rem
        elif rem is None:
            cap = int(budget)
        else:
            cap = min(int(budget), rem)
        return ExperimentCounter(budget=cap)

    def absorb(self, other: "ExperimentCounter") -> None:
        """Fold a child's tallies back in, re-checking this counter's budget."""
        self.oracle_experiments += other.oracle_experiments
        self.aa_applications += other.aa_applications
        if self.budget is not None and self.oracle_experiments >= self.budget:
            self.oracle_experiments = min(self.oracle_experiments, self.budget)
            self.interrupted = True

    def snapshot(self) -> "ExperimentCounter":
        return ExperimentCounter(
            self.oracle_experiments, self.aa_applications, self.budget, self.interrupted
        )


@dataclass
class QVar:
    """A finite distribution exposed through simulated quantum oracles.

    ``cost_u``/``cost_oracle``/``cost_measure`` weigh one application of the
    state preparation, of a comparison/rotation oracle, and of a measurement.
    Composite walk operators apply the state preparation together with one
    oracle, so they charge ``pair_cost()`` per application.
    """

    dist: FiniteDist
    counter: ExperimentCounter
    cost_u: int = 1
    cost_oracle: int = 1
    cost_measure: int = 1

    def __post_init__(self) -> None:
        if min(self.cost_u, self.cost_oracle, self.cost_measure) < 0:
            raise ValueError("cost weights must be non-negative")

    def pair_cost(self) -> int:
        return self.cost_u + self.cost_oracle

    def _rebind(self, dist: FiniteDist, counter: ExperimentCounter) -> "QVar":
        clone = object.__new__(QVar)
        clone.dist = dist
        clone.counter = counter
        clone.cost_u = self.cost_u
        clone.cost_oracle = self.cost_oracle
        clone.cost_measure = self.cost_measure
        return clone

    def with_dist(self, dist: FiniteDist) -> "QVar":
        return self._rebind(dist, self.counter)

    def with_counter(self, counter: ExperimentCounter) -> "QVar":
        return self._rebind(self.dist, counter)


@dataclass(frozen=True)
class AEOutcome:
    """Measured phase index y in [0, M) and its amplitude reading sin^2(pi*y/M)."""

    y: int
    p_estimate: float


def grover_angle(p: float) -> float:
    """Rotation angle theta in [0, pi/2] with sin(theta) = sqrt(p)."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"amplitude must be in [0, 1], got {p}")
    return math.asin(math.sqrt(p))


def aamp_success_prob(p: float, n: int) -> float:
    """Success probability sin^2((2n+1)*theta) after n amplification rounds."""
    if n < 0:
        raise ValueError(f"round count must be >= 0, got {n}")
    return math.sin((2 * n + 1) * grover_angle(p)) ** 2


@lru_cache(maxsize=256)
def _grid_bounds(start: int, count: int) -> tuple[np.ndarray, np.ndarray]:
    # Integer grid for round ell: {ceil(G^(ell-1)), ..., ceil(G^ell) - 1},
    # collapsed to its lower end whenever the range would be empty.
    ells = np.arange(start, start + count, dtype=float)
    lo = np.ceil(GROWTH ** (ells - 1)).astype(np.int64)
    hi = np.ceil(GROWTH**ells).astype(np.int64) - 1
    return lo, np.maximum(lo, hi)


def _partial_round_aa(rem_oracle: int, per_app: int, n: int) -> int:
    # Amplification steps fully paid for before an in-round budget stop.
    # Application order: U, then n repetitions of (reflection, U^-1, U);
    # reflections are free at the oracle level.
    if per_app <= 0:
        return 0
    f = min(rem_oracle // per_app, 2 * n + 1)
    if f <= 0:
        return 0
    q, r = divmod(f - 1, 2)
    return int(f + q + r)


@lru_cache(maxsize=8)
def _burn_schedule(per_app: int, measure: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    # Static per-round cost schedule for zero-amplitude runs (every round
    # fails, so draws are skipped and each round uses its grid's lower end).
    # Covers cumulative oracle costs up to 1e18.
    ns: list[int] = []
    total = 0
    ell = 0
    while total < 1e18:
        ell += 1
        n = math.ceil(GROWTH ** (ell - 1))
        ns.append(n)
        total += (2 * n + 1) * per_app + measure
    narr = np.array(ns, dtype=np.int64)
    cum_oracle = np.cumsum((2 * narr + 1) * per_app + measure)
    cum_aa = np.cumsum(3 * narr + 1)
    return cum_oracle, cum_aa, narr


def _burn_remaining(counter: ExperimentCounter, per_app: int, measure: int) -> tuple[int, int]:
    # Consume the whole remaining budget with failing rounds; only the
    # burn-down is observable, so the round costs come from the static
    # schedule instead of fresh draws.
    rem = counter.remaining()
    if rem is None:  # pragma: no cover - guarded by callers
        raise ValueError("cannot burn an unbounded budget")
    cum_oracle, cum_aa, ns = _burn_schedule(per_app, measure)
    if rem > cum_oracle[-1]:  # pragma: no cover - beyond any desk-scale budget
        raise ValueError(f"budget {rem} beyond the burn schedule")
    full = int(np.searchsorted(cum_oracle, rem, side="right"))
    rounds = full
    aa_total = int(cum_aa[full - 1]) if full > 0 else 0
    if full > 0:
        counter.charge(int(cum_oracle[full - 1]), aa_total)
    rem2 = counter.remaining() or 0
    if rem2 > 0:
        aa = _partial_round_aa(rem2, per_app, int(ns[full]))
        counter.exhaust(aa)
        rounds += 1
        aa_total += aa
    else:
        counter.exhaust(0)
    return rounds, aa_total


def seq_aamp(
    p: float,
    rng: RandomSource,
    counter: ExperimentCounter,
    per_app_oracle_cost: int,
    cost_measure: int = 1,
) -> tuple[bool, int, int]:
    """Sequential amplitude amplification on a known amplitude.

    Round ell draws an iteration count n uniformly from a geometrically
    growing integer grid, charges 3n+1 amplification steps and
    (2n+1)*per_app_oracle_cost + cost_measure oracle experiments, and stops
    at the first successful ancilla measurement.

    Returns ``(succeeded, rounds, aa_charged)`` where ``aa_charged`` is the
    amplification work this call added to the counter. With p > 0 and no
    budget the call terminates with probability one; with a budget it may
    instead exhaust it and report failure. p = 0 without a budget is refused.
    """
    theta = grover_angle(p)
    if p == 0.0:
        if counter.budget is None:
            raise ValueError("zero amplitude never succeeds; a budget is required")
        rounds, aa = _burn_remaining(counter, per_app_oracle_cost, cost_measure)
        return False, rounds, aa
    if counter.interrupted:
        return False, 0, 0
    if p == 1.0:
        # round 1 draws n = 1 from its singleton grid and succeeds surely
        rem = counter.remaining()
        need = 3 * per_app_oracle_cost + cost_measure
        if rem is None or rem >= need:
            counter.charge(need, 4)
            return True, 1, 4
        aa_part = _partial_round_aa(rem, per_app_oracle_cost, 1)
        counter.exhaust(aa_part)
        return False, (1 if rem > 0 else 0), aa_part

    gen = rng.gen
    rounds = 0
    aa_total = 0
    block = 16
    while True:
        lo, hi = _grid_bounds(rounds + 1, block)
        ns = gen.integers(lo, hi + 1)
        succ = np.sin((2 * ns + 1) * theta) ** 2
        hits = gen.random(block) < succ
        o_costs = (2 * ns + 1) * per_app_oracle_cost + cost_measure
        aa_costs = 3 * ns + 1

        first_hit = int(np.argmax(hits)) if hits.any() else block
        rem = counter.remaining()
        if rem is None:
            affordable = block
        else:
            affordable = int(np.searchsorted(np.cumsum(o_costs), rem, side="right"))

        if first_hit < affordable:
            upto = first_hit + 1
            charged_aa = int(aa_costs[:upto].sum())
            counter.charge(int(o_costs[:upto].sum()), charged_aa)
            return True, rounds + upto, aa_total + charged_aa

        if affordable >= block:
            charged_aa = int(aa_costs.sum())
            counter.charge(int(o_costs.sum()), charged_aa)
            rounds += block
            aa_total += charged_aa
            continue

        # The budget dies inside round `affordable` (0-indexed in this block).
        if affordable > 0:
            charged_aa = int(aa_costs[:affordable].sum())
            counter.charge(int(o_costs[:affordable].sum()), charged_aa)
            rounds += affordable
            aa_total += charged_aa
        rem2 = counter.remaining() or 0
        aa_part = _partial_round_aa(rem2, per_app_oracle_cost, int(ns[affordable]))
        counter.exhaust(aa_part)
        if rem2 > 0:
            rounds += 1
            aa_total += aa_part
        return False, rounds, aa_total


def _fejer(x: np.ndarray, m: int) -> np.ndarray:
    # sin^2(M pi x) / (M sin(pi x))^2, continued by 1 at integer x.
    s = np.sin(np.pi * x)
    num = np.sin(np.pi * m * x)
    tiny = np.abs(s) < 1e-14
    safe = np.where(tiny, 1.0, s)
    out = (num / (m * safe)) ** 2
    return np.where(tiny, 1.0, out)


def ae_outcome_dist(p: float, m: int) -> np.ndarray:
    """Exact outcome law of M-point amplitude estimation at amplitude p.

    The measured index y in [0, M) follows a half/half mixture of Fejer
    kernels centred on the two eigenphases +-omega of the amplification
    operator, omega = asin(sqrt(p))/pi. Degenerate amplitudes (p = 0 or 1)
    have a single eigenphase and use one kernel. The returned vector sums to
    one within 1e-12.
    """
    if m < 1:
        raise ValueError(f"need at least one phase point, got M={m}")
    if m > _MAX_AE_POINTS:
        raise ValueError(f"M={m} phase points exceeds the materialization cap")
    omega = grover_angle(p) / math.pi
    y = np.arange(m, dtype=float)
    if p == 0.0 or p == 1.0:
        return _fejer(y / m - omega, m)
    return 0.5 * _fejer(y / m - omega, m) + 0.5 * _fejer(y / m + omega, m)


def _kernel_cum_raw(p: float, m: int) -> np.ndarray:
    # Cumulative law of one Fejer kernel centred on +omega. The full outcome
    # law is the half/half mixture of this kernel and its reflection
    # y -> (M - y) mod M, which the sampler applies with a fair coin.
    if m > _MAX_AE_POINTS:
        raise ValueError(f"M={m} phase points exceeds the materialization cap")
    omega = grover_angle(p) / math.pi
    y = np.arange(m, dtype=float)
    return np.cumsum(_fejer(y / m - omega, m))


_kernel_cum_small = lru_cache(maxsize=16)(_kernel_cum_raw)
_BIG_KERNEL_LIMIT = 1 << 20
_big_kernel_slot: tuple[tuple[float, int], np.ndarray] | None = None


def _single_kernel_cum(p: float, m: int) -> np.ndarray:
    # Registers beyond _BIG_KERNEL_LIMIT points use a single-slot cache so
    # repeated draws within one estimation call stay cheap without pinning
    # hundreds of megabytes.
    global _big_kernel_slot
    if m <= _BIG_KERNEL_LIMIT:
        return _kernel_cum_small(p, m)
    if _big_kernel_slot is not None and _big_kernel_slot[0] == (p, m):
        return _big_kernel_slot[1]
    value = _kernel_cum_raw(p, m)
    _big_kernel_slot = ((p, m), value)
    return value


def sin2_frac(y: int, m: int) -> float:
    """sin^2(pi * y/M) with exact values at the quarter-turn grid points."""
    y = y % m
    y = min(y, m - y)  # sin^2 is symmetric about M/2
    if y == 0:
        return 0.0
    if 2 * y == m:
        return 1.0
    if 4 * y == m:
        return 0.5
    return math.sin(math.pi * y / m) ** 2


def aest_sample(
    p: float,
    m: int,
    rng: RandomSource,
    counter: ExperimentCounter,
    per_app_oracle_cost: int,
    cost_measure: int = 1,
) -> AEOutcome:
    """One amplitude-estimation measurement with an M-point phase register.

    Charges M*(2*per_app_oracle_cost) + cost_measure oracle experiments and
    3M amplification steps up front; the estimation run itself is not
    interruptible mid-flight, so a budget shortfall clamps the tally and
    flags the counter but the outcome is still produced.
    """
    if m < 1:
        raise ValueError(f"need at least one phase point, got M={m}")
    counter.charge(m * 2 * per_app_oracle_cost + cost_measure, 3 * m)
    if p == 0.0:
        y = 0
    elif p == 1.0 and m % 2 == 0:
        y = m // 2
    else:
        cum = _single_kernel_cum(p, m)
        gen = rng.gen
        u = float(gen.random()) * float(cum[-1])
        y = min(int(np.searchsorted(cum, u, side="right")), m - 1)
        if not (p == 1.0) and gen.random() < 0.5:
            y = (m - y) % m
    return AEOutcome(y=y, p_estimate=sin2_frac(y, m))


def lower_median(values) -> float:
    """Deterministic median: the lower of the two central order statistics."""
    ordered = sorted(values)
    if not ordered:
        raise ValueError("median of empty sequence")
    return ordered[(len(ordered) - 1) // 2]


def aest_median(
    p: float,
    n: float,
    delta: float,
    rng: RandomSource,
    counter: ExperimentCounter,
    per_app_oracle_cost: int,
    cost_measure: int = 1,
    log_base: float = math.e,
) -> float:
    """Median of ceil(6*log(1/delta)) amplitude estimations.

    Each copy uses an M = ceil(2*pi*n / log(1/delta)) point register; the
    median boosts the per-copy confidence to at least 1 - delta. Requires
    n >= log(1/delta).
    """
    if not 0.0 < delta < 1.0:
        raise ValueError(f"failure probability must be in (0, 1), got {delta}")
    log_term = math.log(1.0 / delta, log_base)
    if n < log_term:
        raise ValueError(f"time parameter {n} below log(1/delta) = {log_term:.3f}")
    copies = math.ceil(6 * log_term)
    m = math.ceil(2 * math.pi * n / log_term)
    estimates = [
        aest_sample(p, m, rng, counter, per_app_oracle_cost, cost_measure).p_estimate
        for _ in range(copies)
    ]
    return lower_median(estimates)


def seq_aest(
    p: float,
    rng: RandomSource,
    counter: ExperimentCounter,
    per_app_oracle_cost: int,
    cost_measure: int = 1,
) -> tuple[float, int]:
    """Sequential amplitude estimation: p_tilde = 1/T^2 off the work tally.

    Runs sequential amplification and reads the estimate from the number T of
    amplification steps it took. On budget exhaustion returns (0.0, T) --
    the consumed budget yielded no success.
    """
    ok, _, t_aa = seq_aamp(p, rng, counter, per_app_oracle_cost, cost_measure)
    if not ok or t_aa == 0:
        return 0.0, t_aa
    return 1.0 / (t_aa * t_aa), t_aa
