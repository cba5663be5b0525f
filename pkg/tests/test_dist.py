import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qmeansim import (
    RandomSource,
    conditional_above,
    hard_instance_statebased,
    hard_instance_subgaussian,
    make_dist,
    moments,
    pair_square_diff,
    quantile,
    sample,
    sample_n,
    shift_split,
    truncated_mean,
)


def uniform(*values):
    k = len(values)
    return make_dist(list(values), [1.0 / k] * k)


# -- construction -----------------------------------------------------------

def test_make_dist_point_mass():
    d = make_dist([5], [1.0])
    assert d.values.tolist() == [5.0]
    assert d.probs.tolist() == [1.0]


def test_make_dist_merges_duplicates():
    d = make_dist([1, 1, 2], [0.25, 0.25, 0.5])
    assert d.values.tolist() == [1.0, 2.0]
    assert d.probs.tolist() == [0.5, 0.5]


def test_make_dist_rejects_bad_total():
    with pytest.raises(ValueError, match="sum to"):
        make_dist([0, 1], [0.3, 0.6])


def test_make_dist_rejects_negative_and_empty():
    with pytest.raises(ValueError):
        make_dist([0, 1], [1.5, -0.5])
    with pytest.raises(ValueError):
        make_dist([], [])


def test_make_dist_drops_zero_atoms():
    d = make_dist([1, 2], [1.0, 0.0])
    assert d.values.tolist() == [1.0]


# -- moments ----------------------------------------------------------------

def test_moments_point_mass():
    m = moments(make_dist([5], [1.0]))
    assert (m.mean, m.variance, m.second_moment) == (5.0, 0.0, 25.0)


def test_moments_uniform01():
    m = moments(uniform(0, 1))
    assert (m.mean, m.variance, m.second_moment) == (0.5, 0.25, 0.5)


def test_moments_symmetric():
    m = moments(make_dist([-1, 1], [0.5, 0.5]))
    assert (m.mean, m.variance, m.second_moment) == (0.0, 1.0, 1.0)


# -- quantile ---------------------------------------------------------------

def brute_quantile(d, p):
    # independent enumeration of sup{x : P[X >= x] >= p} over the support
    best = None
    for x in d.values:
        tail = float(d.probs[d.values >= x].sum())
        if tail >= p - 1e-12:
            best = float(x)
    return best


def test_quantile_uniform_enumeration():
    d = uniform(1, 2, 3, 4)
    # tails: 1, 0.75, 0.5, 0.25
    assert quantile(d, 0.5) == 3.0
    assert quantile(d, 1.0) == 1.0
    assert quantile(d, 0.25) == 4.0


def test_quantile_rejects_bad_order():
    d = uniform(1, 2)
    with pytest.raises(ValueError):
        quantile(d, 0.0)
    with pytest.raises(ValueError):
        quantile(d, 1.1)


@settings(max_examples=120, deadline=None)
@given(
    st.lists(st.integers(-50, 50), min_size=1, max_size=8, unique=True),
    st.lists(st.integers(1, 20), min_size=8, max_size=8),
    st.floats(1e-6, 1.0),
)
def test_quantile_matches_enumeration(values, weights, p):
    w = np.array(weights[: len(values)], dtype=float)
    d = make_dist(values, w / w.sum())
    assert quantile(d, p) == brute_quantile(d, p)


# -- truncated mean ---------------------------------------------------------

def test_truncated_mean_examples():
    assert truncated_mean(uniform(0, 1), 0, 1) == 0.5
    assert truncated_mean(uniform(0.25, 0.75), 0.5, 1) == 0.375
    assert truncated_mean(uniform(1, 2), 5, 9) == 0.0


def test_truncated_mean_rejects_reversed_window():
    with pytest.raises(ValueError):
        truncated_mean(uniform(0, 1), 1, 1)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(-20, 20), min_size=1, max_size=8, unique=True),
    st.lists(st.integers(1, 9), min_size=8, max_size=8),
)
def test_truncated_mean_additive_over_splits(values, weights):
    w = np.array(weights[: len(values)], dtype=float)
    d = make_dist(values, w / w.sum())
    a, b, c = -25.0, 0.5, 25.0
    whole = truncated_mean(d, a, c)
    split = truncated_mean(d, a, b) + truncated_mean(d, b, c)
    assert whole == pytest.approx(split, abs=1e-12)


# -- shift_split ------------------------------------------------------------

def test_shift_split_two_point():
    up, down = shift_split(make_dist([-1, 3], [0.5, 0.5]), 1.0)
    assert up.values.tolist() == [0.0, 2.0] and up.probs.tolist() == [0.5, 0.5]
    assert down.values.tolist() == [0.0, 2.0] and down.probs.tolist() == [0.5, 0.5]


def test_shift_split_point_mass_at_center():
    up, down = shift_split(make_dist([5], [1.0]), 5.0)
    assert up.values.tolist() == [0.0]
    assert down.values.tolist() == [0.0]


def test_shift_split_mean_identity_uniform():
    d = uniform(1, 2, 3, 4)
    up, down = shift_split(d, 2.0)
    # direct moment computation: 2.5 = 2 + 0.75 - 0.25
    assert moments(up).mean == pytest.approx(0.75)
    assert moments(down).mean == pytest.approx(0.25)
    assert moments(d).mean == pytest.approx(2.0 + 0.75 - 0.25)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(-20, 20), min_size=1, max_size=8, unique=True),
    st.lists(st.integers(1, 9), min_size=8, max_size=8),
    st.integers(-10, 10),
)
def test_shift_split_identities(values, weights, eta):
    w = np.array(weights[: len(values)], dtype=float)
    d = make_dist(values, w / w.sum())
    up, down = shift_split(d, float(eta))
    mom = moments(d)
    assert mom.mean == pytest.approx(eta + moments(up).mean - moments(down).mean, rel=1e-10, abs=1e-10)
    shifted_m2 = float(np.dot((d.values - eta) ** 2, d.probs))
    assert shifted_m2 == pytest.approx(
        moments(up).second_moment + moments(down).second_moment, rel=1e-10, abs=1e-10
    )


# -- pair_square_diff -------------------------------------------------------

def test_pair_square_diff_bernoulli():
    d = pair_square_diff(make_dist([0, 1], [0.5, 0.5]))
    assert d.values.tolist() == [0.0, 0.5]
    assert d.probs.tolist() == [0.5, 0.5]
    assert moments(d).mean == pytest.approx(0.25)


def test_pair_square_diff_point_mass():
    d = pair_square_diff(make_dist([7], [1.0]))
    assert d.values.tolist() == [0.0]


def test_pair_square_diff_uniform3_by_enumeration():
    base = uniform(0, 1, 2)
    # 9-term product enumeration oracle
    expect = 0.0
    for x in (0, 1, 2):
        for y in (0, 1, 2):
            expect += (x - y) ** 2 / 2 / 9
    d = pair_square_diff(base)
    assert moments(d).mean == pytest.approx(expect)
    assert moments(d).mean == pytest.approx(moments(base).variance, rel=1e-10)


@settings(max_examples=40, deadline=None)
@given(
    st.lists(st.integers(-12, 12), min_size=1, max_size=6, unique=True),
    st.lists(st.integers(1, 9), min_size=6, max_size=6),
)
def test_pair_square_diff_mean_is_variance(values, weights):
    w = np.array(weights[: len(values)], dtype=float)
    d = make_dist(values, w / w.sum())
    assert moments(pair_square_diff(d)).mean == pytest.approx(
        moments(d).variance, rel=1e-10, abs=1e-12
    )


# -- conditional_above ------------------------------------------------------

def test_conditional_above_middle():
    cond, tail = conditional_above(uniform(1, 2, 3, 4), 2)
    assert tail == 0.5
    assert cond.values.tolist() == [3.0, 4.0]
    assert cond.probs.tolist() == [0.5, 0.5]


def test_conditional_above_empty():
    cond, tail = conditional_above(uniform(1, 2, 3, 4), 4)
    assert cond is None and tail == 0.0


def test_conditional_above_identity():
    d = uniform(1, 2, 3, 4)
    cond, tail = conditional_above(d, -math.inf)
    assert tail == 1.0
    assert cond.values.tolist() == d.values.tolist()


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.integers(-20, 20), min_size=1, max_size=8, unique=True),
    st.lists(st.integers(1, 9), min_size=8, max_size=8),
    st.integers(-21, 21),
)
def test_conditional_tail_is_exact_sum(values, weights, x):
    w = np.array(weights[: len(values)], dtype=float)
    d = make_dist(values, w / w.sum())
    _, tail = conditional_above(d, float(x))
    assert tail == float(np.sum(d.probs[d.values > x]))


# -- sampling ---------------------------------------------------------------

def test_sample_point_mass():
    assert sample(make_dist([7], [1.0]), RandomSource(1)) == 7.0


def test_sample_deterministic_replay():
    d = uniform(1, 2, 3, 4)
    a = [sample(d, RandomSource(42, (3,))) for _ in range(5)]
    b = [sample(d, RandomSource(42, (3,))) for _ in range(5)]
    # fresh equal sources replay; here each call makes a fresh source
    assert a == b


def test_sample_empirical_mean():
    d = uniform(0, 1)
    xs = sample_n(d, RandomSource(7), 100_000)
    assert abs(xs.mean() - 0.5) < 0.005  # ~3 sigma binomial interval


# -- hard instances ---------------------------------------------------------

def test_hard_subgaussian_values():
    p0, p1 = hard_instance_subgaussian(10, 1)
    assert p0.values[-1] == pytest.approx(10.050378152592121, abs=1e-9)
    assert p0.probs[-1] == pytest.approx(0.01)
    gap = moments(p0).mean - moments(p1).mean
    assert gap == pytest.approx(0.20100756305184242, abs=1e-9)
    assert gap > 2 * 1 / 10


@pytest.mark.parametrize("m", [2, 10, 100])
def test_hard_subgaussian_variance_exact(m):
    p0, p1 = hard_instance_subgaussian(m, 1.0)
    assert moments(p0).variance == pytest.approx(1.0, rel=1e-12)
    assert moments(p1).variance == pytest.approx(1.0, rel=1e-12)


def test_hard_subgaussian_rejects_small_m():
    with pytest.raises(ValueError):
        hard_instance_subgaussian(1.0, 1.0)


def test_hard_statebased_values():
    p0, p1, alpha = hard_instance_statebased(10, 1)
    assert alpha == pytest.approx(2 * math.log(1 + math.sqrt(0.9)), abs=1e-12)
    assert p0.values[-1] == pytest.approx(10 / 3)
    assert p0.probs[-1] == pytest.approx(math.exp(alpha) / 10, abs=1e-12)
    assert moments(p1).variance == pytest.approx(1.0, rel=1e-12)
    sigma0 = math.sqrt(moments(p0).variance)
    assert 1.0 <= sigma0 <= 2.0


def test_hard_statebased_rejects_degenerate():
    # small m tilts the spike probability past 1
    with pytest.raises(ValueError):
        hard_instance_statebased(2, 1.0)
