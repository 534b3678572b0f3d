"""Seeded stream derivation, Wilson intervals, chi-squared uniformity."""

import math

import pytest
from hypothesis import given, strategies as st

from sumrank.montecarlo import (DEFAULT_MASTER_SEED, EstimateResult,
                                RandomStream, chi_squared_uniform_pvalue,
                                wilson_interval)


def test_same_key_same_draws():
    a = RandomStream(1, "alpha", 3)
    b = RandomStream(1, "alpha", 3)
    assert [a.random() for _ in range(5)] == [b.random() for _ in range(5)]


def test_different_keys_differ():
    draws = {tuple(RandomStream(seed, tag).randrange(2 ** 62) for _ in range(3))
             for seed in (1, 2) for tag in ("x", "y")}
    assert len(draws) == 4


def test_child_streams_are_independent_of_creation_order():
    parent = RandomStream(42, "exp")
    forward = [parent.child(i).random() for i in range(4)]
    parent2 = RandomStream(42, "exp")
    backward = [parent2.child(i).random() for i in reversed(range(4))]
    assert forward == list(reversed(backward))


def test_child_extends_key():
    s = RandomStream(7, "a")
    assert s.child(2, "b").key == (7, "a", 2, "b")


def test_drawing_from_parent_does_not_shift_children():
    p1 = RandomStream(9, "t")
    p1.random()
    p2 = RandomStream(9, "t")
    assert p1.child(0).random() == p2.child(0).random()


def test_default_master_seed_is_fixed():
    assert DEFAULT_MASTER_SEED == 1729


def test_wilson_interval_frozen():
    low, high = wilson_interval(50, 100)
    assert abs(low - 0.40383) < 5e-5
    assert abs(high - 0.59617) < 5e-5
    low, high = wilson_interval(0, 100)
    assert low == 0.0 and 0 < high < 0.05
    low, high = wilson_interval(100, 100)
    assert high == 1.0 and 0.95 < low < 1


@given(st.integers(min_value=1, max_value=10 ** 6), st.data())
def test_wilson_interval_brackets_estimate(trials, data):
    successes = data.draw(st.integers(min_value=0, max_value=trials))
    low, high = wilson_interval(successes, trials)
    assert 0.0 <= low <= successes / trials <= high <= 1.0


def test_estimate_result_from_counts():
    est = EstimateResult.from_counts(30, 200)
    assert est.estimate == 0.15
    assert est.ci_low < 0.15 < est.ci_high
    assert est.mean_value is None


def test_separated_below():
    a = EstimateResult.from_counts(10, 1000)
    b = EstimateResult.from_counts(500, 1000)
    assert a.separated_below(b)
    assert not b.separated_below(a)
    assert not a.separated_below(a)


def test_chi_squared_uniform_counts_give_p_one():
    assert chi_squared_uniform_pvalue([10] * 10) == pytest.approx(1.0)


def test_chi_squared_frozen_value():
    # two cells, statistic (5-10)^2/10 * 2 = 5, one degree of freedom:
    # p = erfc(sqrt(5/2))
    p = chi_squared_uniform_pvalue([5, 15])
    assert p == pytest.approx(math.erfc(math.sqrt(2.5)), rel=1e-9)


def test_chi_squared_detects_gross_skew():
    assert chi_squared_uniform_pvalue([1000, 10]) < 1e-6


def test_chi_squared_rejects_degenerate_input():
    with pytest.raises(ValueError):
        chi_squared_uniform_pvalue([7])
    with pytest.raises(ValueError):
        chi_squared_uniform_pvalue([0, 0])
