"""Monte Carlo sampling and KS harness."""

import math

import numpy as np
import pytest

from heteroexp import (HomogeneousRate, OrderStatSpec, RateVector, SampleBatch,
                       SpacingSpec, build_order_stat_direct, build_spacing,
                       empirical_cv, expo, ks_distance, ks_test,
                       sample_order_stat, sample_spacing)


def test_determinism_per_seed():
    spec = OrderStatSpec(2, 3, RateVector([1.0, 2.0, 3.0]))
    a = sample_order_stat(spec, 1000, seed=5)
    b = sample_order_stat(spec, 1000, seed=5)
    c = sample_order_stat(spec, 1000, seed=6)
    assert np.array_equal(a.draws, b.draws)
    assert not np.array_equal(a.draws, c.draws)


def test_minimum_mean():
    # min of expo(1), expo(2), expo(3) is expo(6): mean 1/6
    spec = OrderStatSpec(1, 3, RateVector([1.0, 2.0, 3.0]))
    batch = sample_order_stat(spec, 10 ** 6, seed=0)
    se = np.std(batch.draws) / math.sqrt(batch.draws.size)
    assert abs(np.mean(batch.draws) - 1 / 6) < 4 * se


def test_empirical_cdf_value():
    # max of expo(1), expo(2) at x=1: (1-e^-1)(1-e^-2)
    spec = OrderStatSpec(2, 2, RateVector([1.0, 2.0]))
    batch = sample_order_stat(spec, 10 ** 5, seed=1)
    want = (1 - math.exp(-1)) * (1 - math.exp(-2))
    got = np.mean(batch.draws <= 1.0)
    assert got == pytest.approx(want, abs=4 * math.sqrt(want * (1 - want) / 10 ** 5))


def test_ks_pass_under_null():
    spec = OrderStatSpec(2, 3, RateVector([0.5, 1.5, 4.0]))
    batch = sample_order_stat(spec, 10 ** 5, seed=2)
    res = ks_test(batch, build_order_stat_direct(spec))
    assert res.passed
    assert res.critical == pytest.approx(1.628 / math.sqrt(10 ** 5))


def test_ks_detects_wrong_rate():
    # expo(1) sample vs expo(2) model: sup gap = sup|e^-x - e^-2x| = 0.25
    batch = SampleBatch(np.random.default_rng(3).exponential(1.0, 10 ** 5), 3, "expo(1)")
    d = ks_distance(batch, expo(2.0))
    assert d == pytest.approx(0.25, abs=0.01)
    assert not ks_test(batch, expo(2.0)).passed


def test_ks_single_draw_bounds():
    batch = SampleBatch(np.array([0.7]), 0, "one draw")
    assert 0.0 <= ks_distance(batch, expo(1.0)) <= 1.0


def test_spacing_homogeneous_memoryless():
    # iid n=2: X_{2:2} - X_{1:2} ~ expo(gamma)
    spec = SpacingSpec(1, 2, 2, HomogeneousRate(3.0))
    batch = sample_spacing(spec, 10 ** 5, seed=4)
    assert ks_test(batch, expo(3.0)).passed


def test_spacing_matches_exact_mixture():
    spec = SpacingSpec(1, 2, 2, RateVector([1.0, 2.0]))
    batch = sample_spacing(spec, 10 ** 5, seed=5)
    exact = build_spacing(spec)
    assert ks_test(batch, exact).passed
    se = np.std(batch.draws) / math.sqrt(batch.draws.size)
    assert abs(np.mean(batch.draws) - exact.mean()) < 4 * se


def test_empirical_cv():
    batch = SampleBatch(np.random.default_rng(6).exponential(1.0, 10 ** 5), 6, "expo(1)")
    assert empirical_cv(batch) == pytest.approx(1.0, abs=0.02)
