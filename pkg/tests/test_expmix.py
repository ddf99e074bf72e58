"""Core exponential-polynomial mixture algebra against independent oracles:
closed forms, quadrature, finite differences and Monte Carlo."""

import math

import numpy as np
import pytest
from scipy.integrate import quad

from heteroexp import (CancellationError, ExpPolyMix, RateVector, convolve,
                       expo, hypoexponential, mix, moments, scale)


def test_rate_vector_validation():
    rv = RateVector([3.0, 1.0, 2.0])
    assert rv.n == 3
    assert rv.total == pytest.approx(6.0)
    assert rv.ascending() == (1.0, 2.0, 3.0)
    assert rv.without(1).rates == (3.0, 2.0)
    assert not rv.all_equal()
    assert RateVector([2.0, 2.0]).all_equal()
    with pytest.raises(ValueError):
        RateVector([1.0, -2.0])
    with pytest.raises(ValueError):
        RateVector([])


def test_expo_closed_forms():
    d = expo(2.0)
    xs = np.linspace(0.01, 4.0, 23)
    assert np.allclose(d.sf(xs), np.exp(-2.0 * xs), rtol=1e-14)
    assert d.mean() == pytest.approx(0.5, rel=1e-12)
    assert d.var() == pytest.approx(0.25, rel=1e-12)
    assert d.cv() == pytest.approx(1.0, rel=1e-12)
    u = 0.37
    assert d.cdf(d.quantile(u)) == pytest.approx(u, abs=1e-12)


def test_hypoexp_survival_closed_form():
    # rates 1, 2: S(x) = 2 e^-x - e^-2x
    d = hypoexponential([1.0, 2.0])
    xs = np.linspace(0.0, 6.0, 41)
    assert np.allclose(d.sf(xs), 2 * np.exp(-xs) - np.exp(-2 * xs), atol=1e-14)
    assert d.mean() == pytest.approx(1.5, rel=1e-12)
    assert d.var() == pytest.approx(1.25, rel=1e-12)


def test_convolution_against_quadrature():
    a = hypoexponential([1.0, 3.0])
    b = expo(2.0)
    c = convolve(a, b)
    for x in (0.3, 1.0, 2.5):
        num, err = quad(lambda t: a.pdf(t) * b.cdf(x - t), 0.0, x)
        assert c.cdf(x) == pytest.approx(num, abs=1e-10)


def test_convolution_tied_rates_erlang():
    # expo(g) * expo(g) = Erlang(2, g): S(x) = (1 + g x) e^-gx
    g = 1.7
    c = convolve(expo(g), expo(g))
    xs = np.linspace(0.01, 5.0, 17)
    assert np.allclose(c.sf(xs), (1 + g * xs) * np.exp(-g * xs), rtol=1e-13)
    assert c.mean() == pytest.approx(2 / g, rel=1e-12)


def test_convolution_commutes_and_associates():
    a, b, c = expo(1.0), expo(2.5), hypoexponential([0.7, 4.0])
    xs = np.linspace(0.1, 8.0, 19)
    ab = convolve(a, b)
    ba = convolve(b, a)
    assert np.allclose(ab.cdf(xs), ba.cdf(xs), atol=1e-13)
    left = convolve(ab, c)
    right = convolve(a, convolve(b, c))
    assert np.allclose(left.cdf(xs), right.cdf(xs), atol=1e-12)


def test_pdf_matches_finite_differences():
    d = hypoexponential([1.0, 2.0, 5.0])
    h = 1e-6
    for x in (0.2, 0.9, 2.2):
        fd = (d.cdf(x + h) - d.cdf(x - h)) / (2 * h)
        assert d.pdf(x) == pytest.approx(fd, rel=1e-7)


def test_hazard_is_pdf_over_sf():
    d = hypoexponential([1.0, 3.0])
    for x in (0.5, 2.0):
        assert d.hazard(x) == pytest.approx(d.pdf(x) / d.sf(x), rel=1e-12)


def test_scale():
    d = scale(expo(1.0), 0.5)  # X/2 ~ expo(2)
    xs = np.linspace(0.1, 3.0, 9)
    assert np.allclose(d.sf(xs), np.exp(-2 * xs), rtol=1e-13)


def test_mix_weights_and_values():
    d = mix([(0.3, expo(1.0)), (0.7, expo(4.0))])
    x = 0.8
    assert d.sf(x) == pytest.approx(0.3 * math.exp(-x) + 0.7 * math.exp(-4 * x),
                                    rel=1e-13)
    with pytest.raises(ValueError):
        mix([(0.3, expo(1.0)), (0.4, expo(4.0))])


def test_moments_against_monte_carlo():
    d = hypoexponential([1.0, 2.0, 4.0])
    rng = np.random.default_rng(7)
    draws = (rng.exponential(1.0, 200000) + rng.exponential(0.5, 200000)
             + rng.exponential(0.25, 200000))
    se = np.std(draws) / math.sqrt(draws.size)
    assert abs(d.mean() - np.mean(draws)) < 4 * se
    m2 = moments(d, 2)
    se2 = np.std(draws ** 2) / math.sqrt(draws.size)
    assert abs(m2 - np.mean(draws ** 2)) < 4 * se2


def test_normalization_enforced():
    with pytest.raises(CancellationError):
        ExpPolyMix([(1.0, (0.5,))])  # S(0) = 0.5, not a distribution


def test_rate_clustering_merges_near_ties():
    d = ExpPolyMix([(1.0, (0.5,)), (1.0 + 1e-12, (0.5,))])
    assert d.n_terms == 1
    xs = np.linspace(0.1, 3.0, 5)
    assert np.allclose(d.sf(xs), np.exp(-xs), rtol=1e-9)


def test_quantile_roundtrip_deep():
    d = hypoexponential([1.0, 2.0])
    for u in (1e-6, 1e-3, 0.5, 0.999, 1 - 1e-9):
        x = d.quantile(u)
        assert d.cdf(x) == pytest.approx(u, abs=1e-10)
    with pytest.raises(ValueError):
        d.quantile(1.5)


def test_quantile_sf_tail_accuracy():
    d = expo(1.0)
    s = 1e-14
    assert d.quantile_sf(s) == pytest.approx(-math.log(s), rel=1e-10)
