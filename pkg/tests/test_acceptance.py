"""Acceptance criteria: property-based certification at desk scale.

Each test prints exactly one PASS/FAIL line for its criterion (run pytest
with -s, configured in pyproject, to see them inline)."""

import math

import numpy as np
import pytest

from heteroexp import (HomogeneousRate, OrderStatSpec, PointwiseOrderStat,
                       RateVector, SpacingSpec, build_order_stat_direct,
                       build_spacing, elem_sym, empirical_cv, ks_test,
                       maclaurin_chain, random_instances, sample_order_stat,
                       sample_spacing)
from heteroexp.orderstats import eval_cdf_poisson_binomial
from heteroexp.suites import (suite_coro1, suite_lemma2, suite_lemma3,
                              suite_lemma4, suite_prop1, suite_thm1,
                              suite_thm2)

SEED = 0
INSTANCES = 100
N_MAX = 8


def report(num, desc, ok, detail):
    status = "PASS" if ok else "FAIL"
    print(f"[criterion {num:2d}] {desc}: {status} ({detail})")
    assert ok, f"criterion {num} failed: {detail}"


@pytest.fixture(scope="module")
def instances():
    return random_instances(SEED, INSTANCES, 2, N_MAX)


def test_criterion_1_lemma2_certification():
    res = suite_lemma2(seed=SEED, instances=INSTANCES, n_max=N_MAX)
    ok = res.passed and res.elapsed <= 60.0
    report(1, "recursive construction certification",
           ok, f"{res.n_checks} checks, max CDF gap {res.worst_margin:.2e}, "
               f"{res.elapsed:.1f}s")


def test_criterion_2_star_order():
    res = suite_thm2(seed=SEED, instances=INSTANCES, n_max=N_MAX)
    report(2, "star order with scale-invariant verdicts",
           res.passed, f"{res.n_checks} checks, {res.n_failures} failures, "
                       f"worst margin {res.worst_margin:.2e}")


def test_criterion_3_threshold_boundary():
    res = suite_thm1(seed=SEED, instances=INSTANCES, n_max=N_MAX)
    report(3, "st/hr/disp boundary at the critical rate",
           res.passed, f"{res.n_checks} checks, {res.n_failures} failures, "
                       f"worst held margin {res.worst_margin:.2e}")


def test_criterion_4_spacing_thresholds():
    res = suite_prop1(seed=SEED, instances=INSTANCES, n_max=N_MAX)
    report(4, "spacing thresholds vs enumeration and range closed form",
           res.passed, f"{res.n_checks} checks, {res.n_failures} failures")


def test_criterion_5_spacing_star():
    res = suite_coro1(seed=SEED, instances=INSTANCES, n_max=N_MAX)
    report(5, "star order between spacings",
           res.passed, f"{res.n_checks} checks, worst margin {res.worst_margin:.2e}")


def test_criterion_6_single_crossing():
    res = suite_lemma4(seed=SEED, pairs=200)
    report(6, "single-crossing certification and predicate match",
           res.passed, f"{res.n_checks} checks, {res.n_failures} failures")


def test_criterion_7_submajorization_st():
    res = suite_lemma3(seed=SEED, pairs=500)
    report(7, "weak log-submajorization implies st",
           res.passed, f"{res.n_checks} pairs, {res.n_failures} failures, "
                       f"worst margin {res.worst_margin:.2e}")


def test_criterion_8_monte_carlo():
    draws = 10 ** 5
    n_fail_ks = 0
    n_fail_cv = 0
    n_dists = 0
    for idx, rv in enumerate(random_instances(20260826, 3, 3, 5)):
        n = rv.n
        for k in range(1, n + 1):
            spec = OrderStatSpec(k, n, rv)
            batch = sample_order_stat(spec, draws, seed=1000 + idx * 10 + k)
            n_dists += 1
            if not ks_test(batch, build_order_stat_direct(spec)).passed:
                n_fail_ks += 1
            # cv ordering against the homogeneous counterpart (scale free)
            hom = OrderStatSpec(k, n, HomogeneousRate(1.0))
            hbatch = sample_order_stat(hom, draws, seed=500 + idx * 10 + k)
            blocks = np.array_split(batch.draws, 10)
            cvs = [np.std(b) / np.mean(b) for b in blocks]
            se = np.std(cvs) / math.sqrt(len(cvs))
            if empirical_cv(batch) < empirical_cv(hbatch) - 4 * se:
                n_fail_cv += 1
        for m, k in {(1, n), (1, 2), (n - 1, n)}:
            spec = SpacingSpec(m, k, n, rv)
            batch = sample_spacing(spec, draws, seed=900 + idx * 10 + k)
            n_dists += 1
            if not ks_test(batch, build_spacing(spec)).passed:
                n_fail_ks += 1
    ok = n_fail_ks == 0 and n_fail_cv == 0
    report(8, "Monte Carlo KS and cv-ordering cross-validation",
           ok, f"{n_dists} distributions, {n_fail_ks} KS failures, "
               f"{n_fail_cv} cv violations")


def test_criterion_9_small_x_expansion(instances):
    worst = 0.0
    n_checks = 0
    for rv in instances:
        if rv.n > 6:
            continue
        for i in range(rv.n):
            sub = rv.without(i)
            s_sub = elem_sym(sub)
            for k in range(1, rv.n):
                X = PointwiseOrderStat(OrderStatSpec(k, rv.n - 1, sub))
                x1, x2 = 1e-4, 2e-4
                c1 = X.cdf(np.array([x1]))[0] / x1 ** k
                c2 = X.cdf(np.array([x2]))[0] / x2 ** k
                fitted = 2 * c1 - c2  # Richardson: cancels the O(x) term
                rel = abs(fitted - s_sub[k]) / s_sub[k]
                worst = max(worst, rel)
                n_checks += 1
    ok = worst < 0.01
    report(9, "small-x leading coefficient matches s_k of the sub-sample",
           ok, f"{n_checks} fits, worst relative error {worst:.2e}")


def test_criterion_10_numerical_hygiene(instances):
    worst_gap = 0.0
    mac_ok = True
    for rv in instances:
        ch = maclaurin_chain(rv)
        if not all(a >= b - 1e-12 * a for a, b in zip(ch, ch[1:])):
            mac_ok = False
        for k in range(1, rv.n + 1):
            spec = OrderStatSpec(k, rv.n, rv)
            d = build_order_stat_direct(spec)
            xs = np.linspace(d.quantile(1e-4), d.quantile(1 - 1e-6), 256)
            gap = float(np.max(np.abs(d.cdf(xs) - eval_cdf_poisson_binomial(spec, xs))))
            worst_gap = max(worst_gap, gap)
    ok = worst_gap < 1e-9 and mac_ok
    report(10, "pointwise vs symbolic agreement and Maclaurin monotonicity",
           ok, f"max gap {worst_gap:.2e}, chain monotone: {mac_ok}")
