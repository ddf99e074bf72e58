"""Exact distributions, comparison thresholds and stochastic-order checks
for order statistics and spacings of heterogeneous exponential samples."""

from .expmix import (CancellationError, CapExceededError, ExpPolyMix,
                     HomogeneousRate, QuantileError, RateVector, convolve, cv,
                     eval_cdf, eval_hazard, eval_pdf, expo, hypoexponential,
                     mix, moments, quantile, scale)
from .mc import (KSResult, SampleBatch, empirical_cv, ks_distance, ks_test,
                 sample_order_stat, sample_spacing)
from .orders import (CrossingReport, OrderVerdict, check_disp, check_hr,
                     check_lorenz, check_single_crossing_config, check_st,
                     check_star, check_weak_log_submajorization,
                     count_crossings, verify_single_crossing)
from .orderstats import (OrderStatSpec, PointwiseMixture, PointwiseOrderStat,
                         PointwiseSpacing, SpacingSpec, build_order_stat_direct,
                         build_order_stat_lemma2, build_spacing,
                         eval_cdf_poisson_binomial)
from .suites import SUITES, SuiteResult, random_instances, run_suite
from .symfun import (ThresholdReport, elem_sym, maclaurin_chain,
                     ordering_weights, threshold_order_stat, threshold_range,
                     threshold_spacing)

__version__ = "0.1.0"

__all__ = [
    "CancellationError", "CapExceededError", "CrossingReport", "ExpPolyMix",
    "HomogeneousRate", "KSResult", "OrderStatSpec", "OrderVerdict",
    "PointwiseMixture", "PointwiseOrderStat", "PointwiseSpacing",
    "QuantileError", "RateVector", "SUITES", "SampleBatch", "SpacingSpec",
    "SuiteResult", "ThresholdReport", "build_order_stat_direct",
    "build_order_stat_lemma2", "build_spacing", "check_disp", "check_hr",
    "check_lorenz", "check_single_crossing_config", "check_st", "check_star",
    "check_weak_log_submajorization", "convolve", "count_crossings", "cv",
    "elem_sym", "empirical_cv", "eval_cdf", "eval_cdf_poisson_binomial",
    "eval_hazard", "eval_pdf", "expo", "hypoexponential", "ks_distance",
    "ks_test", "maclaurin_chain", "mix", "moments", "ordering_weights",
    "quantile", "random_instances", "run_suite", "sample_order_stat",
    "sample_spacing", "scale", "threshold_order_stat", "threshold_range",
    "threshold_spacing",
]
