# %% [markdown]
# Exact distributions of exponential order statistics
# ===================================================
#
# Take n independent exponential lifetimes with different rates.  The k-th
# smallest of them (the lifetime of an (n-k+1)-out-of-n system) has a
# distribution whose survival function is a finite mixture of exponentials.
# This script builds that distribution three independent ways and shows
# they agree to machine precision.

# %%
import numpy as np

from heteroexp import (OrderStatSpec, PointwiseOrderStat, RateVector,
                       SpacingSpec, build_order_stat_direct,
                       build_order_stat_lemma2, build_spacing,
                       eval_cdf_poisson_binomial)

rates = RateVector([0.5, 1.0, 2.0, 4.0])
n = rates.n
print(f"rates = {rates.rates}, total = {rates.total}")

# %% Route 1: direct subset expansion of P(at least k components down by x).
# Route 2: the recursive representation -- expo(total rate) convolved with a
# rate-weighted mixture of leave-one-out order statistics.
# Route 3: a Poisson-binomial counting DP evaluated pointwise (never forms
# the symbolic expansion at all, so it has no cancellation).
memo = {}
xs = np.linspace(0.05, 4.0, 9)
for k in range(2, n + 1):
    spec = OrderStatSpec(k, n, rates)
    direct = build_order_stat_direct(spec)
    recursive = build_order_stat_lemma2(spec, memo)
    pb = eval_cdf_poisson_binomial(spec, xs)
    gap12 = np.max(np.abs(direct.cdf(xs) - recursive.cdf(xs)))
    gap13 = np.max(np.abs(direct.cdf(xs) - pb))
    print(f"k={k}: direct vs recursive {gap12:.2e}, direct vs counting DP {gap13:.2e}")

# %% The symbolic object supports the usual operations exactly.
d = build_order_stat_direct(OrderStatSpec(2, n, rates))
print(f"\nX_(2:4): mean {d.mean():.6f}, variance {d.var():.6f}, cv {d.cv():.6f}")
print(f"median {d.quantile(0.5):.6f}, 99.9% point {d.quantile(0.999):.6f}")

# %% Spacings X_{k:n} - X_{m:n} are mixtures over which components fail
# first; the mixture weights come from a subset DP over failure orders.
sp = build_spacing(SpacingSpec(1, 3, n, rates))
print(f"\nspacing X_(3:4) - X_(1:4): mean {sp.mean():.6f}, cv {sp.cv():.6f}")

# %% Deep tails: the symbolic expansion loses relative accuracy near 0
# (the CDF there is a tiny difference of large terms), while the counting
# DP keeps full relative accuracy arbitrarily deep.
spec = OrderStatSpec(3, n, rates)
X = PointwiseOrderStat(spec)
for x in (1e-2, 1e-4, 1e-6, 1e-8):
    exact_lead = 15.0 * x ** 3  # s_3(rates) = 15
    print(f"x={x:8.0e}  F(x) = {X.cdf(np.array([x]))[0]:.6e}   "
          f"s_3 x^3 = {exact_lead:.6e}")
print("\nthe leading small-x coefficient is the 3rd elementary symmetric "
      "function of the rates -- the quantity the comparison thresholds are "
      "built from.")
