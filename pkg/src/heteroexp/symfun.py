"""Elementary symmetric functions, Maclaurin means and comparison thresholds.

The critical homogeneous rate for the k-th order statistic is
(s_k / C(n,k))^(1/k); for spacings the analogous quantity involves a sum
over ordered m-subsets which is reorganized here into a subset DP so that
it stays feasible well beyond the reach of raw permutation enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .expmix import RateVector

MAX_N_DP = 20


def _as_rates(rates):
    return rates if isinstance(rates, RateVector) else RateVector(rates)


def elem_sym(rates):
    """All elementary symmetric functions s_0..s_n of the rates.

    One-pass coefficient recurrence for prod_i (1 + r_i t); all additions are
    of nonnegative numbers, so there is no cancellation."""
    rv = _as_rates(rates)
    s = [0.0] * (rv.n + 1)
    s[0] = 1.0
    for i, r in enumerate(rv.rates):
        for j in range(min(i + 1, rv.n), 0, -1):
            s[j] += r * s[j - 1]
    if not all(math.isfinite(v) for v in s):
        raise OverflowError("elementary symmetric functions overflowed")
    return s


def maclaurin_chain(rates):
    """Maclaurin means M_k = (s_k / C(n,k))^(1/k), k = 1..n (nonincreasing)."""
    rv = _as_rates(rates)
    s = elem_sym(rv)
    n = rv.n
    return [(s[k] / math.comb(n, k)) ** (1.0 / k) for k in range(1, n + 1)]


@dataclass(frozen=True)
class ThresholdReport:
    """Critical homogeneous rate for an order statistic or spacing, plus the
    induction-step quantities tau_star / tau_low when they apply."""

    rates: tuple
    n: int
    k: int
    m: int | None
    critical_gamma: float
    tau_star: float | None
    tau_low: float | None
    method: str


def threshold_order_stat(rates, k):
    """Critical gamma = (s_k / C(n,k))^(1/k) for the k-th order statistic.

    tau_star and tau_low are the upper/lower rates bracketing the band in
    which the homogeneous construction crosses the heterogeneous mixture in
    the k -> k+1 induction step; they do not apply for k = n."""
    rv = _as_rates(rates)
    n = rv.n
    if not 1 <= k <= n:
        raise ValueError(f"k must be in 1..{n}, got {k}")
    s = elem_sym(rv)
    crit = (s[k] / math.comb(n, k)) ** (1.0 / k)
    if k == n:
        tau_star = tau_low = None
    else:
        lam = rv.total
        tau_star = (n * s[k + 1] / lam / math.comb(n, k + 1)) ** (1.0 / k)
        asc = rv.ascending()
        tau_low = math.fsum(asc[: n - k]) / (n - k)
    return ThresholdReport(rv.rates, n, k, None, crit, tau_star, tau_low, "eq1")


def ordering_weights(rates, m):
    """Weights W(R) of the spacing mixture, one per unordered m-subset R.

    W(R) sums prod_j lam_{r_j} / (Lambda - sum_{i<j} lam_{r_i}) over all
    orderings of R.  Computed by a DP over subsets of R, peeling the last
    element of the ordering; cost C(n,m) * 2^m * m.  Returns a list of
    (index_tuple, weight) pairs; the weights sum to 1 when m < n."""
    rv = _as_rates(rates)
    n = rv.n
    if n > MAX_N_DP:
        raise ValueError(f"n = {n} exceeds DP cap {MAX_N_DP}")
    if not 1 <= m < n:
        raise ValueError(f"m must be in 1..{n - 1}, got {m}")
    lam = rv.rates
    total = rv.total
    out = []
    for R in combinations(range(n), m):
        # h[mask] = ordered weight sum over the sub-multiset encoded by mask
        h = [0.0] * (1 << m)
        h[0] = 1.0
        sums = [0.0] * (1 << m)
        for mask in range(1, 1 << m):
            low = (mask & -mask).bit_length() - 1
            sums[mask] = sums[mask ^ (1 << low)] + lam[R[low]]
            acc = 0.0
            for j in range(m):
                bit = 1 << j
                if mask & bit:
                    lj = lam[R[j]]
                    acc += h[mask ^ bit] * lj / (total - (sums[mask] - lj))
            h[mask] = acc
        out.append((R, h[(1 << m) - 1]))
    return out


def threshold_spacing(rates, m, k):
    """Critical gamma for the spacing X_{k:n} - X_{m:n} versus the
    homogeneous spacing: (RHS / C(n-m, k-m))^(1/(k-m)) where RHS groups the
    ordered-subset sum by unordered subsets with DP weights."""
    rv = _as_rates(rates)
    n = rv.n
    if not 1 <= m < k <= n:
        raise ValueError(f"need 1 <= m < k <= n, got m={m}, k={k}, n={n}")
    lam = rv.rates
    pieces = []
    for R, w in ordering_weights(rv, m):
        rest = [lam[i] for i in range(n) if i not in R]
        pieces.append(w * elem_sym(RateVector(rest))[k - m])
    rhs = math.fsum(pieces)
    crit = (rhs / math.comb(n - m, k - m)) ** (1.0 / (k - m))
    return ThresholdReport(rv.rates, n, k, m, crit, None, None, "eq2")


def threshold_range(rates):
    """Closed-form critical gamma for the sample range (m=1, k=n):
    (prod(lam) / (Lambda/n))^(1/(n-1))."""
    rv = _as_rates(rates)
    n = rv.n
    if n < 2:
        raise ValueError("range threshold needs n >= 2")
    crit = (math.prod(rv.rates) / (rv.total / n)) ** (1.0 / (n - 1))
    return ThresholdReport(rv.rates, n, n, 1, crit, None, None, "range-closed-form")
