"""Vectorized inversion of monotone CDF/survival evaluators.

Geometric bisection on (0, inf): the midpoint is the geometric mean of the
bracket, so relative accuracy is uniform across many orders of magnitude in
x.  This matters for scans that probe quantiles as deep as u ~ 1e-30.
"""

from __future__ import annotations

import numpy as np

_LO_FACTOR = 1e-45
_MAX_EXPAND = 80
_ITERS = 110


def _solve(pred_ge_target, x_scale, m):
    """Find x where pred flips; pred_ge_target(x) -> bool array ("x is large
    enough").  Returns the bracket midpoint after geometric bisection."""
    lo = np.full(m, x_scale * _LO_FACTOR)
    hi = np.full(m, max(x_scale, 1e-30))
    for _ in range(_MAX_EXPAND):
        ok = pred_ge_target(hi)
        if ok.all():
            break
        hi = np.where(ok, hi, hi * 8.0)
    else:
        raise RuntimeError("bracket expansion failed in monotone inversion")
    for _ in range(_ITERS):
        mid = np.sqrt(lo * hi)
        ok = pred_ge_target(mid)
        hi = np.where(ok, mid, hi)
        lo = np.where(ok, lo, mid)
    return np.sqrt(lo * hi)


def invert_cdf(cdf, u, x_scale):
    """x with cdf(x) = u for each u in (0,1); cdf must be vectorized."""
    u = np.asarray(u, dtype=float)
    scalar = u.ndim == 0
    uu = np.atleast_1d(u)
    if np.any((uu <= 0.0) | (uu >= 1.0)):
        raise ValueError("quantile levels must lie in (0,1)")
    x = _solve(lambda t: cdf(t) >= uu, x_scale, uu.size)
    return float(x[0]) if scalar else x


def invert_sf(sf, s, x_scale):
    """x with sf(x) = s for each s in (0,1); solved on the survival side so
    tail quantiles keep full relative accuracy."""
    s = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any((s <= 0.0) | (s >= 1.0)):
        raise ValueError("survival levels must lie in (0,1)")
    return _solve(lambda t: sf(t) <= s, x_scale, s.size)
