"""Exponential-polynomial mixture distributions.

The canonical object is the survival function

    S(x) = sum_j p_j(x) * exp(-mu_j * x),   x >= 0,

with distinct positive rates mu_j and real polynomial coefficients.  The
class is closed under convolution, finite mixtures and positive scaling,
which is exactly what is needed to represent order statistics and spacings
of independent exponential lifetimes.  The survival function (rather than
the CDF) is stored because hazard and survival-ratio computations divide
by S and the representation then has no constant term to cancel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# canonicalization / hygiene knobs
RATE_TIE_RTOL = 1e-9
MAX_TERMS = 4096
MAX_DEGREE = 64
CDF_CLAMP_SLACK = 1e-12
SF_UNDERFLOW = 1e-300


class CancellationError(ArithmeticError):
    """Coefficient cancellation produced a value outside numerical slack."""


class CapExceededError(RuntimeError):
    """Symbolic representation grew past the configured desk-scale caps."""


class QuantileError(RuntimeError):
    """Quantile iteration failed to converge (malformed distribution)."""


@dataclass(frozen=True)
class RateVector:
    """Positive exponential rates of a heterogeneous sample."""

    rates: tuple

    def __init__(self, rates):
        rates = tuple(float(r) for r in rates)
        if len(rates) < 1:
            raise ValueError("need at least one rate")
        for r in rates:
            if not (r > 0.0 and math.isfinite(r)):
                raise ValueError(f"rates must be positive and finite, got {r}")
        object.__setattr__(self, "rates", rates)

    @property
    def n(self):
        return len(self.rates)

    @property
    def total(self):
        return math.fsum(self.rates)

    def ascending(self):
        return tuple(sorted(self.rates))

    def without(self, i):
        return RateVector(self.rates[:i] + self.rates[i + 1:])

    def all_equal(self, rtol=RATE_TIE_RTOL):
        lo, hi = min(self.rates), max(self.rates)
        return hi - lo <= rtol * hi

    def __len__(self):
        return len(self.rates)

    def __iter__(self):
        return iter(self.rates)


@dataclass(frozen=True)
class HomogeneousRate:
    """Common rate of a homogeneous exponential sample."""

    gamma: float

    def __post_init__(self):
        if not (self.gamma > 0.0 and math.isfinite(self.gamma)):
            raise ValueError(f"gamma must be positive and finite, got {self.gamma}")


def _cluster_rates(mus):
    """Group near-identical rates; returns (representatives, index map)."""
    order = sorted(range(len(mus)), key=lambda i: mus[i])
    reps = []
    idx = [0] * len(mus)
    for i in order:
        mu = mus[i]
        if reps and mu - reps[-1] <= RATE_TIE_RTOL * mu:
            idx[i] = len(reps) - 1
        else:
            reps.append(mu)
            idx[i] = len(reps) - 1
    return reps, idx


class ExpPolyMix:
    """Distribution on [0, inf) whose survival function is a finite sum of
    polynomial-times-exponential terms.  Immutable after construction."""

    __slots__ = ("_mus", "_coeffs", "_abs_noise")

    def __init__(self, terms, _renormalize=True):
        mus = []
        polys = []
        for mu, coeffs in terms:
            mu = float(mu)
            if not (mu > 0.0 and math.isfinite(mu)):
                raise ValueError(f"term rate must be positive and finite, got {mu}")
            mus.append(mu)
            polys.append([float(c) for c in coeffs])
        reps, idx = _cluster_rates(mus)
        merged = [dict() for _ in reps]
        for j, p in enumerate(polys):
            tgt = merged[idx[j]]
            for i, c in enumerate(p):
                tgt.setdefault(i, []).append(c)
        out_mus = []
        out_coeffs = []
        for mu, bucket in zip(reps, merged):
            if not bucket:
                continue
            deg = max(bucket)
            if deg > MAX_DEGREE:
                raise CapExceededError(f"polynomial degree {deg} exceeds cap {MAX_DEGREE}")
            c = [math.fsum(bucket.get(i, [0.0])) for i in range(deg + 1)]
            while len(c) > 1 and c[-1] == 0.0:
                c.pop()
            if all(v == 0.0 for v in c):
                continue
            out_mus.append(mu)
            out_coeffs.append(c)
        if len(out_mus) > MAX_TERMS:
            raise CapExceededError(f"{len(out_mus)} terms exceed cap {MAX_TERMS}")
        if not out_mus:
            raise ValueError("empty representation")
        if _renormalize:
            # S(0) must equal 1 exactly; distribute the (tiny) closure deficit
            # onto the dominant constant coefficient, refuse large deficits.
            total0 = math.fsum(c[0] for c in out_coeffs)
            deficit = 1.0 - total0
            if abs(deficit) > 1e-8:
                raise CancellationError(f"S(0) = {total0}, too far from 1")
            j = max(range(len(out_coeffs)), key=lambda i: abs(out_coeffs[i][0]))
            out_coeffs[j][0] += deficit
        self._mus = np.array(out_mus)
        self._coeffs = tuple(tuple(c) for c in out_coeffs)
        self._abs_noise = 32.0 * np.finfo(float).eps * math.fsum(
            abs(v) * max(1.0, (i / (math.e * mu)) ** i)
            for mu, c in zip(out_mus, out_coeffs)
            for i, v in enumerate(c)
        )

    # -- representation access -------------------------------------------

    @property
    def terms(self):
        """Survival terms as ((mu, coeffs), ...) with coeffs low-to-high degree."""
        return tuple(zip(self._mus.tolist(), self._coeffs))

    @property
    def n_terms(self):
        return len(self._coeffs)

    @property
    def abs_noise(self):
        """Rough absolute evaluation noise floor of the representation."""
        return self._abs_noise

    @property
    def min_rate(self):
        return float(self._mus[0])

    def __repr__(self):
        return f"ExpPolyMix({self.n_terms} terms, rates {self._mus[0]:.4g}..{self._mus[-1]:.4g})"

    @classmethod
    def expo(cls, rate):
        """Exponential distribution with the given rate."""
        return cls([(rate, (1.0,))])

    # -- evaluation -------------------------------------------------------

    def sf(self, x):
        """Survival function; vectorized, S(x) = 1 for x <= 0."""
        if np.ndim(x) == 0:
            return self._sf_scalar(float(x))
        x = np.asarray(x, dtype=float)
        out = np.zeros_like(x)
        for mu, c in zip(self._mus, self._coeffs):
            if len(c) == 1:
                p = c[0]
            else:
                p = np.polynomial.polynomial.polyval(x, c)
            out += p * np.exp(-mu * x)
        return np.where(x <= 0.0, 1.0, out)

    def _sf_scalar(self, x):
        if x <= 0.0:
            return 1.0
        parts = []
        for mu, c in zip(self._mus, self._coeffs):
            e = math.exp(-mu * x)
            xp = 1.0
            for v in c:
                parts.append(v * xp * e)
                xp *= x
        return math.fsum(parts)

    def cdf(self, x):
        """CDF.  Values outside [0,1] by more than the numerical slack raise
        CancellationError instead of being silently clamped."""
        v = 1.0 - self.sf(x) if np.ndim(x) == 0 else 1.0 - self.sf(x)
        if np.ndim(v) == 0:
            return self._clamp_scalar(v)
        bad = (v < -CDF_CLAMP_SLACK) | (v > 1.0 + CDF_CLAMP_SLACK)
        if np.any(bad):
            raise CancellationError(f"cdf value {v[bad][0]} outside [0,1] beyond slack")
        return np.clip(v, 0.0, 1.0)

    @staticmethod
    def _clamp_scalar(v):
        if v < -CDF_CLAMP_SLACK or v > 1.0 + CDF_CLAMP_SLACK:
            raise CancellationError(f"cdf value {v} outside [0,1] beyond slack")
        return min(1.0, max(0.0, v))

    def pdf(self, x):
        """Density, -S'(x); term-wise limits define pdf at x = 0."""
        scalar = np.ndim(x) == 0
        xa = np.asarray(x, dtype=float)
        out = np.zeros_like(xa)
        for mu, c in zip(self._mus, self._coeffs):
            # -d/dx [p(x) e^(-mu x)] = (mu p(x) - p'(x)) e^(-mu x)
            d = [mu * c[i] - (i + 1) * c[i + 1] if i + 1 < len(c) else mu * c[i]
                 for i in range(len(c))]
            if len(d) == 1:
                p = d[0]
            else:
                p = np.polynomial.polynomial.polyval(xa, d)
            out = out + p * np.exp(-mu * xa)
        out = np.where(xa < 0.0, 0.0, out)
        return float(out) if scalar else out

    def hazard(self, x):
        """Hazard rate pdf(x)/S(x); raises on survival underflow."""
        s = self.sf(x)
        if np.ndim(s) == 0:
            if s < SF_UNDERFLOW:
                raise FloatingPointError(f"survival underflow at x = {x}")
            return self.pdf(x) / s
        if np.any(s < SF_UNDERFLOW):
            raise FloatingPointError("survival underflow in hazard evaluation")
        return self.pdf(x) / s

    # -- quantiles --------------------------------------------------------

    def _mean_scale(self):
        return max((len(c) + 0.0) / mu for mu, c in zip(self._mus, self._coeffs))

    def quantile(self, u):
        """Inverse CDF.  Scalar path polishes to |cdf(x) - u| <= 1e-12."""
        if np.ndim(u) != 0:
            return self._quantile_many(np.asarray(u, dtype=float))
        u = float(u)
        if not 0.0 < u < 1.0:
            raise ValueError(f"u must be in (0,1), got {u}")
        scale = self._mean_scale()
        hi = (-math.log1p(-u) + 1.0) * scale
        for _ in range(200):
            if 1.0 - self._sf_scalar(hi) >= u:
                break
            hi *= 2.0
        else:
            raise QuantileError("bracket expansion failed")
        lo = 0.0
        for _ in range(120):
            mid = 0.5 * (lo + hi)
            if 1.0 - self._sf_scalar(mid) < u:
                lo = mid
            else:
                hi = mid
        x = 0.5 * (lo + hi)
        tol = max(1e-12, 8.0 * self._abs_noise)
        for _ in range(8):
            err = (1.0 - self._sf_scalar(x)) - u
            if abs(err) <= tol:
                return x
            f = self.pdf(x)
            if f <= 0.0:
                break
            x -= err / f
            x = min(max(x, lo), hi)
        if abs((1.0 - self._sf_scalar(x)) - u) > tol:
            raise QuantileError(f"quantile failed to converge at u = {u}")
        return x

    def _quantile_many(self, u):
        from .invert import invert_cdf
        return invert_cdf(lambda x: 1.0 - self.sf(x), u, self._mean_scale())

    def quantile_sf(self, s):
        """x with S(x) = s, solved on the survival side for tail accuracy."""
        from .invert import invert_sf
        s = np.asarray(s, dtype=float)
        scalar = s.ndim == 0
        out = invert_sf(self.sf, np.atleast_1d(s), self._mean_scale())
        return float(out[0]) if scalar else out

    # -- algebra ----------------------------------------------------------

    def convolve(self, other):
        """Distribution of the sum of independent draws (exact symbolic)."""
        mus_a = self._mus.tolist()
        mus_b = other._mus.tolist()
        reps, idx = _cluster_rates(mus_a + mus_b)

        def density_basis(dist, offset):
            # density in the basis E[mu,m](x) = x^(m-1) e^(-mu x)/(m-1)!
            out = []
            for j, (mu, c) in enumerate(zip(dist._mus, dist._coeffs)):
                rid = idx[offset + j]
                for i in range(len(c)):
                    d = mu * c[i] - ((i + 1) * c[i + 1] if i + 1 < len(c) else 0.0)
                    if d != 0.0:
                        out.append((rid, i + 1, d * math.factorial(i)))
            return out

        da = density_basis(self, 0)
        db = density_basis(other, len(mus_a))
        if len(da) * len(db) > 200000:
            raise CapExceededError("convolution pair count exceeds cap")

        acc = {}
        for ra, pa, ca in da:
            for rb, qb, cb in db:
                w = ca * cb
                if ra == rb:
                    key = (ra, pa + qb)
                    acc[key] = acc.get(key, 0.0) + w
                else:
                    mu, nu = reps[ra], reps[rb]
                    inv = 1.0 / (nu - mu)
                    # 1/((s+mu)^p (s+nu)^q) partial fractions
                    f = inv ** qb
                    for k in range(pa):
                        key = (ra, pa - k)
                        acc[key] = acc.get(key, 0.0) + w * f
                        f *= -(qb + k) * inv / (k + 1)
                    inv = -inv
                    f = inv ** pa
                    for k in range(qb):
                        key = (rb, qb - k)
                        acc[key] = acc.get(key, 0.0) + w * f
                        f *= -(pa + k) * inv / (k + 1)

        # integrate the density back to a survival representation:
        # E[mu,m] contributes sum_j x^j e^(-mu x) / (j! mu^(m-j)) to S.
        polys = {}
        for (rid, m), g in acc.items():
            mu = reps[rid]
            p = polys.setdefault(rid, {})
            for j in range(m):
                p[j] = p.get(j, 0.0) + g / (math.factorial(j) * mu ** (m - j))
        terms = []
        for rid, p in polys.items():
            deg = max(p)
            terms.append((reps[rid], [p.get(i, 0.0) for i in range(deg + 1)]))
        return ExpPolyMix(terms)

    def scale(self, c):
        """Distribution of c*X for c > 0."""
        c = float(c)
        if not (c > 0.0 and math.isfinite(c)):
            raise ValueError(f"scale factor must be positive, got {c}")
        terms = []
        for mu, coeffs in zip(self._mus, self._coeffs):
            terms.append((mu / c, [v / c ** i for i, v in enumerate(coeffs)]))
        return ExpPolyMix(terms)

    # -- moments ----------------------------------------------------------

    def moment(self, order):
        """Raw moment of order 1 or 2 via closed-form survival integrals."""
        if order == 1:
            # E X = int S
            return math.fsum(
                v * math.factorial(i) / mu ** (i + 1)
                for mu, c in zip(self._mus, self._coeffs) for i, v in enumerate(c))
        if order == 2:
            # E X^2 = 2 int x S(x) dx
            return 2.0 * math.fsum(
                v * math.factorial(i + 1) / mu ** (i + 2)
                for mu, c in zip(self._mus, self._coeffs) for i, v in enumerate(c))
        raise ValueError("order must be 1 or 2")

    def mean(self):
        return self.moment(1)

    def var(self):
        m1 = self.moment(1)
        v = self.moment(2) - m1 * m1
        if v < -1e-10 * max(1.0, m1 * m1):
            raise CancellationError(f"negative variance {v}")
        return max(v, 0.0)

    def cv(self):
        """Coefficient of variation, sd/mean."""
        return math.sqrt(self.var()) / self.mean()


def expo(rate):
    """Exponential distribution with the given rate."""
    return ExpPolyMix.expo(rate)


def mix(components):
    """Finite mixture from (weight, ExpPolyMix) pairs; weights must sum to 1."""
    components = list(components)
    if not components:
        raise ValueError("empty mixture")
    wsum = math.fsum(w for w, _ in components)
    if abs(wsum - 1.0) > 1e-12:
        raise ValueError(f"mixture weights sum to {wsum}, not 1")
    terms = []
    for w, d in components:
        if w <= 0.0:
            raise ValueError("mixture weights must be positive")
        for mu, c in d.terms:
            terms.append((mu, [w * v for v in c]))
    return ExpPolyMix(terms)


def hypoexponential(rates):
    """Convolution of independent exponentials with the given rates."""
    rates = list(rates)
    d = expo(rates[0])
    for r in rates[1:]:
        d = d.convolve(expo(r))
    return d


# functional aliases matching the operation-level API

def eval_cdf(d, x):
    return d.cdf(x)


def eval_pdf(d, x):
    return d.pdf(x)


def eval_hazard(d, x):
    return d.hazard(x)


def quantile(d, u):
    return d.quantile(u)


def convolve(a, b):
    return a.convolve(b)


def scale(d, c):
    return d.scale(c)


def moments(d, order):
    return d.moment(order)


def cv(d):
    return d.cv()
