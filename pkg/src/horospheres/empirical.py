"""Empirical distribution distances and cumulant diagnostics.

The Kolmogorov statistic is the exact sup distance between the sample step
function and a centered Gaussian target; the Wasserstein-1 statistic is the
exact integral of |F_n - G|, with sign changes located by bisection and tails
integrated in closed form.  Cumulants use the unbiased k-statistics.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .special import erfc

__all__ = [
    "EmpiricalSummary",
    "gaussian_cdf",
    "gaussian_pdf",
    "standardize",
    "empirical_kolmogorov",
    "empirical_wasserstein1",
    "wasserstein1_samples",
    "k_statistics",
    "summarize",
]

_BISECT_ITERS = 60


def gaussian_cdf(x, variance: float = 1.0):
    """Distribution function of a centered Gaussian with the given variance.

    Vectorized; evaluated through the complementary error function so both
    tails keep full absolute accuracy.
    """
    if not variance > 0:
        raise ValueError(f"variance must be positive, got {variance!r}")
    t = np.asarray(x, dtype=float) / math.sqrt(2.0 * variance)
    out = 0.5 * erfc(-t)
    return out


def gaussian_pdf(x, variance: float = 1.0):
    """Density of a centered Gaussian with the given variance."""
    if not variance > 0:
        raise ValueError(f"variance must be positive, got {variance!r}")
    arr = np.asarray(x, dtype=float)
    return np.exp(-arr * arr / (2.0 * variance)) / math.sqrt(2.0 * math.pi * variance)


def standardize(samples, center=None, scale=None) -> np.ndarray:
    """Shift and scale a sample.

    With explicit ``center`` and ``scale`` this is the analytic normalization
    used by the limit statements; with neither, the sample mean and unbiased
    standard deviation (divisor n-1) are used.
    """
    x = np.asarray(samples, dtype=float).ravel()
    if x.size == 0:
        raise ValueError("cannot standardize an empty sample")
    if (center is None) != (scale is None):
        raise ValueError("provide both center and scale, or neither")
    if center is None:
        if x.size < 2:
            raise ValueError("empirical standardization needs at least 2 observations")
        center = float(np.mean(x))
        scale = float(np.std(x, ddof=1))
    if not scale > 0:
        raise ValueError("degenerate sample: scale is not positive")
    return (x - float(center)) / float(scale)


def _check_sorted(samples) -> np.ndarray:
    x = np.asarray(samples, dtype=float).ravel()
    if x.size == 0:
        raise ValueError("empty sample")
    if np.any(np.diff(x) < 0):
        raise ValueError("samples must be sorted ascending")
    return x


def empirical_kolmogorov(sorted_samples, target_variance: float = 1.0) -> float:
    """Exact sup distance between the empirical step function and the
    centered Gaussian target."""
    x = _check_sorted(sorted_samples)
    n = x.size
    g = gaussian_cdf(x, target_variance)
    i = np.arange(1, n + 1, dtype=float)
    return float(np.max(np.maximum(i / n - g, g - (i - 1.0) / n)))


def empirical_wasserstein1(sorted_samples, target_variance: float = 1.0) -> float:
    """Exact integral of |F_n - G| against Lebesgue measure.

    Between consecutive order statistics the empirical function is constant,
    so each piece integrates in closed form through the antiderivative
    A(t) = t G(t) + variance g(t); a sign change inside a piece is located by
    bisection on the monotone G.  The two tails integrate G and 1 - G exactly.
    """
    x = _check_sorted(sorted_samples)
    n = x.size
    var = float(target_variance)
    G = gaussian_cdf(x, var)
    A = x * G + var * gaussian_pdf(x, var)
    total = float(A[0])            # lower tail, integral of G up to the minimum
    total += float(A[-1] - x[-1])  # upper tail, integral of 1 - G beyond the maximum
    if n == 1:
        return total
    c = np.arange(1, n, dtype=float) / n
    a, b = x[:-1], x[1:]
    Ga, Gb = G[:-1], G[1:]
    Aa, Ab = A[:-1], A[1:]
    dA = Ab - Aa
    dx = b - a
    seg = np.empty(n - 1)
    below = Gb <= c    # G stays below the step level: |c - G| = c - G
    above = Ga >= c    # G stays above: |c - G| = G - c
    cross = ~(below | above)
    seg[below] = c[below] * dx[below] - dA[below]
    seg[above] = dA[above] - c[above] * dx[above]
    if np.any(cross):
        lo = a[cross].copy()
        hi = b[cross].copy()
        cc = c[cross]
        for _ in range(_BISECT_ITERS):
            mid = 0.5 * (lo + hi)
            take_hi = gaussian_cdf(mid, var) >= cc
            hi = np.where(take_hi, mid, hi)
            lo = np.where(take_hi, lo, mid)
        t = 0.5 * (lo + hi)
        Gt = gaussian_cdf(t, var)
        At = t * Gt + var * gaussian_pdf(t, var)
        seg[cross] = (cc * (t - a[cross]) - (At - Aa[cross])) + (
            (Ab[cross] - At) - cc * (b[cross] - t)
        )
    return total + float(np.sum(seg))


def wasserstein1_samples(a, b) -> float:
    """Exact W1 between two empirical laws of equal sample size."""
    av = np.sort(np.asarray(a, dtype=float).ravel())
    bv = np.sort(np.asarray(b, dtype=float).ravel())
    if av.size == 0 or av.size != bv.size:
        raise ValueError("samples must be nonempty and of equal size")
    return float(np.mean(np.abs(av - bv)))


def k_statistics(samples) -> tuple[float, float, float, float]:
    """Unbiased cumulant estimators (k1, k2, k3, k4) from power sums."""
    x = np.asarray(samples, dtype=float).ravel()
    n = x.size
    if n < 4:
        raise ValueError("k-statistics need at least four observations")
    k1 = float(np.mean(x))
    z = x - k1
    s2 = float(np.sum(z * z))
    s3 = float(np.sum(z**3))
    s4 = float(np.sum(z**4))
    k2 = s2 / (n - 1)
    k3 = n * s3 / ((n - 1) * (n - 2))
    k4 = (n * (n + 1.0) * s4 - 3.0 * (n - 1) * s2 * s2) / ((n - 1.0) * (n - 2) * (n - 3))
    return k1, k2, k3, k4


@dataclass(frozen=True)
class EmpiricalSummary:
    """Distances to the Gaussian target plus moment diagnostics of one
    standardized sample."""

    n: int
    mean: float
    variance: float
    k4: float
    d_kol: float
    d_wass1: float
    target_variance: float


def summarize(samples, target_variance: float, center=None, scale=None) -> EmpiricalSummary:
    """Standardize and sort a sample, then take both distances and the k-statistics.

    The reported moment fields describe the standardized sample.
    """
    z = np.sort(standardize(samples, center=center, scale=scale))
    k1, k2, _, k4 = k_statistics(z)
    return EmpiricalSummary(
        n=int(z.size),
        mean=k1,
        variance=k2,
        k4=k4,
        d_kol=empirical_kolmogorov(z, target_variance),
        d_wass1=empirical_wasserstein1(z, target_variance),
        target_variance=float(target_variance),
    )
