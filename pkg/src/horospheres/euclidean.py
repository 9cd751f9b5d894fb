"""Stationary isotropic Poisson hyperplanes in Euclidean space.

The flat comparison model: closed-form variance, fourth cumulant, and
Wasserstein bound from gamma ratios, plus an exact simulator whose cost does
not grow with the dimension.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .geometry import HorosphereParam, LOG_ZERO, log_unit_ball_volume
from .quadrature import quad_log_integral
from .sampling import (
    FeasibilityError,
    Realization,
    SimConfig,
    _poisson_log_sum,
    _resolve_threads,
    _sample_directions,
    replication_stream,
    sample_poisson_count,
)
from .special import log_gamma

__all__ = [
    "EuclidMoments",
    "EuclidBound",
    "log_section_area",
    "variance_closed",
    "fourth_cumulant_closed",
    "variance_direct",
    "fourth_cumulant_direct",
    "log_mean",
    "wasserstein_bound",
    "normalized_rate_constant",
    "euclid_moments",
    "simulate_total_area",
    "simulate_batch",
]

_LN2 = math.log(2.0)
_LOG_PI = math.log(math.pi)
_LOG_MAX_DOUBLE = math.log(np.finfo(float).max)


def _check_dim(d) -> int:
    if isinstance(d, bool) or not isinstance(d, (int, np.integer)):
        raise ValueError(f"dimension must be an integer, got {d!r}")
    d = int(d)
    if d < 1:
        raise ValueError(f"dimension must be at least 1, got {d}")
    return d


def _check_radius(R) -> float:
    if not R > 0:
        raise ValueError(f"R must be positive, got {R!r}")
    return float(R)


@dataclass(frozen=True)
class EuclidMoments:
    """Closed-form moments and bound for the flat model at (R, d)."""

    R: float
    d: int
    log_variance: float
    log_cum4: float
    wass_bound: float
    normalized_bound: float


class EuclidBound(NamedTuple):
    """Wasserstein bound value plus its normalization value*sqrt(R)/d^(1/4)."""

    value: float
    normalized: float


def log_section_area(s, R, d):
    """log area of the slab a hyperplane at signed distance s cuts out of the
    ball of radius R.  Array-compatible in ``s``; -inf outside (-R, R)."""
    d = _check_dim(d)
    R = _check_radius(R)
    arr = np.asarray(s, dtype=float)
    scalar = arr.ndim == 0
    sv = np.atleast_1d(arr)
    lower = R - sv
    upper = R + sv
    inside = (lower > 0.0) & (upper > 0.0)
    lo = np.where(inside, lower, 1.0)
    hi = np.where(inside, upper, 1.0)
    out = log_unit_ball_volume(d - 1) + 0.5 * (d - 1) * (np.log(lo) + np.log(hi))
    out = np.where(inside, out, LOG_ZERO)
    return float(out[0]) if scalar else out.reshape(arr.shape)


def variance_closed(R, d) -> float:
    """log of the closed-form variance,
    pi^(d-1/2) Gamma(d) R^(2d-1) / (Gamma((d+1)/2)^2 Gamma(d+1/2))."""
    d = _check_dim(d)
    R = _check_radius(R)
    return (
        (d - 0.5) * _LOG_PI
        + log_gamma(float(d))
        + (2 * d - 1) * math.log(R)
        - 2.0 * log_gamma(0.5 * (d + 1))
        - log_gamma(d + 0.5)
    )


def fourth_cumulant_closed(R, d) -> float:
    """log of the closed-form fourth cumulant,
    pi^(2d-3/2) Gamma(2d-1) R^(4d-3) / (Gamma((d+1)/2)^4 Gamma(2d-1/2))."""
    d = _check_dim(d)
    R = _check_radius(R)
    return (
        (2 * d - 1.5) * _LOG_PI
        + log_gamma(2.0 * d - 1.0)
        + (4 * d - 3) * math.log(R)
        - 4.0 * log_gamma(0.5 * (d + 1))
        - log_gamma(2.0 * d - 0.5)
    )


def variance_direct(R, d, rel_tol: float = 1e-12) -> float:
    """log variance by direct quadrature of the squared section area."""
    d = _check_dim(d)
    R = _check_radius(R)
    return _LN2 + quad_log_integral(
        lambda s: 2.0 * log_section_area(s, R, d), 0.0, R, rel_tol=rel_tol
    )


def fourth_cumulant_direct(R, d, rel_tol: float = 1e-12) -> float:
    """log fourth cumulant by direct quadrature of the fourth power."""
    d = _check_dim(d)
    R = _check_radius(R)
    return _LN2 + quad_log_integral(
        lambda s: 4.0 * log_section_area(s, R, d), 0.0, R, rel_tol=rel_tol
    )


def log_mean(R, d, rel_tol: float = 1e-12) -> float:
    """log of the expected total section area, by quadrature."""
    d = _check_dim(d)
    R = _check_radius(R)
    return _LN2 + quad_log_integral(
        lambda s: log_section_area(s, R, d), 0.0, R, rel_tol=rel_tol
    )


def wasserstein_bound(R, d) -> EuclidBound:
    """Exact gamma-ratio Wasserstein bound,
    (2/pi^{1/4}) (Gamma(d+1/2)/Gamma(d)) sqrt(Gamma(2d-1)/Gamma(2d-1/2)) R^{-1/2},
    together with the normalization value*sqrt(R)/d^{1/4}."""
    d = _check_dim(d)
    R = _check_radius(R)
    log_bound = (
        _LN2
        - 0.25 * _LOG_PI
        + log_gamma(d + 0.5)
        - log_gamma(float(d))
        + 0.5 * (log_gamma(2.0 * d - 1.0) - log_gamma(2.0 * d - 0.5))
        - 0.5 * math.log(R)
    )
    value = math.exp(log_bound)
    return EuclidBound(value=value, normalized=value * math.sqrt(R) / d**0.25)


def normalized_rate_constant(d) -> float:
    """The dimension-normalized bound constant, independent of R."""
    return wasserstein_bound(1.0, d).normalized


def euclid_moments(R, d) -> EuclidMoments:
    """Closed-form moments and the Wasserstein bound in one record."""
    bound = wasserstein_bound(R, d)
    return EuclidMoments(
        R=float(R),
        d=_check_dim(d),
        log_variance=variance_closed(R, d),
        log_cum4=fourth_cumulant_closed(R, d),
        wass_bound=bound.value,
        normalized_bound=bound.normalized,
    )


def simulate_total_area(cfg: SimConfig, replication_index: int) -> Realization:
    """One replication of the flat-model total section area.

    The hitting intensity mass is exactly 2R under the normalized sphere
    measure, so the cost is dimension-free.  Draw order is count, then
    signed distances, then directions, matching the hyperbolic sampler.
    """
    mass = 2.0 * cfg.R
    if mass > cfg.count_cap:
        raise FeasibilityError(
            f"expected count {mass:.6g} exceeds the count cap {cfg.count_cap:g}",
            log_expected_count=math.log(mass),
            cap=float(cfg.count_cap),
        )
    rng = replication_stream(cfg.seed, replication_index)
    n = sample_poisson_count(mass, rng, cap=cfg.count_cap)

    def draw(k: int) -> np.ndarray:
        s = (2.0 * rng.random(k) - 1.0) * cfg.R
        return log_section_area(s, cfg.R, cfg.d)

    points = None
    if cfg.record_points:
        if n > 0:
            s = (2.0 * rng.random(n) - 1.0) * cfg.R
            logs = log_section_area(s, cfg.R, cfg.d)
            m = float(np.max(logs))
            log_total = m + math.log(float(np.sum(np.exp(logs - m)))) if m > LOG_ZERO else LOG_ZERO
            dirs = _sample_directions(n, cfg.d, rng)
            points = tuple(
                HorosphereParam(float(si), tuple(float(c) for c in di)) for si, di in zip(s, dirs)
            )
        else:
            log_total = LOG_ZERO
            points = ()
    else:
        log_total = _poisson_log_sum(n, draw)
    return Realization(
        total_area=math.exp(log_total) if log_total < _LOG_MAX_DOUBLE else math.inf,
        log_total_area=log_total,
        count=n,
        points=points,
    )


def simulate_batch(cfg: SimConfig, threads=None) -> list[Realization]:
    """All flat-model replications, deterministic for any thread count."""
    workers = _resolve_threads(threads)
    indices = range(cfg.replications)
    if workers <= 1:
        return [simulate_total_area(cfg, i) for i in indices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda i: simulate_total_area(cfg, i), indices))
