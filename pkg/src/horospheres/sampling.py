"""Exact simulation of the horosphere process restricted to a centered ball.

Every replication owns a counter-based random stream derived from
(seed, replication index), so batch output is a pure function of the
configuration no matter how the work is scheduled across threads.
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .geometry import HorosphereParam, LOG_ZERO, check_dimension, log_chord_area, log_sinh

__all__ = [
    "FeasibilityError",
    "MassOverflowError",
    "SimConfig",
    "Realization",
    "hitting_mass",
    "log_hitting_mass",
    "sample_signed_distance",
    "sample_direction",
    "sample_poisson_count",
    "replication_stream",
    "simulate_total_area",
    "simulate_batch",
]

_LN2 = math.log(2.0)
_SEED_LIMIT = 1 << 64
_LOG_MAX_DOUBLE = math.log(np.finfo(float).max)
_CHUNK = 1 << 20
# rng.random can return exactly 0.0, which the strict inverse CDF rejects;
# clamping to half the smallest regular draw keeps every uniform in (0, 1)
_MIN_U = 2.0**-54
THREADS_ENV_VAR = "HOROSPHERES_THREADS"


class FeasibilityError(RuntimeError):
    """An experiment would exceed the configured count cap."""

    def __init__(self, message: str, log_expected_count: float | None = None, cap: float | None = None):
        super().__init__(message)
        self.log_expected_count = log_expected_count
        self.cap = cap


class MassOverflowError(OverflowError):
    """The expected hitting count overflows double precision; carries its log."""

    def __init__(self, message: str, log_mass: float):
        super().__init__(message)
        self.log_mass = log_mass


@dataclass(frozen=True)
class SimConfig:
    """Monte Carlo experiment parameters.

    ``record_points`` retains per-horosphere (s, u) data, needed only for
    rendering; ``count_cap`` bounds the expected hit count per replication.
    """

    d: int
    R: float
    replications: int
    seed: int
    record_points: bool = False
    count_cap: int = 10**8

    def __post_init__(self):
        object.__setattr__(self, "d", check_dimension(self.d))
        object.__setattr__(self, "R", float(self.R))
        object.__setattr__(self, "replications", int(self.replications))
        object.__setattr__(self, "seed", int(self.seed))
        object.__setattr__(self, "record_points", bool(self.record_points))
        object.__setattr__(self, "count_cap", int(self.count_cap))
        if not self.R > 0:
            raise ValueError(f"R must be positive, got {self.R!r}")
        if self.replications < 1:
            raise ValueError(f"replications must be at least 1, got {self.replications}")
        if not 0 <= self.seed < _SEED_LIMIT:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.count_cap < 1:
            raise ValueError(f"count_cap must be at least 1, got {self.count_cap}")


@dataclass(frozen=True)
class Realization:
    """One sampled value of the total cap area inside the ball."""

    total_area: float
    log_total_area: float
    count: int
    points: tuple[HorosphereParam, ...] | None = None


def log_hitting_mass(R, d) -> float:
    """log of the expected number of horospheres meeting the ball of radius R."""
    d = check_dimension(d)
    if not R > 0:
        raise ValueError(f"R must be positive, got {R!r}")
    a = (d - 1.0) * float(R)
    return float(log_sinh(a)) + _LN2 - math.log(d - 1.0)


def hitting_mass(R, d) -> float:
    """Expected number of horospheres meeting the ball: 2 sinh((d-1)R)/(d-1)."""
    lm = log_hitting_mass(R, d)
    if lm >= _LOG_MAX_DOUBLE:
        raise MassOverflowError(
            f"expected hitting count overflows double precision (log mass {lm:.6g})",
            log_mass=lm,
        )
    return math.exp(lm)


def sample_signed_distance(R, d, U):
    """Inverse-CDF sample of the signed distance on (-R, R).

    The intensity density is e^{-(d-1)s}; the inverse CDF is evaluated in log
    form so it stays finite and strictly monotone in U even for (d-1)R of
    several hundred.  Array-compatible in ``U``.
    """
    d = check_dimension(d)
    if not R > 0:
        raise ValueError(f"R must be positive, got {R!r}")
    R = float(R)
    arr = np.asarray(U, dtype=float)
    scalar = arr.ndim == 0
    uv = np.atleast_1d(arr)
    if np.any((uv <= 0.0) | (uv >= 1.0)):
        raise ValueError("U must lie strictly inside (0, 1)")
    a = d - 1.0
    w = -np.expm1(-2.0 * a * R)
    out = -R - np.log1p(-uv * w) / a
    return float(out[0]) if scalar else out.reshape(arr.shape)


def _sample_directions(k: int, d: int, rng) -> np.ndarray:
    v = rng.standard_normal((k, d))
    norms = np.linalg.norm(v, axis=1)
    while np.any(norms == 0.0):
        bad = norms == 0.0
        v[bad] = rng.standard_normal((int(bad.sum()), d))
        norms = np.linalg.norm(v, axis=1)
    return v / norms[:, None]


def sample_direction(d, rng) -> np.ndarray:
    """One uniform draw from the unit sphere (normalized Gaussian vector)."""
    d = check_dimension(d)
    return _sample_directions(1, d, rng)[0]


def sample_poisson_count(mean, rng, cap=None) -> int:
    """Poisson variate with the given mean, guarded by an optional cap."""
    if not mean >= 0:
        raise ValueError(f"mean must be nonnegative, got {mean!r}")
    if cap is not None and mean > cap:
        raise FeasibilityError(
            f"expected count {mean:.6g} exceeds the count cap {cap:.6g}",
            log_expected_count=math.log(mean) if mean > 0 else LOG_ZERO,
            cap=float(cap),
        )
    return int(rng.poisson(mean))


def replication_stream(seed: int, index: int):
    """Independent generator for one replication, a pure function of its key."""
    if not 0 <= int(seed) < _SEED_LIMIT:
        raise ValueError("seed must be a 64-bit unsigned integer")
    if not 0 <= int(index) < _SEED_LIMIT:
        raise ValueError("replication index must be a 64-bit unsigned integer")
    return np.random.Generator(np.random.Philox(key=(int(seed) << 64) + int(index)))


def _check_feasible(log_mass: float, cap: int) -> None:
    if log_mass > math.log(cap):
        if log_mass < _LOG_MAX_DOUBLE:
            expected = f"{math.exp(log_mass):.6g}"
        else:
            expected = f"exp({log_mass:.6g})"
        raise FeasibilityError(
            f"expected hitting count {expected} exceeds the count cap {cap:g}; "
            "use the analytic routines for this regime",
            log_expected_count=log_mass,
            cap=float(cap),
        )


def _poisson_log_sum(n: int, draw_log_values) -> float:
    """Chunked log-sum-exp accumulation over n sampled contributions."""
    log_total = LOG_ZERO
    done = 0
    while done < n:
        k = min(_CHUNK, n - done)
        logs = draw_log_values(k)
        m = float(np.max(logs))
        if m > LOG_ZERO:
            chunk = m + math.log(float(np.sum(np.exp(logs - m))))
            log_total = float(np.logaddexp(log_total, chunk))
        done += k
    return log_total


def simulate_total_area(cfg: SimConfig, replication_index: int) -> Realization:
    """One replication of the total cap area, on its own random stream.

    Draw order is fixed as count, then signed distances, then directions, so
    enabling ``record_points`` never changes the sampled total.
    """
    lm = log_hitting_mass(cfg.R, cfg.d)
    _check_feasible(lm, cfg.count_cap)
    rng = replication_stream(cfg.seed, replication_index)
    n = sample_poisson_count(math.exp(lm), rng, cap=cfg.count_cap)

    def draw(k: int) -> np.ndarray:
        u = np.maximum(rng.random(k), _MIN_U)
        s = sample_signed_distance(cfg.R, cfg.d, u)
        return log_chord_area(s, cfg.R, cfg.d)

    points = None
    if cfg.record_points:
        if n > 0:
            u = np.maximum(rng.random(n), _MIN_U)
            s = sample_signed_distance(cfg.R, cfg.d, u)
            logs = log_chord_area(s, cfg.R, cfg.d)
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


def _resolve_threads(threads) -> int:
    if threads is None:
        env = os.environ.get(THREADS_ENV_VAR)
        threads = int(env) if env else 1
    threads = int(threads)
    if threads < 1:
        raise ValueError(f"thread count must be at least 1, got {threads}")
    return threads


def simulate_batch(cfg: SimConfig, threads=None) -> list[Realization]:
    """All replications, in index order, bit-identical for any thread count."""
    _check_feasible(log_hitting_mass(cfg.R, cfg.d), cfg.count_cap)
    workers = _resolve_threads(threads)
    indices = range(cfg.replications)
    if workers <= 1:
        return [simulate_total_area(cfg, i) for i in indices]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda i: simulate_total_area(cfg, i), indices))
