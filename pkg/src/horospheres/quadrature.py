"""Adaptive Gauss-Legendre quadrature carried out entirely in the log domain.

The engine integrates exp(g) for a user-supplied log-integrand g without ever
leaving log space, so integrands spanning thousands of orders of magnitude are
handled in ordinary double precision.  Panels are refined breadth-first; a
panel is accepted when bisecting it moves the log of its value by no more than
the requested tolerance, or when its estimated absolute error is negligible
against the running whole-interval estimate.
"""

from __future__ import annotations

import math

import numpy as np

__all__ = ["LOG_ZERO", "QuadratureError", "quad_log_integral"]

LOG_ZERO = float("-inf")

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(15)
_LOG_WEIGHTS = np.log(_WEIGHTS)

_DEPTH_CAP = 40
_PANEL_BUDGET = 50_000
# Safety margin for the negligible-panel shortcut: a panel may be accepted
# unconverged only if its error estimate is below tol * total / _BUDGET_SHARE,
# which keeps the sum of such errors under tol * total for any realistic
# number of shortcut panels.
_BUDGET_SHARE = 256.0


class QuadratureError(RuntimeError):
    """Refinement could not reach the requested tolerance.

    ``last`` and ``previous`` carry the two most recent whole-interval
    estimates (log scale) so callers can judge how far refinement got.
    """

    def __init__(self, message: str, last: float, previous: float):
        super().__init__(message)
        self.last = last
        self.previous = previous


def _logsumexp(values) -> float:
    arr = np.asarray(values, dtype=float)
    if arr.size == 0:
        return LOG_ZERO
    m = float(np.max(arr))
    if m == LOG_ZERO:
        return LOG_ZERO
    if not math.isfinite(m):
        raise ValueError("log-integrand produced a non-finite value")
    return m + math.log(float(np.sum(np.exp(arr - m))))


def _panel(log_f, a: float, b: float) -> float:
    half = 0.5 * (b - a)
    vals = np.asarray(log_f(0.5 * (a + b) + half * _NODES), dtype=float)
    if vals.shape != _NODES.shape:
        raise ValueError("log-integrand must map a node array to an equal-shaped array")
    return _logsumexp(vals + _LOG_WEIGHTS) + math.log(half)


def _error_log(whole: float, refined: float) -> float:
    """Log of the estimated absolute error of a panel's coarse estimate."""
    if whole == refined:
        return LOG_ZERO
    diff = abs(whole - refined)
    if not math.isfinite(diff):
        return float(np.logaddexp(whole, refined))
    return max(whole, refined) + math.log(diff)


def quad_log_integral(log_f, a: float, b: float, rel_tol: float = 1e-10) -> float:
    """Return log of the integral of exp(log_f) over [a, b].

    ``log_f`` must accept a numpy array of interior nodes and return the
    log-integrand elementwise, with ``-inf`` marking zeros.  Endpoints are
    never evaluated, so integrands vanishing at the interval ends need no
    special casing.  Raises :class:`QuadratureError` when the panel depth cap
    or the panel budget is exhausted before the tolerance is met.
    """
    a = float(a)
    b = float(b)
    if a == b:
        return LOG_ZERO
    if not a < b:
        raise ValueError(f"reversed integration interval [{a!r}, {b!r}]")
    if not rel_tol > 0:
        raise ValueError(f"rel_tol must be positive, got {rel_tol!r}")
    tol = max(float(rel_tol), 1e-14)
    log_tol = math.log(tol)

    # Pending panels carry their own coarse estimate; refinement replaces a
    # panel by its two halves, whose coarse estimates were just computed.
    pending = [(a, b, 0, _panel(log_f, a, b))]
    accepted: list[float] = []
    panels_spent = 1
    prev_total = LOG_ZERO
    total = LOG_ZERO

    while pending:
        refined_info = []
        for pa, pb, depth, whole in pending:
            mid = 0.5 * (pa + pb)
            left = _panel(log_f, pa, mid)
            right = _panel(log_f, mid, pb)
            refined = float(np.logaddexp(left, right))
            refined_info.append((pa, pb, mid, depth, whole, left, right, refined))
        panels_spent += 2 * len(pending)

        prev_total = total
        total = _logsumexp(accepted + [item[7] for item in refined_info])
        if panels_spent > _PANEL_BUDGET:
            raise QuadratureError(
                f"panel budget ({_PANEL_BUDGET}) exhausted before convergence",
                last=total,
                previous=prev_total,
            )
        shortcut = total + log_tol - math.log(_BUDGET_SHARE)

        next_pending = []
        for pa, pb, mid, depth, whole, left, right, refined in refined_info:
            if whole == refined:
                accepted.append(refined)
                continue
            diff = abs(whole - refined)
            if diff <= tol:
                accepted.append(refined)
            elif _error_log(whole, refined) <= shortcut:
                accepted.append(refined)
            elif depth >= _DEPTH_CAP:
                raise QuadratureError(
                    f"panel depth cap ({_DEPTH_CAP}) reached without convergence",
                    last=total,
                    previous=prev_total,
                )
            else:
                next_pending.append((pa, mid, depth + 1, left))
                next_pending.append((mid, pb, depth + 1, right))
        pending = next_pending

    return _logsumexp(accepted)
