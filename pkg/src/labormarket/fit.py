"""Least-squares fit of ``pi + b = C * U**(-c)``.

For a fixed offset ``b`` the model is linear in log space,
``log(pi + b) = logC - c log U``, so ``c`` and ``logC`` come from ordinary
least squares.  The offset is found by minimizing the residual sum of
squares over ``b``: a grid pre-scan followed by a bounded scalar search in
the best grid cell.  The refinement solves ``d sse / d b = 0`` by bracketed
root finding, which pins ``b`` far tighter than comparing nearly equal sse
values would.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np
from scipy.optimize import brentq, minimize_scalar


@dataclass(frozen=True)
class FitResult:
    b: float
    c: float
    logC: float
    sse: float
    n: int
    dropped: int = 0

    def predict(self, U: np.ndarray) -> np.ndarray:
        return np.exp(self.logC) * np.asarray(U, dtype=float) ** (-self.c) - self.b


def as_points(points: Iterable) -> tuple[np.ndarray, np.ndarray]:
    arr = np.asarray(points, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise ValueError("expected an (n, 2) array of (U, pi) pairs")
    return arr[:, 0], arr[:, 1]


def _ols(X: np.ndarray, Y: np.ndarray) -> tuple[float, float, float]:
    x = X - X.mean()
    y = Y - Y.mean()
    sxx = x @ x
    slope = (x @ y) / sxx
    resid = y - slope * x
    return slope, Y.mean() - slope * X.mean(), float(resid @ resid)


def linear_fit_given_b(points, b: float) -> tuple[float, float, float]:
    """Return ``(c, logC, sse)`` for a fixed offset ``b``."""
    U, pi = as_points(points)
    if len(U) < 2:
        raise ValueError("need at least two points")
    if np.any(U <= 0):
        raise ValueError("U must be strictly positive")
    shifted = pi + b
    if np.any(shifted <= 0):
        raise ValueError(f"pi + b must be positive for every point (b={b})")
    X = np.log(U)
    if np.ptp(X) == 0:
        raise ValueError("need at least two distinct U values")
    slope, intercept, sse = _ols(X, np.log(shifted))
    return -slope, intercept, sse


def default_b_range(pi: np.ndarray) -> tuple[float, float]:
    lo = -float(np.min(pi))
    return lo + 1e-6, lo + 10.0


def fit_offset_power_law(
    points,
    b_range: tuple[float, float] | None = None,
    grid: int = 200,
) -> FitResult:
    """Fit offset, exponent and amplitude.

    Points with ``U <= 0`` are dropped and counted in ``FitResult.dropped``.
    """
    U, pi = as_points(points)
    keep = U > 0
    dropped = int(np.count_nonzero(~keep))
    # canonical order makes the result independent of input order
    order = np.lexsort((pi[keep], U[keep]))
    U, pi = U[keep][order], pi[keep][order]
    if len(U) < 3:
        raise ValueError(f"need at least 3 points with U > 0, got {len(U)}")
    X = np.log(U)
    if np.ptp(X) == 0:
        raise ValueError("need at least two distinct U values")

    floor = -float(np.min(pi))
    lo, hi = default_b_range(pi) if b_range is None else b_range
    lo = max(lo, np.nextafter(floor, np.inf))
    if not hi > lo:
        raise ValueError(f"empty feasible offset interval ({lo}, {hi}]")

    x = X - X.mean()

    def sse(b: float) -> float:
        return _ols(X, np.log(pi + b))[2]

    def slope(b: float) -> float:
        # residuals are a projection of log(pi + b), so d sse/db = 2 r . 1/(pi + b)
        y = np.log(pi + b)
        y = y - y.mean()
        r = y - (x @ y) / (x @ x) * x
        return float(r @ (1.0 / (pi + b)))

    bs = np.linspace(lo, hi, grid + 1)
    scan = np.array([sse(b) for b in bs])
    j = int(np.argmin(scan))
    left, right = bs[max(j - 1, 0)], bs[min(j + 1, grid)]
    g_left, g_right = slope(left), slope(right)
    if g_left < 0 < g_right:
        b = brentq(slope, left, right, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    else:
        b = minimize_scalar(
            sse, bounds=(left, right), method="bounded",
            options={"xatol": 1e-12 * max(1.0, abs(bs[j])), "maxiter": 500},
        ).x
    b = float(b) if sse(b) <= scan[j] else float(bs[j])
    c, logC, s = linear_fit_given_b(np.column_stack([U, pi]), b)
    return FitResult(b=b, c=c, logC=logC, sse=s, n=len(U), dropped=dropped)
