"""Finite-difference derivatives of eps(x) and the signatures at |x| = 1."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .entanglement import INFINITE, epsilon_finite, epsilon_infinite
from .quadrature import integrate


class Side(enum.Enum):
    CENTRAL = "central"
    LEFT = "left"
    RIGHT = "right"


class Method(enum.Enum):
    NUMERIC_LIMIT = "numeric_limit"
    CLOSED_FORM_INTEGRAL = "closed_form_integral"


class StencilError(ValueError):
    """Difference stencil straddles a non-analytic point x = +-1."""


# offsets and weights; derivative = weights @ f(x + h*offsets) / h**order
_STENCILS = {
    (1, Side.CENTRAL): ((-2, -1, 1, 2), np.array([1.0, -8.0, 8.0, -1.0]) / 12.0),
    (2, Side.CENTRAL): ((-2, -1, 0, 1, 2), np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0),
    (1, Side.RIGHT): ((0, 1, 2, 3), np.array([-11.0, 18.0, -9.0, 2.0]) / 6.0),
    (1, Side.LEFT): ((0, -1, -2, -3), np.array([11.0, -18.0, 9.0, -2.0]) / 6.0),
    (2, Side.RIGHT): ((0, 1, 2, 3), np.array([2.0, -5.0, 4.0, -1.0])),
    (2, Side.LEFT): ((0, -1, -2, -3), np.array([2.0, -5.0, 4.0, -1.0])),
}

CRITICAL_POINTS = (-1.0, 1.0)


@dataclass(frozen=True)
class CriticalReport:
    method: Optional[str] = None
    jump_left_derivative: Optional[float] = None
    right_derivative: Optional[float] = None
    jump_value: Optional[float] = None
    divergence_exponent: Optional[float] = None
    fit_window: Optional[Tuple[float, float]] = None
    fit_residual: Optional[float] = None
    fit_points: Optional[Tuple[Tuple[float, float], ...]] = None


def _eps_function(size, quad_tol):
    if size is None or size == INFINITE:
        return lambda x: epsilon_infinite(x, quad_tol).epsilon
    return lambda x: epsilon_finite(x, size).epsilon


def epsilon_derivative(x: float, order: int = 1, step: float = 1e-4,
                       side: Side = Side.CENTRAL, quad_tol: float = 1e-8,
                       size=INFINITE) -> float:
    """d^order eps / dx^order by finite differences.

    Central stencils are five-point (O(h^4) for the slope), one-sided ones use
    four points.  ``size`` selects the thermodynamic limit (default) or an
    even chain length.  Raises StencilError if the stencil crosses x = +-1.
    """
    side = Side(side)
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    if step <= 0:
        raise ValueError("step must be positive")
    offsets, weights = _STENCILS[(order, side)]
    lo, hi = x + step * min(offsets), x + step * max(offsets)
    for xc in CRITICAL_POINTS:
        if lo < xc < hi:
            raise StencilError(f"stencil [{lo}, {hi}] crosses the critical point {xc}")
    f = _eps_function(size, quad_tol)
    values = np.array([f(x + k * step) for k in offsets])
    return float(weights @ values) / step**order


def _closed_form_jump(quad_tol: float) -> float:
    # (1/2pi) int_0^1 ln((1+z)/(1-z)) sqrt(1-z^2)/z dz, with z = 1 - e^{-t} on the upper half
    def lower(z):
        return 2.0 * np.arctanh(z) / z * np.sqrt((1.0 - z) * (1.0 + z))

    def upper(t):
        w = np.exp(-t)
        z = 1.0 - w
        return (np.log(2.0 - w) + t) * np.sqrt(w * (2.0 - w)) / z * w

    tol = np.pi * quad_tol
    v1, _ = integrate(lower, 0.0, 0.5, tol=tol)
    v2, _ = integrate(upper, math.log(2.0), 50.0, tol=tol, breakpoints=(2.0, 5.0, 12.0))
    return (v1 + v2) / (2 * np.pi)


def jump_estimate(method=Method.CLOSED_FORM_INTEGRAL, step: float = 1e-4,
                  quad_tol: float = 1e-8) -> CriticalReport:
    """Jump of eps'(x) across x = 1: eps'(1-) - eps'(1+).

    ``CLOSED_FORM_INTEGRAL`` integrates the sign flip of dPhi_-/dx against the
    entropy kernel.  ``NUMERIC_LIMIT`` takes left derivatives at 1 - delta on a
    short delta ladder, extrapolating linearly in delta only if the ladder
    moves by more than 0.01.  eps'(1+) is measured with a forward stencil in
    both cases.
    """
    method = Method(method)
    right = epsilon_derivative(1.0, 1, step, Side.RIGHT, quad_tol)
    if method is Method.CLOSED_FORM_INTEGRAL:
        left = _closed_form_jump(quad_tol)
    else:
        deltas = np.array([1e-2, 10**-2.5, 1e-3])
        slopes = np.array([epsilon_derivative(1.0 - d, 1, step, Side.LEFT, quad_tol) for d in deltas])
        if np.ptp(slopes) > 0.01:
            left = float(np.polyval(np.polyfit(deltas, slopes, 1), 0.0))
        else:
            left = float(slopes[-1])
    return CriticalReport(method=method.value, jump_left_derivative=left,
                          right_derivative=right, jump_value=left - right)


def divergence_exponent(x_window=(0.90, 0.99), n_points: int = 12,
                        step: float = 1e-4, quad_tol: float = 1e-8) -> CriticalReport:
    """Least-squares slope of ln eps''(x) against ln(1 - x) on ``x_window``.

    Sample points are log-spaced in 1 - x; eps'' uses left-sided differences
    so no stencil reaches x = 1.  ``fit_residual`` is the RMS deviation of the
    log-log fit.
    """
    x_lo, x_hi = map(float, x_window)
    if not 0.0 < x_lo < x_hi < 1.0:
        raise ValueError("window must lie strictly inside (0, 1)")
    if n_points < 2:
        raise ValueError("need at least two points for a fit")
    dist = np.geomspace(1.0 - x_lo, 1.0 - x_hi, n_points)
    xs = 1.0 - dist
    d2 = np.array([epsilon_derivative(xv, 2, step, Side.LEFT, quad_tol) for xv in xs])
    if not np.all(np.isfinite(d2)) or np.any(d2 <= 0):
        raise ArithmeticError(f"second derivative not positive and finite on the window: {d2}")
    lx, ly = np.log(dist), np.log(d2)
    slope, icept = np.polyfit(lx, ly, 1)
    resid = float(np.sqrt(np.mean((ly - (slope * lx + icept)) ** 2)))
    return CriticalReport(divergence_exponent=float(slope), fit_window=(x_lo, x_hi),
                          fit_residual=resid,
                          fit_points=tuple((float(a), float(b)) for a, b in zip(xs, d2)))
