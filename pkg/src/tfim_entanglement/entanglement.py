"""Up/down-spin species entanglement per site.

Finite chains use the mode sum  eps_N = (1/N) sum_{q>0} H(p_q).  In the
thermodynamic limit the sum becomes an integral over the band variable
zeta = 1 - 2p, weighted by the measure of momenta whose zeta_q lies below
zeta; that measure is Phi_- - Phi_+, the arc between the two roots of
zeta_q = zeta.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np
from scipy.special import entr

from .model import Coupling, Parity, build_grid, mode_spectrum
from .quadrature import integrate

INFINITE = math.inf
_CLAMP = 1e-12
# upper cut of the t = -ln(1 - zeta) substitution; the tail beyond it is < 1e-18
_T_MAX = 50.0


@dataclass(frozen=True)
class EntanglementPoint:
    x: float
    size: Union[int, float]  # even chain length, or INFINITE
    epsilon: float
    eps_d1: Optional[float] = None
    eps_d2: Optional[float] = None


@dataclass(frozen=True)
class EigenvalueDensitySample:
    p: float
    x: float
    g: float


def binary_entropy(p):
    """Shannon entropy -p ln p - (1-p) ln(1-p) in nats; scalar or array."""
    arr = np.asarray(p, dtype=float)
    if np.any(arr < -_CLAMP) or np.any(arr > 1 + _CLAMP) or np.any(np.isnan(arr)):
        raise ValueError("probability outside [0, 1]")
    arr = np.clip(arr, 0.0, 1.0)
    out = entr(arr) + entr(1.0 - arr)
    return float(out) if out.ndim == 0 else out


def _ratio(coupling) -> float:
    return coupling.x if isinstance(coupling, Coupling) else float(coupling)


def epsilon_finite(x, n: int, sector=Parity.EVEN) -> EntanglementPoint:
    """Mode sum for an even chain; ``x`` is the ratio J/h or a Coupling."""
    x = _ratio(x)
    spec = mode_spectrum(x, build_grid(n, sector))
    eps = float(np.sum(binary_entropy(spec.p))) / n
    return EntanglementPoint(x=float(x), size=int(n), epsilon=eps)


def _half_angle(one_minus, one_plus):
    # Phi = arccos(c) from 1 - c and 1 + c, accurate near c = +-1
    return 2.0 * np.arctan2(np.sqrt(one_minus), np.sqrt(one_plus))


def phi_pm(zeta, x: float):
    """Angles Phi_-, Phi_+ bounding the momenta with zeta_q < zeta.

        cos Phi_pm = (zeta^2 - 1 +- zeta sgn(x) sqrt(zeta^2 + x^2 - 1)) / x

    Evaluated through 1 -+ cos Phi in rationalized form so that neither
    angle loses digits near 0 or pi.  Vectorized over ``zeta``.
    Raises ValueError outside the support zeta^2 + x^2 >= 1.
    """
    if x == 0 or not math.isfinite(x):
        raise ValueError("x must be finite and nonzero")
    z = np.asarray(zeta, dtype=float)
    if np.any(z < -_CLAMP) or np.any(z > 1 + _CLAMP):
        raise ValueError("zeta outside [0, 1]")
    z = np.clip(z, 0.0, 1.0)
    a = abs(x)
    disc = z * z + (a - 1.0) * (a + 1.0)
    if np.any(disc < -_CLAMP):
        raise ValueError("zeta^2 + x^2 < 1: outside the support of the band")
    zr = z * np.sqrt(np.maximum(disc, 0.0))
    om = (1.0 - z) * (1.0 + z)

    # Phi_- : 1 + cos cancels, rationalize it
    den = a - 1.0 + z * z + zr
    with np.errstate(invalid="ignore", divide="ignore"):
        plus_m = np.where(den > 0, (a - 1.0) ** 2 * om / (a * np.where(den > 0, den, 1.0)), 0.0)
    minus_m = (a + 1.0 - z * z + zr) / a
    # Phi_+ : 1 - cos cancels
    plus_p = (a - 1.0 + z * z + zr) / a
    minus_p = (a + 1.0) ** 2 * om / (a * (a + 1.0 - z * z + zr))

    phi_minus = _half_angle(minus_m, plus_m)
    phi_plus = _half_angle(minus_p, plus_p)
    if x < 0:
        # cos Phi_pm(-x) = -cos Phi_mp(x)
        phi_minus, phi_plus = np.pi - phi_plus, np.pi - phi_minus
    # the roots coincide at the band edge; keep rounding from reordering them
    phi_minus = np.maximum(phi_minus, phi_plus)
    if phi_minus.ndim == 0:
        return float(phi_minus), float(phi_plus)
    return phi_minus, phi_plus


def g_of_p(p, x: float):
    """Integrated density of eigenvalues: fraction (per site) of modes with p_q < p.

    Thermodynamic-limit closed form; saturates at 1/2 for p >= 1/2.
    Vectorized over ``p``.
    """
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    parr = np.asarray(p, dtype=float)
    if np.any(parr < -_CLAMP) or np.any(parr > 1 + _CLAMP):
        raise ValueError("p outside [0, 1]")
    parr = np.clip(parr, 0.0, 1.0)
    zeta = 1.0 - 2.0 * parr
    out = np.full(parr.shape, 0.5)
    if x == 0:
        # every p_q = 0: the whole band sits at the origin
        out[parr <= 0] = 0.0
    else:
        inside = (parr < 0.5) & (zeta * zeta + (abs(x) - 1.0) * (abs(x) + 1.0) >= 0)
        if np.any(inside):
            phi_m, phi_p = phi_pm(zeta[inside], x)
            out[inside] = 0.5 - (np.asarray(phi_m) - np.asarray(phi_p)) / (2 * np.pi)
    out = np.clip(out, 0.0, 0.5)
    return float(out) if out.ndim == 0 else out


def band_edge(x: float) -> float:
    """Lower end of the zeta band, sqrt(1 - x^2) for |x| < 1 and 0 otherwise."""
    a = abs(x)
    return math.sqrt((1.0 - a) * (1.0 + a)) if a < 1 else 0.0


def epsilon_infinite(x, quad_tol: float = 1e-8) -> EntanglementPoint:
    """eps(x) = 1/(4 pi) int_{zeta_0}^1 ln((1+z)/(1-z)) (Phi_- - Phi_+) dz.

    The range is split at the midpoint.  The lower half uses z = zeta_0 + s^2,
    which removes the square-root onset of the arc at the band edge; the upper
    half uses z = 1 - exp(-t), which turns the logarithmic endpoint into an
    exponentially decaying tail.  Raises QuadratureError on non-convergence.
    """
    x = _ratio(x)
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    if x == 0:
        return EntanglementPoint(x=0.0, size=INFINITE, epsilon=0.0)
    z0 = band_edge(x)
    zm = 0.5 * (z0 + 1.0)
    s_max = math.sqrt(zm - z0)
    t_min = -math.log1p(-zm)

    def arc(z):
        phi_m, phi_p = phi_pm(z, x)
        return np.asarray(phi_m) - np.asarray(phi_p)

    def lower(s):
        z = z0 + s * s
        return (np.log1p(z) - np.log1p(-z)) * arc(z) * 2.0 * s

    def upper(t):
        w = np.exp(-t)
        z = 1.0 - w
        return (np.log(2.0 - w) + t) * arc(z) * w

    tol = 4 * np.pi * quad_tol / 2
    v1, _ = integrate(lower, 0.0, s_max, tol=tol)
    v2, _ = integrate(upper, t_min, _T_MAX, tol=tol, breakpoints=(t_min + 1, t_min + 4, t_min + 10))
    return EntanglementPoint(x=float(x), size=INFINITE, epsilon=(v1 + v2) / (4 * np.pi))
