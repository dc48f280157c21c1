"""Transverse-field Ising chain in the free-fermion picture.

    H = -J sum_i sx_i sx_{i+1} - h sum_i sz_i      (periodic, N even)

After fermionization the ground state factorizes over momentum pairs
(q, -q), q > 0.  Each pair carries an eigenvalue p_q = |a_q|^2 of the
up-spin reduced density matrix; everything downstream is a function of
the ratio x = J/h only.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np


class Parity(enum.Enum):
    EVEN = "even"
    ODD = "odd"


@dataclass(frozen=True)
class Coupling:
    j: float
    h: float = 1.0

    def __post_init__(self):
        if self.h == 0:
            # h -> 0 and h = 0 are different ground states; no ratio here
            raise ValueError("transverse field h must be nonzero")
        if not (math.isfinite(self.j) and math.isfinite(self.h)):
            raise ValueError("coupling must be finite")

    @classmethod
    def from_ratio(cls, x: float) -> "Coupling":
        return cls(j=float(x), h=1.0)

    @property
    def x(self) -> float:
        return self.j / self.h


@dataclass(frozen=True)
class MomentumGrid:
    """Allowed momenta of an N-site periodic chain in one fermion-parity sector.

    ``q_positive`` holds the momenta strictly inside (0, pi).  For the odd
    sector the unpaired endpoints q = 0 and q = pi are listed in ``endpoints``.
    """

    n: int
    sector: Parity
    q_positive: np.ndarray
    endpoints: tuple = ()


def build_grid(n: int, sector: Parity = Parity.EVEN) -> MomentumGrid:
    if isinstance(n, bool) or int(n) != n or n < 2 or n % 2:
        raise ValueError(f"chain length must be an even integer >= 2, got {n!r}")
    n = int(n)
    sector = Parity(sector)
    if sector is Parity.EVEN:
        k = np.arange(1, n // 2 + 1)
        q = (2 * k - 1) * np.pi / n
        ends = ()
    else:
        k = np.arange(1, n // 2)
        q = 2 * k * np.pi / n
        ends = (0.0, math.pi)
    q.setflags(write=False)
    return MomentumGrid(n=n, sector=sector, q_positive=q, endpoints=ends)


def _one_plus_x_cos(x, q):
    # 1 + x cos q via half angles; exact where it vanishes at x = +-1
    return np.where(np.cos(q) >= 0,
                    (1.0 + x) - 2.0 * x * np.sin(0.5 * q) ** 2,
                    (1.0 - x) + 2.0 * x * np.cos(0.5 * q) ** 2)


def mode_zeta(x, q):
    """zeta_q = |1 + x cos q| / sqrt(1 + x^2 + 2x cos q), vectorized.

    The denominator is evaluated as |1 + x e^{iq}| (hypot) to avoid
    cancellation near the band edge.  At the 0/0 point (x = +-1 with
    1 + x cos q = 0) zeta is set to 0, its limit along the band.
    """
    x = np.asarray(x, dtype=float)
    q = np.asarray(q, dtype=float)
    re = _one_plus_x_cos(x, q)
    num = np.abs(re)
    lam = np.hypot(re, x * np.sin(q))
    with np.errstate(invalid="ignore", divide="ignore"):
        z = np.where(lam > 0, num / np.where(lam > 0, lam, 1.0), 0.0)
    return np.minimum(z, 1.0)


def mode_probability(x, q):
    """p_q = (1 - zeta_q) / 2, the smaller of |a_q|^2 and |b_q|^2."""
    return 0.5 * (1.0 - mode_zeta(x, q))


@dataclass(frozen=True)
class ModeSpectrum:
    x: float
    grid: MomentumGrid
    q: np.ndarray
    lam: np.ndarray
    zeta: np.ndarray
    p: np.ndarray

    @property
    def ground_energy(self) -> float:
        """E_0 = -sum_{q>0} 2 Lambda_q, in units of h (even-parity grid)."""
        return -2.0 * float(np.sum(self.lam))

    def swapped(self) -> "ModeSpectrum":
        """Spectrum with |a_q|^2 and |b_q|^2 exchanged (maximum-energy state)."""
        return ModeSpectrum(self.x, self.grid, self.q, self.lam, self.zeta, 1.0 - self.p)


def mode_spectrum(coupling, grid: MomentumGrid) -> ModeSpectrum:
    """Per-mode Lambda_q, zeta_q and p_q on ``grid``.

    ``coupling`` is either a :class:`Coupling` or the bare ratio x = J/h.
    Lambda_q is returned for h = 1 (i.e. in units of the field).
    """
    if not isinstance(coupling, Coupling):
        coupling = Coupling.from_ratio(coupling)
    x = coupling.x
    q = grid.q_positive
    lam = np.hypot(_one_plus_x_cos(x, q), x * np.sin(q))
    zeta = mode_zeta(x, q)
    p = 0.5 * (1.0 - zeta)
    for arr in (lam, zeta, p):
        arr.setflags(write=False)
    return ModeSpectrum(x=x, grid=grid, q=q, lam=lam, zeta=zeta, p=p)


def gap(x: float) -> float:
    """Gap between the p-band and the (1-p)-band: sqrt(1 - x^2) for |x| < 1, else 0."""
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    return math.sqrt(1.0 - x * x) if abs(x) < 1 else 0.0
