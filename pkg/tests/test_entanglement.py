import math

import numpy as np
import pytest
import scipy.integrate
from hypothesis import given, settings, strategies as st

from tfim_entanglement import (INFINITE, Parity, binary_entropy, build_grid, epsilon_finite,
                               epsilon_infinite, g_of_p, mode_probability, mode_spectrum,
                               phi_pm)
from conftest import EPS_ORDERED, H_P_HALF_PI, P_HALF_PI


def test_binary_entropy_values():
    assert binary_entropy(0.0) == 0.0
    assert binary_entropy(1.0) == 0.0
    assert binary_entropy(0.5) == pytest.approx(math.log(2), abs=1e-15)
    assert binary_entropy(P_HALF_PI) == pytest.approx(H_P_HALF_PI, abs=1e-15)
    # rounded figure quoted for this mode
    assert binary_entropy(0.1464466) == pytest.approx(0.41652, abs=5e-5)


def test_binary_entropy_clamp():
    assert binary_entropy(-1e-13) == 0.0
    assert binary_entropy(1 + 1e-13) == 0.0
    for bad in (-1e-6, 1.01, float("nan")):
        with pytest.raises(ValueError):
            binary_entropy(bad)


@given(st.floats(0, 1))
def test_binary_entropy_symmetric(p):
    # 1 - p rounds for tiny p; (1 - q, q) is an exactly complementary pair
    q = 1 - p
    assert binary_entropy(1 - q) == pytest.approx(binary_entropy(q), abs=1e-15)
    assert 0 <= binary_entropy(p) <= math.log(2) + 1e-15


def test_epsilon_finite_examples():
    assert epsilon_finite(0.0, 10).epsilon == 0.0
    assert epsilon_finite(1.0, 2).epsilon == pytest.approx(H_P_HALF_PI / 2, abs=1e-15)
    assert epsilon_finite(0.5, 4).epsilon == pytest.approx(epsilon_finite(-0.5, 4).epsilon, abs=1e-15)
    pt = epsilon_finite(0.7, 8)
    assert pt.size == 8 and pt.eps_d1 is None


def test_epsilon_finite_odd_sector_runs():
    assert epsilon_finite(0.5, 6, Parity.ODD).epsilon > 0


@given(x=st.floats(-50, 50), n=st.sampled_from([2, 4, 10, 20, 100]))
def test_epsilon_finite_bounds_even_and_swap(x, n):
    e = epsilon_finite(x, n).epsilon
    assert 0 <= e <= math.log(2)
    assert epsilon_finite(-x, n).epsilon == pytest.approx(e, abs=1e-14)
    spec = mode_spectrum(x, build_grid(n))
    swapped = np.sum(binary_entropy(spec.swapped().p)) / n
    assert swapped == pytest.approx(e, abs=1e-14)


# --- Phi_pm -------------------------------------------------------------------

def test_phi_at_zeta_one():
    for x in (0.4, 1.0, 3.0):
        pm, pp = phi_pm(1.0, x)
        assert pm == pytest.approx(math.pi, abs=1e-15)
        assert pp == pytest.approx(0.0, abs=1e-15)


def test_phi_meet_at_band_edge():
    for x in (0.2, 0.6, 0.95):
        pm, pp = phi_pm(math.sqrt(1 - x * x), x)
        assert pm == pytest.approx(pp, abs=1e-7)


def test_phi_large_x_limit():
    # cos Phi_pm -> +-zeta; check the trend before relying on the limit
    gaps = [abs(phi_pm(0.5, x)[0] - math.acos(-0.5)) for x in (1e2, 1e4, 1e6)]
    assert gaps[0] > gaps[1] > gaps[2]
    pm, pp = phi_pm(0.5, 1e6)
    assert pm == pytest.approx(math.acos(-0.5), abs=1e-5)
    assert pp == pytest.approx(math.acos(0.5), abs=1e-5)


def test_phi_out_of_support():
    with pytest.raises(ValueError):
        phi_pm(0.1, 0.5)
    with pytest.raises(ValueError):
        phi_pm(0.5, 0.0)


@given(zeta=st.floats(0, 1), x=st.one_of(st.floats(-30, -0.01), st.floats(0.01, 30)))
def test_phi_roots_solve_band_equation(zeta, x):
    if zeta * zeta + x * x < 1:
        return
    pm, pp = phi_pm(zeta, x)
    assert 0 <= pp <= pm <= math.pi
    lit = lambda s: (zeta**2 - 1 + s * zeta * np.sign(x) * math.sqrt(zeta**2 + x * x - 1)) / x
    assert math.cos(pm) == pytest.approx(np.clip(lit(-1), -1, 1), abs=1e-9)
    assert math.cos(pp) == pytest.approx(np.clip(lit(+1), -1, 1), abs=1e-9)


# --- g(p, x) ------------------------------------------------------------------

def counting_density(p, x, grid):
    """Fraction (per site) of grid modes with p_q below p."""
    pq = mode_probability(x, grid.q_positive)
    return np.array([np.count_nonzero(pq < pv) for pv in np.atleast_1d(p)]) / grid.n


def test_g_examples(grid4096):
    assert g_of_p(0.6, 0.8) == 0.5
    assert g_of_p(0.5, 0.8) == 0.5
    assert g_of_p(0.0, 0.8) == 0.0
    assert g_of_p(1e-9, 0.8) < 1e-4
    assert g_of_p(0.1, 0.8) == pytest.approx(counting_density(0.1, 0.8, grid4096)[0], abs=2 / 4096)


def test_g_is_x_independent_in_ordered_phase():
    p = np.linspace(0, 1, 201)
    assert np.max(np.abs(g_of_p(p, 1.2) - g_of_p(p, 7.0))) <= 1e-10
    assert np.max(np.abs(g_of_p(p, -2.0) - g_of_p(p, 1.0))) <= 1e-10


@settings(max_examples=30)
@given(x=st.one_of(st.floats(-5, -0.05), st.floats(0.05, 5)))
def test_g_monotone_and_bounded(x):
    p = np.linspace(0, 1, 301)
    g = g_of_p(p, x)
    assert np.all(np.diff(g) >= -1e-14)
    assert np.all((g >= 0) & (g <= 0.5))
    assert np.all(g[p > 0.5] == 0.5)


def test_g_at_zero_coupling():
    assert g_of_p(0.0, 0.0) == 0.0
    assert g_of_p(0.2, 0.0) == 0.5


# --- thermodynamic limit -----------------------------------------------------

def q_integral(x):
    """(1/2pi) int_0^pi H(p(q)) dq straight from the mode formulas (scipy)."""
    pts = [math.acos(-1 / x)] if abs(x) > 1 else None
    val, _ = scipy.integrate.quad(lambda q: binary_entropy(mode_probability(x, q)), 0, math.pi,
                                  points=pts, epsabs=1e-13, limit=200)
    return val / (2 * math.pi)


def test_epsilon_infinite_reference_values():
    # mpmath, 40 digits, via the q-integral
    assert epsilon_infinite(0.3).epsilon == pytest.approx(0.029485675376855042, abs=1e-12)
    assert epsilon_infinite(0.9).epsilon == pytest.approx(0.16516415869319861, abs=1e-12)
    assert epsilon_infinite(0.0).epsilon == 0.0
    assert epsilon_infinite(0.0).size == INFINITE


@pytest.mark.parametrize("x", [0.05, 0.3, 0.7, 0.9, 0.99, 0.9999, 1.0, 1.01, 2.5, -0.6, -1.7])
def test_two_routes_agree(x):
    assert epsilon_infinite(x).epsilon == pytest.approx(q_integral(x), abs=1e-6)
    assert epsilon_infinite(x, 1e-12).epsilon == pytest.approx(q_integral(x), abs=1e-11)


@pytest.mark.parametrize("x", [1.0, 1.5, 3.0, 10.0, 1e6, -4.0])
def test_ordered_phase_plateau(x):
    assert epsilon_infinite(x).epsilon == pytest.approx(EPS_ORDERED, abs=1e-12)


@pytest.mark.parametrize("x", [0.3, 0.9, 1.5])
def test_epsilon_infinite_even(x):
    assert epsilon_infinite(x).epsilon == pytest.approx(epsilon_infinite(-x).epsilon, abs=1e-8)


def test_epsilon_infinite_monotone_below_critical():
    xs = np.linspace(0, 0.999, 50)
    e = np.array([epsilon_infinite(x).epsilon for x in xs])
    assert np.all(np.diff(e) >= 0)


def test_finite_size_convergence():
    x = 0.6
    target = epsilon_infinite(x, 1e-12).epsilon
    diffs = [abs(epsilon_finite(x, n).epsilon - target) for n in (64, 256, 1024, 4096)]
    assert all(a > b for a, b in zip(diffs, diffs[1:]))
    assert all(d * n <= 1.0 for d, n in zip(diffs, (64, 256, 1024, 4096)))
