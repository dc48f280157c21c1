import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tfim_entanglement import Coupling, Parity, build_grid, gap, mode_spectrum, mode_zeta
from conftest import P_HALF_PI


def test_even_grids():
    assert np.allclose(build_grid(2, Parity.EVEN).q_positive, [np.pi / 2])
    assert np.allclose(build_grid(4, Parity.EVEN).q_positive, [np.pi / 4, 3 * np.pi / 4])


def test_odd_grid_has_endpoints():
    g = build_grid(4, Parity.ODD)
    assert np.allclose(g.q_positive, [np.pi / 2])
    assert g.endpoints == (0.0, math.pi)


@pytest.mark.parametrize("n", [0, -2, 3, 7, 2.5, True])
def test_grid_rejects_bad_sizes(n):
    with pytest.raises(ValueError):
        build_grid(n)


@pytest.mark.parametrize("n", [2, 6, 10, 64, 1000])
def test_grid_counts_and_symmetry(n):
    even = build_grid(n)
    assert len(even.q_positive) == n // 2
    assert np.all(np.diff(even.q_positive) > 0)
    assert np.allclose(np.sort(np.pi - even.q_positive), even.q_positive, atol=1e-13)
    odd = build_grid(n, "odd")
    assert len(odd.q_positive) == n // 2 - 1


def test_zero_coupling_has_no_weight():
    spec = mode_spectrum(0.0, build_grid(10))
    assert np.all(spec.p == 0)
    assert np.all(spec.zeta == 1)


def test_critical_mode_at_half_pi():
    spec = mode_spectrum(1.0, build_grid(2))
    assert spec.zeta[0] == pytest.approx(1 / math.sqrt(2), abs=1e-15)
    assert spec.p[0] == pytest.approx(P_HALF_PI, abs=1e-15)


def test_degenerate_mode_limit():
    # zeta = |cos(q/2)| at x = 1; approach q = pi before trusting the branch
    near = mode_zeta(1.0, np.pi - 1e-6)
    assert near == pytest.approx(abs(math.cos((np.pi - 1e-6) / 2)), rel=1e-6)
    assert near < 1e-6
    odd = build_grid(4, Parity.ODD)
    assert mode_zeta(1.0, odd.endpoints[1]) == pytest.approx(0.0, abs=1e-15)
    assert mode_zeta(-1.0, odd.endpoints[0]) == 0.0


def test_gap_values():
    assert gap(0.0) == 1.0
    assert gap(0.6) == pytest.approx(0.8, abs=1e-15)
    assert gap(1.5) == 0.0
    assert gap(-1.0) == 0.0


def test_coupling_rejects_zero_field():
    with pytest.raises(ValueError):
        Coupling(1.0, 0.0)
    assert Coupling.from_ratio(0.3).x == 0.3


@given(x=st.floats(-20, 20), n=st.sampled_from([2, 4, 6, 10, 32, 100]))
def test_mode_bounds_and_normalization(x, n):
    spec = mode_spectrum(x, build_grid(n))
    assert np.all((spec.p >= 0) & (spec.p <= 0.5))
    assert np.all((spec.zeta >= 0) & (spec.zeta <= 1))
    b2 = spec.swapped().p
    assert np.allclose(spec.p + b2, 1.0, atol=1e-15)


@given(x=st.floats(-0.999, 0.999), n=st.sampled_from([2, 8, 64, 512, 4096]))
def test_band_stays_below_gap(x, n):
    spec = mode_spectrum(x, build_grid(n))
    assert spec.p.max() <= (1 - gap(x)) / 2 + 1e-9
    assert np.min(1 - 2 * spec.p) >= gap(x) - 1e-9


@pytest.mark.parametrize("x", [0.1, 0.5, 0.8, 0.95])
def test_band_edge_resolved_at_large_n(x, grid4096):
    spec = mode_spectrum(x, grid4096)
    assert np.min(spec.zeta) - gap(x) <= 2 * math.pi * abs(x) / 4096


@given(x=st.floats(-10, 10), n=st.sampled_from([2, 4, 10, 50, 256]))
def test_spectrum_even_in_x(x, n):
    g = build_grid(n)
    assert np.allclose(np.sort(mode_spectrum(x, g).p), np.sort(mode_spectrum(-x, g).p), atol=1e-12)


@given(x=st.floats(-10, 10))
def test_spectrum_depends_only_on_ratio(x):
    g = build_grid(20)
    a = mode_spectrum(Coupling(2 * x, 2.0), g)
    b = mode_spectrum(Coupling(x, 1.0), g)
    for f in ("lam", "zeta", "p"):
        assert np.allclose(getattr(a, f), getattr(b, f), atol=1e-14, rtol=0)
