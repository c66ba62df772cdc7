import math
import warnings

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bathent.model import UNBOUNDED, AtomPairGeometry, ThermalBath
from bathent.spectral import (NEAR_BOUNDARY_CUTOFF, KossakowskiSet, RatioWarning, kossakowski,
                              kossakowski_matrix, one_minus_sinc, ratio_A_far, ratio_A_near_boundary,
                              ratio_A_squared, ratio_A_squared_dimensionless, ratio_B_squared, sinc,
                              sinc_diff, spectral_cross, spectral_same)

from oracles import block

mp.mp.dps = 40


def mp_sinc(x):
    x = mp.mpf(x)
    return mp.mpf(1) if x == 0 else mp.sin(x) / x


def mp_ratio(omegaL, zOverL):
    x, r = mp.mpf(omegaL), mp.mpf(zOverL)
    num = mp_sinc(x) - mp_sinc(x * mp.sqrt(1 + 4 * r * r))
    den = 1 - mp_sinc(2 * x * r)
    return (num / den) ** 2


# ---- sinc family -----------------------------------------------------------

def test_sinc_removable_singularity():
    assert sinc(0.0) == 1.0


def test_sinc_zero_at_pi():
    assert abs(sinc(math.pi)) < 1e-15


def test_sinc_frozen_value():
    # mpmath, 50 digits
    assert sinc(2.027) == pytest.approx(0.44288673338983387, rel=1e-15)


@pytest.mark.parametrize("x", [1e-12, 3e-7, 9.9e-5, 1.01e-4, 1e-3, 0.3, -2.0, 17.0])
def test_sinc_against_mpmath(x):
    assert sinc(x) == pytest.approx(float(mp_sinc(x)), rel=1e-14)


@pytest.mark.parametrize("x", [1e-9, 1e-5, 1e-3, 0.1, 0.49, 0.51, 2.0, 40.0])
def test_one_minus_sinc_relative_accuracy(x):
    exact = 1 - mp_sinc(x)
    assert one_minus_sinc(x) == pytest.approx(float(exact), rel=1e-13)


@pytest.mark.parametrize("a,b", [(0.1, 0.1 + 1e-9), (1e-3, 2e-3), (0.3, 0.7), (2.027, 2.027 + 1e-10), (3.0, 30.0)])
def test_sinc_diff_relative_accuracy(a, b):
    exact = mp_sinc(a) - mp_sinc(mp.mpf(a) + (mp.mpf(b) - mp.mpf(a)))
    assert sinc_diff(a, b, b - a) == pytest.approx(float(exact), rel=1e-8 if b - a < 1e-8 else 1e-13)


# ---- spectral densities ---------------------------------------------------

def test_same_vanishes_at_the_plate():
    z, lam = 1e-9, 1.0
    value = spectral_same(lam, ThermalBath(1.0), z)
    expected = lam / (1 - math.exp(-lam)) * (2 * z * lam) ** 2 / 6 / (2 * math.pi)
    assert value == pytest.approx(expected, rel=1e-9)
    assert value < 1e-17


def test_same_unbounded_zero_temperature():
    assert spectral_same(1.0, ThermalBath(math.inf), UNBOUNDED) == pytest.approx(1 / (2 * math.pi), rel=1e-15)
    assert spectral_same(-1.0, ThermalBath(math.inf), UNBOUNDED) == 0.0


def test_planck_limit_at_zero_frequency():
    assert spectral_same(0.0, ThermalBath(2.0), UNBOUNDED) == pytest.approx(1 / (2 * 2.0 * math.pi))
    # the boundary factor kills the zero-frequency mode
    assert spectral_same(0.0, ThermalBath(2.0), 1.0) == 0.0


@pytest.mark.parametrize("beta", [0.1, 1.0, 7.5])
@pytest.mark.parametrize("z", [0.3, 4.0, UNBOUNDED])
def test_detailed_balance(beta, z):
    bath = ThermalBath(beta)
    for lam in (0.2, 1.0, 3.3):
        assert spectral_same(-lam, bath, z) == pytest.approx(math.exp(-beta * lam) * spectral_same(lam, bath, z), rel=1e-12)
        assert spectral_cross(-lam, bath, z, 1.7) == pytest.approx(
            math.exp(-beta * lam) * spectral_cross(lam, bath, z, 1.7), rel=1e-12)


def test_cross_equals_same_at_zero_separation():
    bath = ThermalBath(1.3)
    for lam in (-2.0, 0.5, 1.0):
        assert spectral_cross(lam, bath, 0.7, 0.0) == spectral_same(lam, bath, 0.7)


def test_cross_decays_with_separation_unbounded():
    assert abs(spectral_cross(1.0, ThermalBath(1.0), UNBOUNDED, 1e9)) < 1e-9


def test_cross_frozen_value():
    # lambda=1, beta=1, z=1, L=1 in 50-digit arithmetic
    assert spectral_cross(1.0, ThermalBath(1.0), 1.0, 1.0) == pytest.approx(0.12327776611927423, rel=1e-14)
    assert spectral_same(1.0, ThermalBath(1.0), 1.0) == pytest.approx(0.13730822668182140, rel=1e-14)


# ---- Kossakowski coefficients --------------------------------------------

def test_zero_temperature_coefficients():
    g = AtomPairGeometry(omega=1.3, L=0.9, z=0.4)
    c = kossakowski(g, ThermalBath(math.inf))
    expected = 1.3 / (4 * math.pi) * (1 - math.sin(2 * 0.4 * 1.3) / (2 * 0.4 * 1.3))
    assert c.A1 == pytest.approx(expected, rel=1e-14)
    assert c.B1 == c.A1


@pytest.mark.parametrize("z", [0.01, 1.0, 50.0, UNBOUNDED])
def test_zero_separation_blocks_coincide(z):
    c = kossakowski(AtomPairGeometry(omega=1.0, L=0.0, z=z), ThermalBath(0.8))
    assert (c.A2, c.B2, c.C2) == (c.A1, c.B1, c.C1)


@pytest.mark.parametrize("omegaL", [0.3, 2.027, 9.0])
def test_unbounded_cross_ratio(omegaL):
    c = kossakowski(AtomPairGeometry(omega=1.0, L=omegaL), ThermalBath(2.0))
    assert c.A2 / c.A1 == pytest.approx(sinc(omegaL), rel=1e-14)


def _kossakowski_from_spectra(geometry, bath, pair):
    """C_ij = sum_xi G(xi w) psi^xi_ki psi^-xi_kj built from the spectral functions."""
    n, w = geometry.n, geometry.omega
    E = np.einsum("ijk,k->ij", np.array(_levi()), n)
    P = np.eye(3) - np.outer(n, n)
    psi = {1: 0.5 * (P + 1j * E), -1: 0.5 * (P - 1j * E), 0: np.outer(n, n)}
    if pair == "same":
        G = lambda lam: spectral_same(lam, bath, geometry.z)  # noqa: E731
    else:
        G = lambda lam: spectral_cross(lam, bath, geometry.z, geometry.L)  # noqa: E731
    return sum(G(xi * w) * psi[xi].T @ psi[-xi] for xi in (1, -1, 0))


def _levi():
    e = np.zeros((3, 3, 3))
    e[0, 1, 2] = e[1, 2, 0] = e[2, 0, 1] = 1
    e[0, 2, 1] = e[2, 1, 0] = e[1, 0, 2] = -1
    return e


@pytest.mark.parametrize("omega,L,z,beta", [(1.0, 2.0, 0.5, 1.5), (0.7, 0.0, 3.0, 0.4), (2.0, 5.0, 0.01, 9.0)])
@pytest.mark.parametrize("pair", ["same", "cross"])
def test_matrix_matches_spectral_construction(omega, L, z, beta, pair):
    n = np.array([0.2, -0.4, 0.6])
    g = AtomPairGeometry(omega=omega, L=L, z=z, n=n / np.linalg.norm(n))
    bath = ThermalBath(beta)
    direct = kossakowski_matrix(kossakowski(g, bath), g.n, pair)
    assert np.allclose(direct, _kossakowski_from_spectra(g, bath, pair), atol=1e-14, rtol=1e-12)


def test_same_pair_eigenvalues_along_third_axis():
    c = kossakowski(AtomPairGeometry(omega=1.0, L=1.0, z=0.8), ThermalBath(1.2))
    ev = np.linalg.eigvalsh(kossakowski_matrix(c, (0, 0, 1), "same"))
    assert np.allclose(ev, sorted([0.0, c.A1 + c.B1, c.A1 - c.B1]), atol=1e-15)


def test_matrix_real_when_b_vanishes():
    m = kossakowski_matrix(KossakowskiSet(1.0, 0.0, -1.0, 0.3, 0.0, -0.3), (0.6, 0.0, 0.8), "same")
    assert np.all(m.imag == 0) and np.allclose(m, m.T)


def test_cross_matrix_equals_same_at_zero_separation():
    c = kossakowski(AtomPairGeometry(omega=1.0, L=0.0, z=0.8), ThermalBath(1.2))
    assert np.array_equal(kossakowski_matrix(c, (0, 0, 1), "cross"), kossakowski_matrix(c, (0, 0, 1), "same"))


def test_matrix_matches_oracle_block():
    c = KossakowskiSet(1.0, 0.4, -1.0, 0.2, 0.08, -0.2)
    n = (0.0, 0.6, 0.8)
    assert np.allclose(kossakowski_matrix(c, n, "cross"), block(0.2, 0.08, -0.2, n))
    with pytest.raises(ValueError):
        kossakowski_matrix(c, n, "diagonal")


geometries = st.builds(
    lambda w, L, r, unb, th, ph: AtomPairGeometry(
        omega=w, L=L, z=UNBOUNDED if unb else r * max(L, 1e-3),
        n=(math.sin(th) * math.cos(ph), math.sin(th) * math.sin(ph), math.cos(th))),
    st.floats(0.05, 20), st.floats(0.0, 20), st.floats(1e-3, 100), st.booleans(),
    st.floats(0, math.pi), st.floats(0, 2 * math.pi))
baths = st.one_of(st.just(ThermalBath(math.inf)), st.floats(0.01, 50).map(ThermalBath))


@settings(max_examples=300)
@given(geometries, baths)
def test_kossakowski_invariants(g, bath):
    c = kossakowski(g, bath)
    assert c.C1 == -c.A1 and c.C2 == -c.A2
    assert c.A1 >= 0 and c.B1 >= 0 and c.A1 >= c.B1
    if bath.zero_temperature:
        assert c.B1 == c.A1
    assert c.B1 * c.A2 == pytest.approx(c.B2 * c.A1, rel=1e-12, abs=1e-300)
    m = kossakowski_matrix(c, g.n, "same")
    assert np.allclose(m, m.conj().T)
    assert np.linalg.eigvalsh(m)[0] >= -1e-12


# ---- amplitude ratios -------------------------------------------------------

def test_ratio_unbounded_baseline():
    assert ratio_A_squared(AtomPairGeometry(omega=1.0, L=2.027)) == pytest.approx(0.196, abs=1e-3)


def test_ratio_near_boundary_peak():
    assert ratio_A_squared(AtomPairGeometry(omega=1.0, L=2.027, z=2.027e-9)) == pytest.approx(0.416, abs=1e-3)


def test_ratio_zero_separation_is_one():
    assert ratio_A_squared(AtomPairGeometry(omega=1.0, L=0.0, z=0.3)) == 1.0


@pytest.mark.parametrize("omegaL,zOverL", [(0.05, 0.2), (2.027, 1e-3), (2.027, 1.1e-6), (2.027, 0.9e-6),
                                           (5.0, 0.5), (12.0, 7.0), (0.5, 80.0), (19.0, 1e-5)])
def test_ratio_against_extended_precision(omegaL, zOverL):
    assert ratio_A_squared_dimensionless(omegaL, zOverL) == pytest.approx(float(mp_ratio(omegaL, zOverL)),
                                                                          rel=1e-10, abs=1e-14)


@pytest.mark.parametrize("omegaL", [0.01, 0.3, 2.027, 7.0, 19.5])
def test_ratio_branches_agree_at_cutoff(omegaL):
    above = ratio_A_squared_dimensionless(omegaL, NEAR_BOUNDARY_CUTOFF * (1 + 1e-9))
    below = ratio_A_squared_dimensionless(omegaL, NEAR_BOUNDARY_CUTOFF * (1 - 1e-9))
    assert above == pytest.approx(below, abs=1e-10)


@settings(max_examples=400)
@given(st.floats(1e-3, 20), st.floats(1e-4, 100))
def test_ratio_bounded_by_one(omegaL, zOverL):
    with warnings.catch_warnings():
        warnings.simplefilter("error", RatioWarning)
        value = ratio_A_squared_dimensionless(omegaL, zOverL)
    assert 0 <= value <= 1 + 1e-12


@given(st.floats(0.1, 10), st.floats(0.1, 10), st.floats(0.01, 10), st.floats(0.1, 10))
def test_ratio_scale_invariance(s, omega, L, z):
    a = ratio_A_squared(AtomPairGeometry(omega, L, z))
    b = ratio_A_squared(AtomPairGeometry(omega * s, L / s, z / s))
    assert a == pytest.approx(b, rel=1e-12, abs=1e-15)


@given(st.floats(0.01, 30))
def test_ratio_unbounded_is_sinc_squared(x):
    assert ratio_A_squared(AtomPairGeometry(1.0, x)) == sinc(x) ** 2


def test_ratio_B():
    assert ratio_B_squared(ThermalBath(math.inf), 1.0) == 1.0
    assert ratio_B_squared(ThermalBath(2.9094), 1.0) == pytest.approx(0.80392441572716538, rel=1e-14)
    assert ratio_B_squared(ThermalBath(1e-9), 1.0) < 1e-18
    with pytest.raises(ValueError):
        ratio_B_squared(ThermalBath(1.0), 0.0)


def test_near_boundary_leading_term():
    assert ratio_A_near_boundary(1e-6) == pytest.approx(1.0, abs=1e-12)
    assert ratio_A_near_boundary(2.027) == pytest.approx(0.416, abs=1e-3)
    # 50-digit evaluation of 9 (sin x - x cos x)^2 / x^6
    assert ratio_A_near_boundary(2.027) == pytest.approx(0.41607511638161467, rel=1e-13)


@pytest.mark.parametrize("omegaL", [0.01, 0.4, 0.6, 2.027, 8.0])
def test_near_boundary_matches_full_ratio(omegaL):
    full = ratio_A_squared_dimensionless(omegaL, 1e-5)
    assert ratio_A_near_boundary(omegaL) == pytest.approx(full, abs=1e-6)


@pytest.mark.parametrize("omegaL", [0.3, 2.027, 5.0])
def test_near_boundary_correction_is_second_order(omegaL):
    lead, corr = ratio_A_near_boundary(omegaL, with_correction=True)
    for r in (1e-2, 3e-3):
        resid = float(mp_ratio(omegaL, r)) - (lead + corr * r * r)
        assert abs(resid) < 50 * r**4


def test_near_boundary_rejects_nonpositive():
    with pytest.raises(ValueError):
        ratio_A_near_boundary(0.0)


def test_far_field_limits():
    assert ratio_A_far(2.027, math.inf) == sinc(2.027) ** 2
    assert abs(ratio_A_far(2.027, 100.0) - ratio_A_squared_dimensionless(2.027, 100.0)) < 1e-3
    with pytest.raises(ValueError):
        ratio_A_far(2.027, 9.99)


@pytest.mark.parametrize("zOverL", [10.0, 33.0, 400.0])
def test_far_field_at_pi_is_pure_correction(zOverL):
    x = math.pi
    expected = (1 / zOverL) * math.sin(x) / x**3 * (
        math.sin(x) * math.sin(2 * x * zOverL) - x * math.sin(x * math.sqrt(1 + 4 * zOverL**2)))
    assert sinc(x) ** 2 < 1e-30
    assert ratio_A_far(x, zOverL) == pytest.approx(expected, rel=1e-12, abs=1e-30)


@pytest.mark.parametrize("omegaL", [0.5, 2.027, 6.0])
@pytest.mark.parametrize("zOverL", [10.0, 60.0])
def test_far_field_validated_against_full_formula(omegaL, zOverL):
    assert abs(ratio_A_far(omegaL, zOverL) - float(mp_ratio(omegaL, zOverL))) < 1e-3
