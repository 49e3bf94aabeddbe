import numpy as np
import pytest

from .conftest import random_lines, random_momentum
from emulaser import gamma_oracle as g
from emulaser.bessel_dressing import dressing_coefficients, dressing_table
from emulaser.core_math import CONSTANTS, FourVector
from emulaser.laser_field import LaserField, bessel_argument

M_E, M_MU = CONSTANTS.m_e, CONSTANTS.m_mu


def test_clifford_and_traces():
    for mu in range(4):
        assert abs(np.trace(g.GAMMA[mu])) == 0
        for nu in range(4):
            anti = g.GAMMA[mu] @ g.GAMMA[nu] + g.GAMMA[nu] @ g.GAMMA[mu]
            assert np.max(np.abs(anti - 2 * g.METRIC[mu, nu] * np.eye(4))) < 1e-15
            assert np.trace(g.GAMMA[mu] @ g.GAMMA[nu]) == pytest.approx(4 * g.METRIC[mu, nu])
    three = np.einsum("aij,bjk,cki->abc", g.GAMMA, g.GAMMA, g.GAMMA)
    assert np.max(np.abs(three)) < 1e-14


def test_slash_identities(rng):
    assert np.all(g.slash(FourVector(0, 0, 0, 0)) == 0)
    k = FourVector(1.17, 0, 0, 1.17)
    assert np.max(np.abs(g.slash(k) @ g.slash(k))) < 1e-15
    for _ in range(20):
        a, b = (FourVector(*rng.normal(size=4)) for _ in range(2))
        assert np.trace(g.slash(a) @ g.slash(b)).real == pytest.approx(4 * a.dot(b), rel=1e-12, abs=1e-12)
        assert np.allclose(g.slash(a) @ g.slash(a), a.dot(a) * np.eye(4), atol=1e-12)


def test_bar_matches_explicit_mirror(rng):
    laser, p1, p3, _, _ = random_lines(rng, 1e8)
    chi = g.vertex_factors(p1, p3, laser)
    assert np.max(np.abs(g.dirac_bar(chi) - g.vertex_factors_bar(p1, p3, laser))) < 1e-14 * np.max(np.abs(chi))


def test_free_electron_tensor_textbook(rng):
    laser = LaserField(1.17, 0.0)
    for _ in range(10):
        p1, p3 = random_momentum(rng, M_E, 3e6), random_momentum(rng, M_E, 3e6)
        L = g.electron_tensor(p1, p3, laser, dressing_coefficients(0, 0.0, 0.0), M_E)
        ref = g.free_tensor_closed_form(p1, p3, M_E)
        assert np.max(np.abs(L - ref)) < 1e-12 * np.max(np.abs(ref))


def test_muon_tensor_free(rng):
    p2 = FourVector(M_MU, 0, 0, 0)
    T = g.muon_tensor_free(p2, p2, M_MU)
    assert T[0, 0].real == pytest.approx(8 * M_MU ** 2, rel=1e-14)
    assert np.max(np.abs(T[0, 1:])) < 1e-6
    for _ in range(10):
        a, b = random_momentum(rng, M_MU, 1e6), random_momentum(rng, M_MU, 1e6)
        ref = g.lower(g.free_tensor_closed_form(a, b, M_MU))
        assert np.max(np.abs(g.muon_tensor_free(a, b, M_MU) - ref)) < 1e-12 * np.max(np.abs(ref))


def test_current_conservation(rng):
    a, b = random_momentum(rng, M_MU, 1e6), random_momentum(rng, M_MU, 1e6)
    T = g.free_line_tensor(a, b, M_MU)
    q = (b - a).to_array() @ g.METRIC
    assert np.max(np.abs(q @ T)) < 1e-10 * np.max(np.abs(T)) * np.max(np.abs(q))


def test_hermiticity_and_reality(rng):
    for e0 in (1e5, 1e9):
        laser, p1, p3, p2, p4 = random_lines(rng, e0)
        z, phi0 = bessel_argument(p1, p3, laser)
        L = g.electron_tensor(p1, p3, laser, dressing_coefficients(2, z, phi0), M_E)
        assert np.max(np.abs(L - L.T.conj())) < 1e-12 * np.max(np.abs(L))
        zm, pm = bessel_argument(p2, p4, laser)
        Mt = g.muon_tensor_dressed(p2, p4, laser, dressing_coefficients(-1, zm, pm), M_MU)
        val = g.contract(L, Mt)
        assert abs(val.imag) < 1e-10 * abs(val.real)


def test_dressed_muon_zero_field(rng):
    laser = LaserField(1.17, 0.0)
    p2, p4 = random_momentum(rng, M_MU, 1e6), random_momentum(rng, M_MU, 1e6)
    T0 = g.muon_tensor_dressed(p2, p4, laser, dressing_coefficients(0, 0.0, 0.0), M_MU)
    assert np.max(np.abs(T0 - g.muon_tensor_free(p2, p4, M_MU))) < 1e-12 * np.max(np.abs(T0))
    T1 = g.muon_tensor_dressed(p2, p4, laser, dressing_coefficients(1, 0.0, 0.0), M_MU)
    assert np.max(np.abs(T1)) == 0


def test_photon_sum_is_phase_average(rng):
    # Parseval over the Jacobi-Anger rows: sum_n c_i c_j* = <f_i f_j*> with f = (1, cos, sin)
    laser, _, _, p2, p4 = random_lines(rng, 1e10)
    zm, pm = bessel_argument(p2, p4, laser)
    W = int(zm) + 45
    _, b, b1, b2 = dressing_table(-W, W, zm, pm)
    basis = g.basis_traces(p2, p4, M_MU, laser)
    total = sum(g.combine(basis, (b[i], b1[i], b2[i])) for i in range(len(b)))
    avg = basis[0, 0] + 0.5 * (basis[1, 1] + basis[2, 2])
    assert zm > 1e-3
    assert np.max(np.abs(total - avg)) < 1e-10 * np.max(np.abs(avg))


def test_small_muon_argument_first_order(rng):
    # at tiny z_mu only n = 0 and n = +-1 carry weight, the latter at O(z_mu^2)
    laser, _, _, p2, p4 = random_lines(rng, 1e3)
    zm, pm = bessel_argument(p2, p4, laser)
    assert zm < 1e-3
    basis = g.basis_traces(p2, p4, M_MU, laser)
    t0 = g.combine(basis, [getattr(dressing_coefficients(0, zm, pm), k) for k in ("B", "B1", "B2")])
    t2 = g.combine(basis, [getattr(dressing_coefficients(2, zm, pm), k) for k in ("B", "B1", "B2")])
    assert np.max(np.abs(t2)) < (zm ** 2) * np.max(np.abs(t0))
