"""Numeric Dirac algebra in the Dirac representation.

Spin sums are evaluated as explicit 4x4 matrix traces.  This is the reference
path for the closed-form electron amplitude and the only path for a dressed
muon line.  Tensors returned by the line builders carry upper indices unless
the name says otherwise.
"""
from __future__ import annotations

import numpy as np

from .core_math import FourVector
from .laser_field import LaserField, _lightfront

METRIC = np.diag([1.0, -1.0, -1.0, -1.0])

_I2 = np.eye(2)
_Z2 = np.zeros((2, 2))
_SIGMA = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)

GAMMA = np.empty((4, 4, 4), dtype=complex)
GAMMA[0] = np.block([[_I2, _Z2], [_Z2, -_I2]])
for _i, _s in enumerate(_SIGMA, start=1):
    GAMMA[_i] = np.block([[_Z2, _s], [-_s, _Z2]])

GAMMA_LOWER = np.einsum("mn,nab->mab", METRIC, GAMMA)
IDENTITY = np.eye(4, dtype=complex)
GAMMA5 = 1j * GAMMA[0] @ GAMMA[1] @ GAMMA[2] @ GAMMA[3]


def slash(v) -> np.ndarray:
    """Feynman slash gamma_mu v^mu of a FourVector or length-4 array."""
    arr = v.to_array() if isinstance(v, FourVector) else np.asarray(v)
    return np.einsum("m,mab->ab", arr, GAMMA_LOWER)


def dirac_bar(mats: np.ndarray) -> np.ndarray:
    """gamma^0 M^dagger gamma^0, applied over any leading axes."""
    g0 = GAMMA[0]
    return g0 @ np.conj(np.swapaxes(mats, -1, -2)) @ g0


def vertex_factors(p_in: FourVector, p_out: FourVector, laser: LaserField) -> np.ndarray:
    """Dressed vertex pieces chi_0^mu, chi_1^mu, chi_2^mu, shape (3, 4, 4, 4).

    The charge e is folded into the polarization vectors (e*a_j).
    """
    kin = _lightfront(p_in, laser)
    kout = _lightfront(p_out, laser)
    k = laser.k
    ks = slash(k)
    ea = laser.e_abs_a
    ea1 = slash(FourVector(0.0, ea, 0.0, 0.0))
    ea2 = slash(FourVector(0.0, 0.0, ea, 0.0))
    karr = k.to_array()

    chi = np.empty((3, 4, 4, 4), dtype=complex)
    chi[0] = GAMMA - laser.e2a2 / (2.0 * kin * kout) * karr[:, None, None] * ks
    for j, eas in ((1, ea1), (2, ea2)):
        chi[j] = (GAMMA @ ks @ eas) / (2.0 * kin) + (eas @ ks @ GAMMA) / (2.0 * kout)
    return chi


def vertex_factors_bar(p_in: FourVector, p_out: FourVector, laser: LaserField) -> np.ndarray:
    """Barred vertex pieces written out term by term (mirror order of the products)."""
    kin = _lightfront(p_in, laser)
    kout = _lightfront(p_out, laser)
    k = laser.k
    ks = slash(k)
    ea = laser.e_abs_a
    ea1 = slash(FourVector(0.0, ea, 0.0, 0.0))
    ea2 = slash(FourVector(0.0, 0.0, ea, 0.0))
    karr = k.to_array()

    chib = np.empty((3, 4, 4, 4), dtype=complex)
    chib[0] = GAMMA - laser.e2a2 / (2.0 * kin * kout) * karr[:, None, None] * ks
    for j, eas in ((1, ea1), (2, ea2)):
        chib[j] = (eas @ ks @ GAMMA) / (2.0 * kin) + (GAMMA @ ks @ eas) / (2.0 * kout)
    return chib


def basis_traces(p_in: FourVector, p_out: FourVector, mass: float, laser: LaserField) -> np.ndarray:
    """T[i, j, mu, nu] = Tr[(p_out/ + m) chi_i^mu (p_in/ + m) chibar_j^nu].

    A line tensor for coefficient triple c = (B, B1, B2) is
    sum_ij c_i conj(c_j) T[i, j].
    """
    chi = vertex_factors(p_in, p_out, laser)
    chib = dirac_bar(chi)
    left = (slash(p_out) + mass * IDENTITY) @ chi  # (3, 4, 4, 4)
    right = (slash(p_in) + mass * IDENTITY) @ chib
    return np.einsum("imab,jnba->ijmn", left, right)


def combine(basis: np.ndarray, coeffs) -> np.ndarray:
    c = np.asarray(coeffs, dtype=complex)
    return np.einsum("i,j,ijmn->mn", c, np.conj(c), basis)


def _coeff_triple(bessel) -> tuple[complex, complex, complex]:
    if hasattr(bessel, "B1"):
        return bessel.B, bessel.B1, bessel.B2
    return tuple(bessel)


def electron_tensor(p1: FourVector, p3: FourVector, laser: LaserField, bessel, m_e: float) -> np.ndarray:
    """L^{mu nu} = Tr[(p3/ + m) Gamma^mu (p1/ + m) Gammabar^nu] for one channel."""
    return combine(basis_traces(p1, p3, m_e, laser), _coeff_triple(bessel))


def free_line_tensor(p_in: FourVector, p_out: FourVector, mass: float) -> np.ndarray:
    """Tr[(p_out/ + m) gamma^mu (p_in/ + m) gamma^nu], upper indices."""
    left = (slash(p_out) + mass * IDENTITY) @ GAMMA
    right = (slash(p_in) + mass * IDENTITY) @ GAMMA
    return np.einsum("mab,nba->mn", left, right)


def lower(tensor: np.ndarray) -> np.ndarray:
    return METRIC @ tensor @ METRIC


def muon_tensor_free(p2: FourVector, p4: FourVector, m_mu: float) -> np.ndarray:
    """M_{mu nu} (lower indices) of an undressed muon line, by explicit trace."""
    return lower(free_line_tensor(p2, p4, m_mu))


def muon_tensor_dressed(p2: FourVector, p4: FourVector, laser: LaserField, bessel, m_mu: float) -> np.ndarray:
    """Lower-index tensor of a laser-dressed muon line for one photon order."""
    return lower(combine(basis_traces(p2, p4, m_mu, laser), _coeff_triple(bessel)))


def contract(upper: np.ndarray, lower_t: np.ndarray) -> complex:
    return complex(np.einsum("mn,mn->", upper, lower_t))


def free_tensor_closed_form(p_in: FourVector, p_out: FourVector, mass: float) -> np.ndarray:
    """4[p_out^mu p_in^nu + p_in^mu p_out^nu - g^{mu nu}(p_in.p_out - m^2)]."""
    a = p_out.to_array()
    b = p_in.to_array()
    return 4.0 * (np.outer(a, b) + np.outer(b, a) - METRIC * (p_in.dot(p_out) - mass * mass))
