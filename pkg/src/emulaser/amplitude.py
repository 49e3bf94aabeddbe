"""Spin-summed squared matrix elements.

Two evaluation routes exist for the electron-dressed amplitude: a closed-form
nine-coefficient expansion in scalar products, and the explicit trace
contraction from :mod:`emulaser.gamma`.  The dressed muon line has only the
trace route.

With c = (B_s, B_1s, B_2s) the spin sum is sum_ij c_i conj(c_j) X_ij, where
X = [[C1, C4, C6], [C5, C2, C8], [C7, C9, C3]].
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import gamma_oracle as gamma
from .core_math import FourVector
from .errors import DegenerateKinematics
from .laser_field import LaserField


@dataclass(frozen=True)
class SpinSumCoefficients:
    C1: float
    C2: float
    C3: float
    C4: float
    C5: float
    C6: float
    C7: float
    C8: float
    C9: float

    def as_matrix(self) -> np.ndarray:
        """Coefficients arranged as X[i, j] multiplying c_i conj(c_j), c = (B, B1, B2)."""
        return np.array([
            [self.C1, self.C4, self.C6],
            [self.C5, self.C2, self.C8],
            [self.C7, self.C9, self.C3],
        ])

    def combine(self, B: complex, B1: complex, B2: complex) -> complex:
        return (
            self.C1 * abs(B) ** 2 + self.C2 * abs(B1) ** 2 + self.C3 * abs(B2) ** 2
            + self.C4 * B * B1.conjugate() + self.C5 * B1 * B.conjugate()
            + self.C6 * B * B2.conjugate() + self.C7 * B2 * B.conjugate()
            + self.C8 * B1 * B2.conjugate() + self.C9 * B2 * B1.conjugate()
        )


def closed_form_coefficients(p1: FourVector, p3: FourVector, p2: FourVector, p4: FourVector,
                          laser: LaserField, m_e: float, m_mu: float) -> SpinSumCoefficients:
    """Closed-form C1..C9 for a dressed electron line and a free muon line.

    Valid in any frame; the charge is folded into the polarization vectors
    (eps_j = e a_j, eps_j^2 = e^2 a^2).
    """
    k = laser.k
    kp1, kp3 = k.dot(p1), k.dot(p3)
    if kp1 <= 0 or kp3 <= 0:
        raise DegenerateKinematics("k.p1 and k.p3 must be positive")
    kp2, kp4 = k.dot(p2), k.dot(p4)
    ea = laser.e_abs_a
    eps = (FourVector(0.0, ea, 0.0, 0.0), FourVector(0.0, 0.0, ea, 0.0))
    A2 = laser.e2a2
    m2, M2 = m_e * m_e, m_mu * m_mu
    al = 1.0 / (2.0 * kp1)
    be = 1.0 / (2.0 * kp3)
    lam = -A2 / (2.0 * kp1 * kp3)

    p1p2, p1p3, p1p4 = p1.dot(p2), p1.dot(p3), p1.dot(p4)
    p3p2, p3p4, p2p4 = p3.dot(p2), p3.dot(p4), p2.dot(p4)

    # laser-free e-mu contraction
    free = 32.0 * (p1p2 * p3p4 + p1p4 * p3p2 - m2 * p2p4 - M2 * p1p3 + 2.0 * m2 * M2)
    S = (2.0 * m2 * kp2 * kp4 + kp1 * kp2 * p3p4 - 2.0 * kp1 * kp3 * p2p4 + kp1 * kp4 * p3p2
         + kp3 * kp4 * p1p2 - 2.0 * kp2 * kp4 * p1p3 + kp2 * kp3 * p1p4)
    C1 = free + 32.0 * lam * (2.0 * M2 * kp1 * kp3 + S) + 64.0 * lam * lam * kp1 * kp2 * kp3 * kp4

    dots = [(e.dot(p1), e.dot(p2), e.dot(p3), e.dot(p4)) for e in eps]

    def W(e, f):
        e1, e2, e3, e4 = e
        f1, f2, f3, f4 = f
        return (-e1 * f2 * kp3 * kp4 + 2.0 * e1 * kp2 * f3 * kp4 - e1 * kp2 * kp3 * f4
                - kp1 * e2 * f3 * kp4 + 2.0 * kp1 * e2 * kp3 * f4 - kp1 * kp2 * e3 * f4)

    diag_common = (64.0 * A2 * al * al * kp1 * (M2 * kp3 - kp2 * p3p4 - kp4 * p3p2)
                   + 64.0 * A2 * be * be * kp3 * (M2 * kp1 - kp4 * p1p2 - kp2 * p1p4)
                   + 64.0 * A2 * al * be * S)
    C2 = diag_common + 128.0 * al * be * W(dots[0], dots[0])
    C3 = diag_common + 128.0 * al * be * W(dots[1], dots[1])

    def linear(d):
        e1, e2, e3, e4 = d
        return (32.0 * al * (M2 * (kp1 * e3 - kp3 * e1) + e1 * (kp2 * p3p4 + kp4 * p3p2)
                             - kp1 * (e2 * p3p4 + e4 * p3p2))
                + 32.0 * be * (M2 * (kp3 * e1 - kp1 * e3) + e3 * (kp4 * p1p2 + kp2 * p1p4)
                               - kp3 * (e4 * p1p2 + e2 * p1p4))
                + 32.0 * lam * (al * kp1 * (2.0 * kp2 * kp4 * e3 - kp3 * (kp4 * e2 + kp2 * e4))
                                + be * kp3 * (2.0 * kp2 * kp4 * e1 - kp1 * (kp4 * e2 + kp2 * e4))))

    C4 = linear(dots[0])
    C6 = linear(dots[1])
    C8 = 64.0 * al * be * (W(dots[0], dots[1]) + W(dots[1], dots[0]))
    return SpinSumCoefficients(C1, C2, C3, C4, C4, C6, C6, C8, C8)


def angle_form_coefficients(p1: FourVector, p3: FourVector, q1: FourVector, q3: FourVector,
                                  p4: FourVector, laser: LaserField, m_e: float, m_mu: float) -> SpinSumCoefficients:
    """Older angle-variable form of C1..C9 for a muon at rest, kept as a negative control.

    Only C1 agrees with the traces, and only as the field goes to zero.  The
    other entries are defective: C2 and C3 turn negative although they are
    spin sums of squared moduli, and C8 is dimensionally inconsistent.  Use
    :func:`closed_form_coefficients` instead.  Angles are those of q1 and q3.
    """
    k = laser.k
    kp1 = k.dot(p1)
    kp3 = k.dot(p3)
    if kp1 <= 0 or kp3 <= 0:
        raise DegenerateKinematics("k.p1 and k.p3 must be positive")
    w = laser.omega
    e = -1.0  # charge sign; |e| lives in the amplitude |a|
    aa = laser.a_abs
    a2 = -aa * aa
    m = m_e
    p4p1 = p4.dot(p1)
    p4p3 = p4.dot(p3)
    E1, E3 = p1.t, p3.t
    Q1, Q3 = q1.t, q3.t
    Q1m, Q3m = q1.p, q3.p
    ti, vi = q1.theta, q1.phi
    tf, vf = q3.theta, q3.phi
    cti, sti = math.cos(ti), math.sin(ti)
    ctf, stf = math.cos(tf), math.sin(tf)
    cvi, svi = math.cos(vi), math.sin(vi)
    cvf, svf = math.cos(vf), math.sin(vf)
    e2, e4, e6 = e ** 2, e ** 4, e ** 6
    mmu = m_mu
    d = kp1 - kp3

    C1 = 8 * mmu / (kp1 ** 2 * kp3 ** 2) * (
        2 * kp1 * kp3 * (
            a2 * e2 * kp3 ** 2 * E1 - a2 * e2 * kp1 ** 2 * E3
            + kp1 * kp3 * (
                a2 * e2 * (-E1 + E3 + 2 * Q1 - 2 * Q3)
                + 2 * (-mmu * E1 * E3 + E3 * p4p1 + E1 * p4p3 + m_e ** 2 * (mmu - Q1 + Q3))
            )
        )
        - 2 * a2 * e2 * kp1 * kp3 * (
            a2 * e2 * (-kp1 + kp3)
            + kp3 * (-2 * m ** 2 + 2 * E1 * E3 + p4p1)
            + kp1 * (2 * m_e ** 2 - 2 * E1 * E3 + p4p3)
        ) * w
        + a2 ** 2 * e4 * kp1 * kp3 * mmu * w ** 2
        + a2 ** 3 * e6 * (-kp1 + kp3) * w ** 3
        + 2 * (kp1 * kp3 * mmu + a2 * e2 * (-kp1 + kp3) * w) * (
            kp3 * Q3m * ctf * (a2 * e2 * w + 2 * kp1 * Q1m * cti)
            + kp1 * (
                a2 * e2 * Q1m * w * cti
                + 2 * kp3 * Q3m * stf * sti * (Q1m * cvf * cvi + Q1m * svf * svi)
            )
        )
    )

    C2 = 8 * e2 * mmu / (kp1 ** 2 * kp3 ** 2) * (
        a2 * (
            2 * kp1 * kp3 * (
                kp1 ** 2 * (mmu - E1 + E3) + kp3 ** 2 * (mmu - E1 + E3)
                - 2 * kp1 * kp3 * (mmu - E1 + E3 + Q1 - Q3)
            )
            + 2 * kp1 * d * kp3 * (2 * m ** 2 - 2 * E1 * E3 - p4p1 + p4p3) * w
            + a2 ** 2 * e4 * d * w ** 3
        )
        + 2 * a2 * d * kp3 * Q3m * w * ctf * (a2 * e2 * w + 2 * kp1 * Q1m * cti)
        + 2 * kp1 * w * (
            a2 ** 2 * e2 * d * Q1m * w * cti
            + 2 * kp3 * (
                aa ** 2 * kp1 * Q3m ** 2 * cvf ** 2 * stf ** 2
                + (a2 * d * Q1m + aa ** 2 * (2 * kp1 * Q1m - kp3 * Q1m - kp1 * Q1m)) * Q3m * cvf * cvi * stf * sti
                + Q1m * sti * (
                    -aa ** 2 * kp3 * Q1m * cvi ** 2 * sti
                    + a2 * d * Q3m * stf * svf * svi
                )
            )
        )
    )

    C3 = 8 * e2 * mmu / (kp1 ** 2 * kp3 ** 2) * (
        a2 * (
            2 * kp1 * kp3 * (
                kp1 ** 2 * (mmu - E1 + E3) + kp3 ** 2 * (mmu - E1 + E3)
                - 2 * kp1 * kp3 * (mmu - E1 + E3 + Q1 - Q3)
            )
            + 2 * kp1 * d * kp3 * (2 * m_e ** 2 - 2 * E1 * E3 - p4p1 + p4p3) * w
            + a2 ** 2 * e4 * d * w ** 3
        )
        + 2 * a2 * d * kp3 * Q3m * w * ctf * (a2 * e2 * w + 2 * kp1 * Q1m * cti)
        + 2 * kp1 * w * (
            a2 ** 2 * e2 * d * Q1m * w * cti
            + 2 * kp3 * (
                Q3m * stf * (
                    a2 * d * Q1m * cvf * cvi * sti
                    + aa ** 2 * kp1 * Q3m * stf * svf ** 2
                )
                + (a2 + aa ** 2) * d * Q1m * Q3m * stf * sti * svf * svi
                - aa ** 2 * kp3 * Q1m ** 2 * sti ** 2 * svi ** 2
            )
        )
    )

    C4 = 8 * aa * e * mmu / (kp1 * kp3) * (
        Q3m * (
            2 * kp1 * (kp1 * (mmu - E1) - kp3 * (mmu + E3))
            + (a2 * e2 * (3 * kp1 - kp3) - 2 * kp1 * p4p1) * w
        ) * cvf * stf
        - (
            2 * d * kp3 * (mmu + E3) * Q1m
            - 2 * kp1 * kp3 * (E1 + E3) * Q1m
            + (2 * kp3 * p4p3 * Q1m + a2 * e2 * (-2 * kp1 * Q1m + 2 * kp3 * Q1m + kp1 * Q1m + kp3 * Q1m)) * w
        ) * cvi * sti
    )

    C6 = 8 * aa * e * mmu / (kp1 * kp3) * (
        Q3m * (
            2 * kp1 * (kp1 * (mmu - E1) - kp3 * (mmu + E3))
            + (a2 * e2 * (3 * kp1 - kp3) - 2 * kp1 * p4p1) * w
        ) * stf * svf
        + Q1m * (
            kp1 * (-2 * kp3 * mmu + 2 * kp3 * E1 + a2 * e2 * w)
            + kp3 * (2 * kp3 * (mmu + E3) - (3 * a2 * e2 + 2 * p4p3) * w)
        ) * sti * svi
    )

    C8 = 16 * aa ** 2 * e2 * mmu * w / (kp1 * kp3) * (
        cvi * sti * (
            (2 * kp1 * Q1m - kp3 * Q1m - kp1 * Q1m) * Q3m * stf * svf
            - 2 * kp3 * Q1m ** 3 * sti * svi
        )
        + Q3m * stf * (
            kp1 * Q3m * stf * math.sin(2 * vf)
            + d * Q1m * cvf * sti * svi
        )
    )

    return SpinSumCoefficients(C1, C2, C3, C4, C4, C6, C6, C8, C8)


def oracle_matrix(p1, p3, p2, p4, laser: LaserField, m_e: float, m_mu: float) -> np.ndarray:
    """X[i, j] = T_ij^{mu nu} M_{mu nu} for a free muon line, by explicit traces."""
    T = gamma.basis_traces(p1, p3, m_e, laser)
    M = gamma.muon_tensor_free(p2, p4, m_mu)
    return np.einsum("ijmn,mn->ij", T, M)


def both_dressed_matrix(p1, p3, p2, p4, laser: LaserField, m_e: float, m_mu: float) -> np.ndarray:
    """Y[i, j, k, l] so that sum_spins |M^(s,n)|^2 = sum c_i c_j* d_k d_l* Y[i, j, k, l].

    c are the electron coefficients of order s, d the muon ones of order n.
    """
    Te = gamma.basis_traces(p1, p3, m_e, laser)
    Tm = gamma.basis_traces(p2, p4, m_mu, laser)
    g = gamma.METRIC
    return np.einsum("ijmn,ma,nb,klab->ijkl", Te, g, g, Tm)


def _triple(c) -> np.ndarray:
    if hasattr(c, "B1"):
        return np.array([c.B, c.B1, c.B2], dtype=complex)
    return np.asarray(c, dtype=complex)


def msq_from_matrix(X: np.ndarray, coeffs) -> complex:
    c = _triple(coeffs)
    return complex(np.einsum("i,j,ij->", c, np.conj(c), X))


def msq_electron_dressed(coeffs, p1, p3, p2, p4, laser: LaserField, m_e: float, m_mu: float,
                         method: str = "closed_form") -> float:
    """Spin-summed |M^s|^2 with a dressed electron and a free muon.

    ``method`` selects the closed-form coefficients or the explicit traces.
    """
    if method == "closed_form":
        X = closed_form_coefficients(p1, p3, p2, p4, laser, m_e, m_mu).as_matrix()
    elif method == "trace":
        X = oracle_matrix(p1, p3, p2, p4, laser, m_e, m_mu)
    else:
        raise ValueError(f"unknown method {method!r}")
    val = msq_from_matrix(X, coeffs)
    _check_real(val)
    return val.real


def msq_both_dressed(e_coeffs, mu_coeffs, p1, p3, p2, p4, laser: LaserField,
                     m_e: float, m_mu: float) -> float:
    """Spin-summed |M^(s,n)|^2 with both lines dressed (trace route only)."""
    Y = both_dressed_matrix(p1, p3, p2, p4, laser, m_e, m_mu)
    c, d = _triple(e_coeffs), _triple(mu_coeffs)
    val = complex(np.einsum("i,j,k,l,ijkl->", c, np.conj(c), d, np.conj(d), Y))
    _check_real(val)
    return val.real


def _check_real(val: complex, tol: float = 1e-10):
    if abs(val.imag) > tol * max(abs(val.real), 1e-300):
        raise ArithmeticError(f"spin sum has imaginary residue {val.imag!r} (real {val.real!r})")
