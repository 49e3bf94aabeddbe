"""Circularly polarized plane wave and the laser dressing of fermion lines.

The wave propagates along +z with polarization vectors along x and y.  The
electron charge is negative, so the stored product ``e_abs_a`` (charge times
the potential amplitude) is <= 0; only ``e_abs_a`` and ``e2a2`` ever leave this
module.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core_math import CONSTANTS, FourVector, PhysicalConstants, field_to_natural
from .errors import DegenerateKinematics

# Relative threshold on k.p / (omega * E) below which a line counts as co-moving.
LIGHTFRONT_TOL = 1e-14


@dataclass(frozen=True)
class LaserField:
    omega: float
    e0: float
    constants: PhysicalConstants = field(default=CONSTANTS, repr=False)

    def __post_init__(self):
        if self.omega <= 0:
            raise ValueError("omega must be positive")
        if self.e0 < 0:
            raise ValueError("E0 must be non-negative")

    @property
    def k(self) -> FourVector:
        return FourVector(self.omega, 0.0, 0.0, self.omega)

    @property
    def a_abs(self) -> float:
        """|a| = E0 / omega, scaled so that e*|a| is in eV (sign excluded)."""
        return field_to_natural(self.e0, self.constants) / self.omega

    @property
    def a1(self) -> FourVector:
        return FourVector(0.0, self.a_abs, 0.0, 0.0)

    @property
    def a2(self) -> FourVector:
        return FourVector(0.0, 0.0, self.a_abs, 0.0)

    @property
    def e_abs_a(self) -> float:
        """Charge times |a|, with e = -|e|."""
        return -self.a_abs

    @property
    def a_squared(self) -> float:
        """e^2 a^2 = -(e|a|)^2, in eV^2."""
        return -self.a_abs * self.a_abs

    e2a2 = a_squared


@dataclass(frozen=True)
class DressedState:
    rest_mass: float
    p: FourVector
    q: FourVector
    m_star: float

    @property
    def Q(self) -> float:
        return self.q.t


def _lightfront(p: FourVector, laser: LaserField) -> float:
    kp = laser.k.dot(p)
    if abs(kp) <= LIGHTFRONT_TOL * laser.omega * max(abs(p.t), 1.0):
        raise DegenerateKinematics(f"k.p = {kp!r} vanishes")
    return kp


def effective_mass(rest_mass: float, laser: LaserField) -> float:
    return math.sqrt(rest_mass * rest_mass - laser.e2a2)


def effective_momentum(p: FourVector, laser: LaserField, rest_mass: float) -> DressedState:
    """Dress a free on-shell momentum: q = p - e^2 a^2 / (2 k.p) k."""
    kp = _lightfront(p, laser)
    q = p - laser.k * (laser.e2a2 / (2.0 * kp))
    return DressedState(rest_mass, p, q, effective_mass(rest_mass, laser))


def undress(q: FourVector, laser: LaserField, rest_mass: float) -> DressedState:
    """Inverse of ``effective_momentum``: recover p from an effective momentum q."""
    kq = _lightfront(q, laser)
    p = q + laser.k * (laser.e2a2 / (2.0 * kq))
    return DressedState(rest_mass, p, q, effective_mass(rest_mass, laser))


def bessel_argument(p_in: FourVector, p_out: FourVector, laser: LaserField) -> tuple[float, float]:
    """Bessel argument z >= 0 and phase phi0 for a dressed line p_in -> p_out.

    The pair satisfies z*cos(phi0) = alpha1 and z*sin(phi0) = alpha2 with
    alpha_j = e*(a_j.p_in/k.p_in - a_j.p_out/k.p_out).
    """
    kin = _lightfront(p_in, laser)
    kout = _lightfront(p_out, laser)
    a1, a2 = laser.a1, laser.a2
    # e is negative; fold the sign in through e_abs_a / a_abs
    sign = -1.0
    alpha1 = sign * (a1.dot(p_in) / kin - a1.dot(p_out) / kout)
    alpha2 = sign * (a2.dot(p_in) / kin - a2.dot(p_out) / kout)
    z = math.hypot(alpha1, alpha2)
    phi0 = math.atan2(alpha2, alpha1) if z > 0 else 0.0
    return z, phi0
