"""Scattering geometry and per-channel kinematics in the muon rest frame.

For a channel with net photon number s the outgoing effective electron
momentum q3 (direction fixed by the detector angles) is fixed by requiring
the recoiling muon to be on its (effective) mass shell.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core_math import CONSTANTS, FourVector, PhysicalConstants, from_spherical, unit_vector
from .errors import ClosedChannel, DegenerateJacobian
from .laser_field import DressedState, LaserField, effective_mass, effective_momentum, undress


class Mode(str, Enum):
    LASER_FREE = "laser_free"
    ELECTRON_DRESSED = "electron_dressed"
    BOTH_DRESSED = "both_dressed"


@dataclass(frozen=True)
class Geometry:
    """Incident and detection angles in radians."""

    theta_i: float
    phi_i: float
    theta_f: float
    phi_f: float

    def __post_init__(self):
        if not -math.pi - 1e-12 <= self.theta_f <= math.pi + 1e-12:
            raise ValueError("theta_f must lie in [-180, 180] degrees")

    @classmethod
    def reference(cls, theta_i: float, theta_f: float) -> Geometry:
        """theta_i = phi_i and phi_f = phi_i + 90 degrees."""
        return cls(theta_i, theta_i, theta_f, theta_i + math.pi / 2)

    @classmethod
    def from_degrees(cls, theta_i, theta_f, phi_i=None, phi_f=None) -> Geometry:
        phi_i = theta_i if phi_i is None else phi_i
        phi_f = phi_i + 90.0 if phi_f is None else phi_f
        return cls(*(math.radians(v) for v in (theta_i, phi_i, theta_f, phi_f)))

    @property
    def final_direction(self) -> tuple[float, float]:
        """(theta, phi) of the outgoing electron with theta in [0, pi]."""
        if self.theta_f < 0:
            return -self.theta_f, self.phi_f + math.pi
        return self.theta_f, self.phi_f


@dataclass(frozen=True)
class Incident:
    electron: DressedState
    muon: DressedState
    laser: LaserField
    kinetic_energy: float
    constants: PhysicalConstants


@dataclass(frozen=True)
class ChannelKinematics:
    s_total: int
    mode: Mode
    q3_mag: float
    Q3: float
    q3: FourVector
    p3: FourVector
    q4: FourVector
    p4: FourVector
    q_transfer: FourVector
    q4_pow: float
    jacobian: float
    k: FourVector
    q1: FourVector

    def transfer(self, s: int) -> FourVector:
        """Photon propagator momentum when the electron vertex absorbs s photons."""
        return self.q3 - self.q1 - self.k * s


def build_incident(kinetic_energy: float, geometry: Geometry, laser: LaserField,
                   constants: PhysicalConstants = CONSTANTS, convention: str = "effective") -> Incident:
    """Incident electron and resting muon.

    With ``convention="effective"`` the laser-dressed momentum q1 points along
    (theta_i, phi_i) with Q1 = E_kin + m_e; ``"free"`` places the free momentum
    p1 there instead.  Both coincide when the field is off.
    """
    if kinetic_energy <= 0:
        raise ValueError("kinetic energy must be positive")
    m_e, m_mu = constants.m_e, constants.m_mu
    e1 = kinetic_energy + m_e
    p2 = FourVector(m_mu, 0.0, 0.0, 0.0)
    if convention == "effective":
        m_star = effective_mass(m_e, laser)
        q1 = from_spherical(m_star, math.sqrt(e1 * e1 - m_star * m_star), geometry.theta_i, geometry.phi_i)
        electron = undress(q1, laser, m_e)
    elif convention == "free":
        p1 = from_spherical(m_e, math.sqrt(e1 * e1 - m_e * m_e), geometry.theta_i, geometry.phi_i)
        electron = effective_momentum(p1, laser, m_e)
    else:
        raise ValueError(f"unknown incident convention {convention!r}")
    return Incident(
        electron=electron,
        muon=effective_momentum(p2, laser, m_mu),
        laser=laser,
        kinetic_energy=kinetic_energy,
        constants=constants,
    )


def incident_flux(incident: Incident) -> float:
    """Incident flux |q1|/Q1 (volume factor dropped), checked against the invariant form."""
    q1 = incident.electron.q
    p2 = incident.muon.p
    m_mu = incident.muon.rest_mass
    inv = math.sqrt(q1.dot(p2) ** 2 - m_mu * m_mu * incident.electron.m_star ** 2) / (q1.t * p2.t)
    direct = q1.p / q1.t
    if abs(inv - direct) > 1e-10 * direct:
        raise AssertionError(f"flux paths disagree: {inv!r} vs {direct!r}")
    return direct


def _target(s_total: int, incident: Incident, mode: Mode) -> tuple[FourVector, float, float]:
    """Total conserved four-momentum, recoil mass, and the muon energy used in the Jacobian."""
    k = incident.laser.k
    if mode is Mode.BOTH_DRESSED:
        mu = incident.muon
        return incident.electron.q + mu.q + k * s_total, mu.m_star, mu.m_star
    p2 = incident.muon.p
    return incident.electron.q + p2 + k * s_total, incident.muon.rest_mass, p2.t


def constraint(x: float, s_total: int, incident: Incident, geometry: Geometry, mode: Mode) -> float:
    """g(|q3|) = (P - q3)^2 - M^2 along the detector direction."""
    P, M, _ = _target(s_total, incident, mode)
    th, ph = geometry.final_direction
    q3 = from_spherical(incident.electron.m_star, x, th, ph)
    r = P - q3
    return r.dot(r) - M * M


def jacobian(x: float, s_total: int, incident: Incident, geometry: Geometry, mode: Mode) -> float:
    """Analytic derivative of the mass-shell constraint with respect to |q3|."""
    q1 = incident.electron.q
    omega = incident.laser.omega
    _, _, e2 = _target(s_total, incident, mode)
    th, ph = geometry.final_direction
    Q3 = math.hypot(x, incident.electron.m_star)
    cos_f = math.cos(th)
    # angle between q1 and the detector direction, using q1's own angles
    F = math.cos(q1.theta) * cos_f + math.sin(q1.theta) * math.sin(th) * math.cos(ph - q1.phi)
    return 2.0 * (s_total * omega * cos_f + q1.p * F) - 2.0 * x / Q3 * (q1.t + e2 + s_total * omega)


def solve_outgoing(s_total: int, incident: Incident, geometry: Geometry, mode: Mode | str) -> ChannelKinematics:
    mode = Mode(mode)
    laser = incident.laser
    k = laser.k
    P, M, _ = _target(s_total, incident, mode)
    m3 = incident.electron.m_star
    th, ph = geometry.final_direction
    n = unit_vector(th, ph)
    P0 = P.t
    c = float(P.spatial() @ n)
    A = 0.5 * (P.dot(P) + m3 * m3 - M * M)
    # P0 sqrt(x^2 + m3^2) = A + c x, squared into a quadratic in x
    qa = P0 * P0 - c * c
    qb = -2.0 * A * c
    qc = P0 * P0 * m3 * m3 - A * A
    roots = _real_roots(qa, qb, qc)
    scale = abs(A) + abs(c) * P0 + P0 * m3
    good = []
    for x in roots:
        if x < 0:
            continue
        Q3 = math.hypot(x, m3)
        if A + c * x <= 0:
            continue
        if abs(P0 * Q3 - A - c * x) > 1e-9 * scale:
            continue
        if P0 - Q3 < M * (1 - 1e-15):
            continue
        good.append(x)
    if not good:
        raise ClosedChannel(f"channel s={s_total} is kinematically closed")
    x = max(good)

    q3 = from_spherical(m3, x, th, ph)
    p3 = undress(q3, laser, incident.electron.rest_mass).p if laser.e0 > 0 else q3
    q4 = P - q3
    if mode is Mode.BOTH_DRESSED and laser.e0 > 0:
        p4 = undress(q4, laser, incident.muon.rest_mass).p
    else:
        p4 = q4
    jac = jacobian(x, s_total, incident, geometry, mode)
    if abs(jac) < 1e-12 * (P0 + abs(c)):
        raise DegenerateJacobian(f"g' vanishes for channel s={s_total}")
    q1 = incident.electron.q
    qt = q3 - q1 - k * s_total
    q2 = qt.dot(qt)
    return ChannelKinematics(
        s_total=s_total,
        mode=mode,
        q3_mag=x,
        Q3=q3.t,
        q3=q3,
        p3=p3,
        q4=q4,
        p4=p4,
        q_transfer=qt,
        q4_pow=q2 * q2,
        jacobian=abs(jac),
        k=k,
        q1=q1,
    )


def _real_roots(a: float, b: float, c: float) -> list[float]:
    if a == 0.0:
        return [] if b == 0.0 else [-c / b]
    disc = b * b - 4.0 * a * c
    if disc < 0:
        # tolerate rounding right at a tangency
        if disc > -1e-12 * b * b:
            disc = 0.0
        else:
            return []
    sq = math.sqrt(disc)
    # stable pair
    t = -0.5 * (b + math.copysign(sq, b)) if b != 0 else 0.5 * sq
    r1 = t / a
    r2 = c / t if t != 0 else -r1
    return sorted({r1, r2})
