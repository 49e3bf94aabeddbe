"""Oracle-equivalence and invariant checks runnable from the command line."""
from __future__ import annotations

import math
import sys
from dataclasses import dataclass

import numpy as np

from . import amplitude, gamma_oracle
from .bessel_dressing import bessel_j_range, dressing_table, envelope_halfwidth
from .core_math import CONSTANTS, from_spherical
from .dcs_engine import DcsRequest, laser_free_dcs, sdcs
from .kinematics import Geometry, Mode
from .laser_field import LaserField, bessel_argument

THETA_GRID = tuple(float(v) for v in range(-180, 181, 10))


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    worst: float
    limit: float

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}: worst={self.worst:.3e} limit={self.limit:.0e}"


def random_momentum(rng, mass, pmax):
    return from_spherical(mass, rng.uniform(0.0, pmax), math.acos(rng.uniform(-0.95, 0.95)),
                          rng.uniform(0.0, 2.0 * math.pi))


def oracle_equivalence(n_points=100, fields=(0.0, 1e5, 1e7, 1e9), seed=2024) -> Check:
    """Closed-form vs trace spin sum at random kinematics and Bessel orders."""
    rng = np.random.default_rng(seed)
    c = CONSTANTS
    worst = 0.0
    for e0 in fields:
        for _ in range(n_points):
            laser = LaserField(rng.uniform(0.5, 3.0), e0)
            p1, p3 = random_momentum(rng, c.m_e, 5e6), random_momentum(rng, c.m_e, 5e6)
            p2, p4 = random_momentum(rng, c.m_mu, 1e6), random_momentum(rng, c.m_mu, 1e6)
            z, phi0 = bessel_argument(p1, p3, laser)
            s = int(rng.integers(-5, 6)) if e0 > 0 else 0
            _, b, b1, b2 = dressing_table(s, s, z, phi0)
            coeffs = (b[0], b1[0], b2[0])
            cf = amplitude.msq_electron_dressed(coeffs, p1, p3, p2, p4, laser, c.m_e, c.m_mu)
            tr = amplitude.msq_electron_dressed(coeffs, p1, p3, p2, p4, laser, c.m_e, c.m_mu, method="trace")
            worst = max(worst, abs(cf - tr) / abs(tr))
    return Check("closed form vs trace", worst < 1e-9, worst, 1e-9)


def textbook_limit(theta_i=15.0, kinetic_energy=1e6) -> Check:
    worst = 0.0
    for th in THETA_GRID:
        req = DcsRequest(Mode.LASER_FREE, kinetic_energy, Geometry.from_degrees(theta_i, th))
        pipe, book = laser_free_dcs(req, rtol=math.inf)
        worst = max(worst, abs(pipe - book) / book)
    return Check("laser-free vs textbook", worst < 1e-9, worst, 1e-9)


def zero_field(theta_i=15.0, kinetic_energy=1e6, e0=10.0, omega=1.17) -> Check:
    worst = 0.0
    for th in THETA_GRID:
        geo = Geometry.from_degrees(theta_i, th)
        req = DcsRequest(Mode.ELECTRON_DRESSED, kinetic_energy, geo, LaserField(omega, e0), (-1, 1))
        free = laser_free_dcs(req)[0]
        worst = max(worst, abs(sdcs(req).total - free) / free)
    return Check("weak-field limit", worst < 1e-6, worst, 1e-6)


def bessel_sum_rule() -> Check:
    worst = 0.0
    for z in np.linspace(0.0, 50.0, 26):
        w = int(math.ceil(z)) + 40
        j = bessel_j_range(-w, w, float(z))
        worst = max(worst, abs(math.fsum(j * j) - 1.0))
    return Check("Bessel sum rule", worst < 1e-12, worst, 1e-12)


def jacobi_anger(z=3.0, phi0=0.7, smax=40) -> Check:
    s, b, b1, b2 = dressing_table(-smax, smax, z, phi0)
    worst = 0.0
    for phi in np.linspace(0.0, 2.0 * math.pi, 25):
        ph = np.exp(-1j * s * phi)
        base = np.exp(-1j * z * math.sin(phi - phi0))
        worst = max(worst,
                    abs(np.sum(b * ph) - base),
                    abs(np.sum(b1 * ph) - math.cos(phi) * base),
                    abs(np.sum(b2 * ph) - math.sin(phi) * base))
    return Check("Jacobi-Anger reconstruction", worst < 1e-12, worst, 1e-12)


def envelope_support() -> Check:
    worst = 0.0
    for z in (0.5, 3.0, 12.0, 50.0, 200.0, 1000.0):
        w = envelope_halfwidth(z)
        worst = max(worst, float(np.max(np.abs(bessel_j_range(w, w, z)))))
    return Check("Bessel envelope support", worst < 1e-12, worst, 1e-12)


def clifford() -> Check:
    g = gamma_oracle.GAMMA
    worst = 0.0
    for mu in range(4):
        for nu in range(4):
            anti = g[mu] @ g[nu] + g[nu] @ g[mu]
            worst = max(worst, float(np.max(np.abs(anti - 2.0 * gamma_oracle.METRIC[mu, nu] * np.eye(4)))))
    return Check("Clifford algebra", worst < 1e-15, worst, 1e-15)


def run_all(quick: bool = False, stream=sys.stdout) -> bool:
    checks = [
        clifford(),
        bessel_sum_rule(),
        jacobi_anger(),
        envelope_support(),
        oracle_equivalence(n_points=20 if quick else 100),
        textbook_limit(),
        zero_field(),
    ]
    for c in checks:
        print(c.line(), file=stream)
    return all(c.ok for c in checks)
