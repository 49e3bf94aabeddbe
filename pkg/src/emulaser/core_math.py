"""Minkowski four-vectors, physical constants and laboratory-unit conversion.

Everything is expressed in eV (energies, momenta, masses) with hbar = c = 1 and
metric diag(1, -1, -1, -1).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class PhysicalConstants:
    m_e: float = 0.511e6
    m_mu: float = 105.6583755e6
    alpha: float = 1 / 137.035999084
    hbar_c: float = 1.9732705e-5  # eV cm

    @property
    def field_conversion(self) -> float:
        """Factor turning a field strength in V/cm into e*E0 in eV^2."""
        return self.hbar_c

    @property
    def coupling_squared(self) -> float:
        # Gaussian units: e^2 = alpha
        return self.alpha


CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class FourVector:
    """Contravariant four-vector (t, x, y, z)."""

    t: float
    x: float
    y: float
    z: float

    def __add__(self, other: FourVector) -> FourVector:
        return FourVector(self.t + other.t, self.x + other.x, self.y + other.y, self.z + other.z)

    def __sub__(self, other: FourVector) -> FourVector:
        return FourVector(self.t - other.t, self.x - other.x, self.y - other.y, self.z - other.z)

    def __neg__(self) -> FourVector:
        return FourVector(-self.t, -self.x, -self.y, -self.z)

    def __mul__(self, c: float) -> FourVector:
        return FourVector(c * self.t, c * self.x, c * self.y, c * self.z)

    __rmul__ = __mul__

    def dot(self, other: FourVector) -> float:
        return lorentz_dot(self, other)

    @property
    def mag2(self) -> float:
        return lorentz_dot(self, self)

    @property
    def p(self) -> float:
        """Magnitude of the spatial part."""
        return math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)

    @property
    def theta(self) -> float:
        p = self.p
        return math.acos(max(-1.0, min(1.0, self.z / p))) if p > 0 else 0.0

    @property
    def phi(self) -> float:
        return math.atan2(self.y, self.x)

    def spatial(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def to_array(self) -> np.ndarray:
        return np.array([self.t, self.x, self.y, self.z])

    @classmethod
    def from_array(cls, arr) -> FourVector:
        return cls(*(float(v) for v in arr))


ZERO = FourVector(0.0, 0.0, 0.0, 0.0)


def lorentz_dot(a: FourVector, b: FourVector) -> float:
    return a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z


def from_spherical(mass: float, magnitude: float, theta: float, phi: float) -> FourVector:
    """On-shell four-momentum of given mass with spatial part along (theta, phi)."""
    if magnitude < 0:
        raise ValueError("magnitude must be non-negative")
    st = math.sin(theta)
    return FourVector(
        math.sqrt(magnitude * magnitude + mass * mass),
        magnitude * st * math.cos(phi),
        magnitude * st * math.sin(phi),
        magnitude * math.cos(theta),
    )


def unit_vector(theta: float, phi: float) -> np.ndarray:
    st = math.sin(theta)
    return np.array([st * math.cos(phi), st * math.sin(phi), math.cos(theta)])


def field_to_natural(e0: float, constants: PhysicalConstants = CONSTANTS) -> float:
    """Convert a field strength in V/cm to the product e*E0 in eV^2."""
    if e0 < 0:
        raise ValueError("field strength must be non-negative")
    return e0 * constants.field_conversion
