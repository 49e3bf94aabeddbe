import math

import numpy as np
import pytest
from hypothesis import settings

from emulaser.core_math import CONSTANTS, from_spherical
from emulaser.kinematics import Geometry
from emulaser.laser_field import LaserField

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def reference_geometry():
    return Geometry.from_degrees(15.0, 0.0)


def random_momentum(rng, mass, pmax):
    return from_spherical(mass, rng.uniform(0.0, pmax), math.acos(rng.uniform(-0.95, 0.95)),
                          rng.uniform(0.0, 2.0 * math.pi))


def random_lines(rng, e0):
    """Random (laser, p1, p3, p2, p4) with generic light-front products."""
    c = CONSTANTS
    laser = LaserField(rng.uniform(0.5, 3.0), e0)
    return (laser, random_momentum(rng, c.m_e, 5e6), random_momentum(rng, c.m_e, 5e6),
            random_momentum(rng, c.m_mu, 1e6), random_momentum(rng, c.m_mu, 1e6))
