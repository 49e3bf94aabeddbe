"""Electron-muon scattering in a circularly polarized laser field."""
from .core_math import CONSTANTS, FourVector, PhysicalConstants
from .dcs_engine import DcsRequest, DcsResult, laser_free_dcs, sdcs, textbook_dcs
from .errors import (ClosedChannel, ConfigError, DegenerateJacobian, DegenerateKinematics,
                     EmuLaserError, ForwardSingularity, PhysicsDomainError)
from .kinematics import Geometry, Mode, build_incident, solve_outgoing
from .laser_field import LaserField

__version__ = "0.1.0"

__all__ = [
    "CONSTANTS", "FourVector", "PhysicalConstants", "DcsRequest", "DcsResult", "laser_free_dcs",
    "sdcs", "textbook_dcs", "ClosedChannel", "ConfigError", "DegenerateJacobian",
    "DegenerateKinematics", "EmuLaserError", "ForwardSingularity", "PhysicsDomainError",
    "Geometry", "Mode", "build_incident", "solve_outgoing", "LaserField", "__version__",
]
