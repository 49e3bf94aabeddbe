"""Exception hierarchy shared by the physics modules and the CLI."""


class EmuLaserError(Exception):
    """Base class for all package errors."""


class PhysicsDomainError(EmuLaserError):
    """Inputs fall outside the domain where the formulas are defined."""


class DegenerateKinematics(PhysicsDomainError):
    """Light-front product k.p vanishes (particle co-moving with the wave)."""


class ClosedChannel(PhysicsDomainError):
    """No physical outgoing momentum exists for this photon channel."""


class DegenerateJacobian(PhysicsDomainError):
    """The delta-function Jacobian vanishes at the solved root."""


class ForwardSingularity(PhysicsDomainError):
    """Photon propagator momentum squared is zero (exact forward scattering)."""


class ConfigError(EmuLaserError):
    """Invalid run configuration."""

    def __init__(self, message, field=None, line=None):
        self.field = field
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field '{field}'")
        prefix = f"[{', '.join(where)}] " if where else ""
        super().__init__(prefix + message)
