"""Individual (per-channel) and summed differential cross sections.

Cross sections are in eV^-2, differential in the solid angle of the outgoing
effective electron momentum, evaluated in the muon rest frame.  Channel sums
use ``math.fsum`` over a fixed channel order, so totals do not depend on how
channels were scheduled.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from . import amplitude
from .bessel_dressing import dressing_table
from .core_math import CONSTANTS, FourVector, PhysicalConstants
from .errors import ClosedChannel, DegenerateJacobian, ForwardSingularity
from .kinematics import (ChannelKinematics, Geometry, Incident, Mode, build_incident,
                         incident_flux, solve_outgoing)
from .laser_field import LaserField, bessel_argument

# Relative size of q^2 (against |q1|^2) treated as an exact forward node.
FORWARD_TOL = 1e-12
# Tail fraction below which a truncated channel sum counts as converged.
CONVERGENCE_TOL = 1e-6
_NULL_OMEGA = 1.17


@dataclass(frozen=True)
class DcsRequest:
    mode: Mode
    kinetic_energy: float
    geometry: Geometry
    laser: LaserField | None = None
    s_range: tuple[int, int] = (-10, 10)
    n_range: tuple[int, int] = (-10, 10)
    constants: PhysicalConstants = field(default=CONSTANTS, repr=False)
    convention: str = "effective"
    method: str = "closed_form"

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        for name in ("s_range", "n_range"):
            lo, hi = (int(v) for v in getattr(self, name))
            if lo > hi:
                raise ValueError(f"{name} must satisfy min <= max, got {(lo, hi)}")
            object.__setattr__(self, name, (lo, hi))
        if self.kinetic_energy <= 0:
            raise ValueError("kinetic energy must be positive")
        if self.mode is not Mode.LASER_FREE and self.laser is None:
            raise ValueError(f"mode {self.mode.value} needs a laser field")

    @property
    def field(self) -> LaserField:
        """The laser, or a zero-amplitude wave for laser-free runs."""
        if self.mode is Mode.LASER_FREE or self.laser is None:
            omega = self.laser.omega if self.laser is not None else _NULL_OMEGA
            return LaserField(omega, 0.0, self.constants)
        return self.laser


@dataclass
class DcsResult:
    mode: Mode
    per_channel: dict
    total: float
    closed_channels: list
    converged: bool
    s_range: tuple[int, int]
    n_range: tuple[int, int] | None = None
    skipped: list = field(default_factory=list)


def prepare(request: DcsRequest) -> Incident:
    return build_incident(request.kinetic_energy, request.geometry, request.field,
                          request.constants, request.convention)


def _check_forward(q: FourVector, incident: Incident):
    q2 = q.dot(q)
    if abs(q2) <= FORWARD_TOL * incident.electron.q.p ** 2:
        raise ForwardSingularity(f"photon propagator q^2 = {q2!r} at exact forward scattering")
    return q2


def _prefactor(kin: ChannelKinematics, incident: Incident, q2: float, m_pref: float) -> float:
    alpha = incident.constants.coupling_squared
    flux = incident_flux(incident)
    # |q3|^2/|q1| written through the flux so both paths are exercised
    return alpha * alpha / (8.0 * m_pref * kin.Q3 * q2 * q2) * kin.q3_mag ** 2 / (flux * incident.electron.Q) / kin.jacobian


def _electron_channel(s: int, request: DcsRequest, incident: Incident) -> float:
    laser = incident.laser
    kin = solve_outgoing(s, incident, request.geometry, Mode.ELECTRON_DRESSED)
    q2 = _check_forward(kin.q_transfer, incident)
    p1, p2 = incident.electron.p, incident.muon.p
    z, phi0 = bessel_argument(p1, kin.p3, laser)
    _, b, b1, b2 = dressing_table(s, s, z, phi0)
    c = (b[0], b1[0], b2[0])
    c = amplitude.msq_electron_dressed(c, p1, kin.p3, p2, kin.p4, laser,
                                       incident.constants.m_e, incident.constants.m_mu,
                                       method=request.method)
    return _prefactor(kin, incident, q2, incident.constants.m_mu) * c


def idcs_electron_dressed(s: int, request: DcsRequest, incident: Incident | None = None) -> float:
    """IDCS of channel s with a dressed electron; a closed channel gives 0."""
    incident = prepare(request) if incident is None else incident
    try:
        return _electron_channel(int(s), request, incident)
    except ClosedChannel:
        return 0.0


def _both_group(s_total: int, svals: list[int], request: DcsRequest, incident: Incident) -> list[float]:
    """IDCS for every (s, s_total - s) sharing one outgoing kinematics."""
    laser = incident.laser
    cst = incident.constants
    kin = solve_outgoing(s_total, incident, request.geometry, Mode.BOTH_DRESSED)
    p1, p2 = incident.electron.p, incident.muon.p
    ze, phe = bessel_argument(p1, kin.p3, laser)
    zm, phm = bessel_argument(p2, kin.p4, laser)
    Y = amplitude.both_dressed_matrix(p1, kin.p3, p2, kin.p4, laser, cst.m_e, cst.m_mu)
    lo, hi = min(svals), max(svals)
    _, b, b1, b2 = dressing_table(lo, hi, ze, phe)
    nlo, nhi = s_total - hi, s_total - lo
    _, d, d1, d2 = dressing_table(nlo, nhi, zm, phm)
    out = []
    for s in svals:
        i, j = s - lo, s_total - s - nlo
        c = np.array([b[i], b1[i], b2[i]])
        dd = np.array([d[j], d1[j], d2[j]])
        val = complex(np.einsum("i,j,k,l,ijkl->", c, c.conj(), dd, dd.conj(), Y))
        amplitude._check_real(val)
        q2 = _check_forward(kin.transfer(s), incident)
        out.append(_prefactor(kin, incident, q2, incident.muon.m_star) * val.real)
    return out


def idcs_both_dressed(s: int, n: int, request: DcsRequest, incident: Incident | None = None) -> float:
    """IDCS of the (s, n) channel with both lines dressed; a closed channel gives 0."""
    incident = prepare(request) if incident is None else incident
    try:
        return _both_group(int(s) + int(n), [int(s)], request, incident)[0]
    except ClosedChannel:
        return 0.0


def _tail_converged(edges: list[float], total: float) -> bool:
    if total <= 0:
        return False
    return max(edges, default=0.0) < CONVERGENCE_TOL * total


def _sdcs_electron(request: DcsRequest, incident: Incident) -> DcsResult:
    lo, hi = request.s_range
    per, closed, skipped = {}, [], []
    for s in range(lo, hi + 1):
        try:
            per[s] = _electron_channel(s, request, incident)
        except ClosedChannel:
            per[s] = 0.0
            closed.append(s)
        except DegenerateJacobian as exc:
            warnings.warn(f"skipping channel {s}: {exc}", RuntimeWarning, stacklevel=3)
            per[s] = 0.0
            skipped.append(s)
    total = math.fsum(per[s] for s in range(lo, hi + 1))
    conv = _tail_converged([per[lo], per[hi]], total)
    return DcsResult(request.mode, per, total, closed, conv, (lo, hi), None, skipped)


def _sdcs_both(request: DcsRequest, incident: Incident) -> DcsResult:
    slo, shi = request.s_range
    nlo, nhi = request.n_range
    per, closed, skipped = {}, [], []
    for st in range(slo + nlo, shi + nhi + 1):
        svals = [s for s in range(max(slo, st - nhi), min(shi, st - nlo) + 1)]
        try:
            vals = _both_group(st, svals, request, incident)
        except ClosedChannel:
            vals = [0.0] * len(svals)
            closed.extend((s, st - s) for s in svals)
        except DegenerateJacobian as exc:
            warnings.warn(f"skipping channel total {st}: {exc}", RuntimeWarning, stacklevel=3)
            vals = [0.0] * len(svals)
            skipped.extend((s, st - s) for s in svals)
        for s, v in zip(svals, vals):
            per[(s, st - s)] = v
    order = sorted(per)
    total = math.fsum(per[key] for key in order)
    edges = [v for (s, n), v in per.items() if s in (slo, shi) or n in (nlo, nhi)]
    conv = _tail_converged(edges, total)
    return DcsResult(request.mode, {key: per[key] for key in order}, total, closed, conv,
                     (slo, shi), (nlo, nhi), skipped)


def sdcs(request: DcsRequest, auto_extend: bool = False, max_halfwidth: int = 5000,
         incident: Incident | None = None) -> DcsResult:
    """Summed DCS over the requested channel ranges.

    With ``auto_extend`` the ranges are widened until the edge channels fall
    below the convergence threshold (or ``max_halfwidth`` is reached).
    A precomputed ``incident`` must match the request.
    """
    incident = prepare(request) if incident is None else incident
    if request.mode is Mode.LASER_FREE:
        free = replace(request, mode=Mode.ELECTRON_DRESSED, laser=request.field, s_range=(0, 0))
        res = _sdcs_electron(free, incident)
        res.mode = Mode.LASER_FREE
        res.converged = True
        return res
    run = _sdcs_both if request.mode is Mode.BOTH_DRESSED else _sdcs_electron
    res = run(request, incident)
    while auto_extend and not res.converged:
        width = max(-request.s_range[0], request.s_range[1])
        if width >= max_halfwidth:
            break
        width = min(max_halfwidth, 2 * width + 10)
        request = replace(request, s_range=(-width, width),
                          n_range=(-width, width) if request.mode is Mode.BOTH_DRESSED else request.n_range)
        res = run(request, incident)
    return res


def envelope(request: DcsRequest, s_values) -> np.ndarray:
    """IDCS for each s in ``s_values`` (electron-dressed), zeros where closed."""
    incident = prepare(request)
    return np.array([idcs_electron_dressed(int(s), request, incident) for s in s_values])


def textbook_dcs(kinetic_energy: float, geometry: Geometry, constants: PhysicalConstants = CONSTANTS) -> float:
    """First-Born e-mu cross section off a muon at rest, from Mandelstam variables.

    Uses the spin-averaged amplitude 2 e^4/t^2 [(s-m^2-M^2)^2 + (u-m^2-M^2)^2 + 2t(m^2+M^2)]
    with e^2 = 4 pi alpha and the standard fixed-target phase-space factor.
    """
    m, M = constants.m_e, constants.m_mu
    E1 = kinetic_energy + m
    p1 = math.sqrt(E1 * E1 - m * m)
    th, ph = geometry.final_direction
    cos_chi = (math.cos(geometry.theta_i) * math.cos(th)
               + math.sin(geometry.theta_i) * math.sin(th) * math.cos(ph - geometry.phi_i))
    # elastic energy of the scattered electron
    a = E1 + M
    root = math.sqrt(max(M * M - m * m * (1.0 - cos_chi * cos_chi), 0.0))
    E3 = (a * (M * E1 + m * m) + p1 * p1 * cos_chi * root) / (a * a - p1 * p1 * cos_chi * cos_chi)
    p3 = math.sqrt(E3 * E3 - m * m)
    s_m = m * m + M * M + 2.0 * E1 * M
    t_m = 2.0 * m * m - 2.0 * (E1 * E3 - p1 * p3 * cos_chi)
    u_m = 2.0 * m * m + 2.0 * M * M - s_m - t_m
    if abs(t_m) <= FORWARD_TOL * p1 * p1:
        raise ForwardSingularity("t = 0 at exact forward scattering")
    e2 = 4.0 * math.pi * constants.alpha
    msq = 2.0 * e2 * e2 / (t_m * t_m) * ((s_m - m * m - M * M) ** 2 + (u_m - m * m - M * M) ** 2
                                          + 2.0 * t_m * (m * m + M * M))
    jac = abs(p3 * a - E3 * p1 * cos_chi)
    return msq * p3 * p3 / (64.0 * math.pi ** 2 * M * p1 * jac)


def laser_free_dcs(request: DcsRequest, rtol: float = 1e-9) -> tuple[float, float]:
    """(pipeline, textbook) laser-free DCS; raises if they disagree beyond ``rtol``."""
    free = replace(request, mode=Mode.LASER_FREE)
    pipe = sdcs(free).total
    book = textbook_dcs(request.kinetic_energy, request.geometry, request.constants)
    if abs(pipe - book) > rtol * abs(book):
        raise ArithmeticError(f"laser-free pipeline {pipe!r} disagrees with textbook {book!r}")
    return pipe, book
