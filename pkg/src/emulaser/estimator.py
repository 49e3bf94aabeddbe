"""scikit-learn style wrapper: angles in, cross sections out.

``fit`` validates the physical parameters and builds the incident state;
``predict`` maps scattering angles theta_f (degrees) to summed DCS values and
``transform`` to the per-channel IDCS matrix.
"""
from __future__ import annotations

import numbers

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_array, check_is_fitted, check_scalar

from .dcs_engine import DcsRequest, prepare, sdcs
from .kinematics import Geometry, Mode
from .laser_field import LaserField


class DcsEstimator(BaseEstimator):
    """Differential cross section as a function of the detection angle.

    Parameters mirror the command-line flags; angles are in degrees and
    energies in eV, the field strength in V/cm.
    """

    def __init__(self, mode="electron_dressed", kinetic_energy=1e6, omega=1.17, e0=1e5,
                 theta_i=15.0, phi_i=None, phi_f=None, smax=10, nmax=10,
                 convention="effective", method="closed_form"):
        self.mode = mode
        self.kinetic_energy = kinetic_energy
        self.omega = omega
        self.e0 = e0
        self.theta_i = theta_i
        self.phi_i = phi_i
        self.phi_f = phi_f
        self.smax = smax
        self.nmax = nmax
        self.convention = convention
        self.method = method

    def _validate_params(self):
        self.mode_ = Mode(self.mode)
        check_scalar(self.kinetic_energy, "kinetic_energy", numbers.Real, min_val=0.0, include_boundaries="neither")
        check_scalar(self.omega, "omega", numbers.Real, min_val=0.0, include_boundaries="neither")
        check_scalar(self.e0, "e0", numbers.Real, min_val=0.0)
        check_scalar(self.theta_i, "theta_i", numbers.Real, min_val=0.0, max_val=180.0)
        check_scalar(self.smax, "smax", numbers.Integral, min_val=0)
        check_scalar(self.nmax, "nmax", numbers.Integral, min_val=0)
        if self.convention not in ("effective", "free"):
            raise ValueError(f"convention must be 'effective' or 'free', got {self.convention!r}")
        if self.method not in ("closed_form", "trace"):
            raise ValueError(f"method must be 'closed_form' or 'trace', got {self.method!r}")

    def _request(self, theta_f: float) -> DcsRequest:
        geo = Geometry.from_degrees(self.theta_i, float(theta_f), self.phi_i, self.phi_f)
        return DcsRequest(self.mode_, self.kinetic_energy, geo, self.laser_,
                          (-self.smax, self.smax), (-self.nmax, self.nmax),
                          convention=self.convention, method=self.method)

    def fit(self, X=None, y=None):
        """Validate parameters and prepare the incident state; data are ignored."""
        self._validate_params()
        self.laser_ = LaserField(float(self.omega), float(self.e0))
        self.incident_ = prepare(self._request(0.0))
        self.n_features_in_ = 1
        return self

    def _angles(self, X) -> np.ndarray:
        check_is_fitted(self, "incident_")
        arr = check_array(X, ensure_2d=False, dtype=np.float64)
        if arr.ndim == 2:
            if arr.shape[1] != 1:
                raise ValueError(f"expected one feature (theta_f), got {arr.shape[1]}")
            arr = arr[:, 0]
        if np.any(np.abs(arr) > 180.0):
            raise ValueError("theta_f must lie in [-180, 180] degrees")
        return arr

    def results(self, X) -> list:
        """Full :class:`DcsResult` for every angle."""
        return [sdcs(self._request(t), incident=self.incident_) for t in self._angles(X)]

    def predict(self, X) -> np.ndarray:
        """Summed DCS (eV^-2) at each theta_f."""
        return np.array([r.total for r in self.results(X)])

    def transform(self, X) -> np.ndarray:
        """IDCS per channel, shape (n_angles, n_channels), channels in engine order."""
        return np.array([list(r.per_channel.values()) for r in self.results(X)])

    def get_feature_names_out(self, input_features=None) -> np.ndarray:
        check_is_fitted(self, "incident_")
        if self.mode_ is Mode.LASER_FREE:
            return np.array(["s0"], dtype=object)
        s = range(-self.smax, self.smax + 1)
        if self.mode_ is Mode.BOTH_DRESSED:
            n = range(-self.nmax, self.nmax + 1)
            return np.array([f"s{a}_n{b}" for a in s for b in n], dtype=object)
        return np.array([f"s{a}" for a in s], dtype=object)
