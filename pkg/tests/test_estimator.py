import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from emulaser.dcs_engine import DcsRequest, sdcs
from emulaser.estimator import DcsEstimator
from emulaser.kinematics import Geometry, Mode
from emulaser.laser_field import LaserField


def test_params_round_trip():
    est = DcsEstimator(e0=1e7, smax=4)
    params = est.get_params()
    assert params["e0"] == 1e7 and params["smax"] == 4
    est.set_params(omega=2.0)
    assert clone(est).get_params() == est.get_params()


def test_predict_matches_engine():
    est = DcsEstimator(e0=1e7, smax=3).fit()
    angles = np.array([-30.0, 10.0, 75.0])
    got = est.predict(angles)
    for t, v in zip(angles, got):
        req = DcsRequest(Mode.ELECTRON_DRESSED, 1e6, Geometry.from_degrees(15.0, t),
                         LaserField(1.17, 1e7), (-3, 3))
        assert v == sdcs(req).total
    assert np.array_equal(est.predict(angles[:, None]), got)


def test_transform_shape_and_sum():
    est = DcsEstimator(mode="both_dressed", e0=1e8, smax=2, nmax=1).fit()
    X = np.array([[20.0], [40.0]])
    T = est.transform(X)
    assert T.shape == (2, 15)
    assert est.get_feature_names_out().shape == (15,)
    assert np.allclose(T.sum(axis=1), est.predict(X), rtol=1e-12)


def test_laser_free_features():
    est = DcsEstimator(mode="laser_free").fit()
    assert list(est.get_feature_names_out()) == ["s0"]
    assert est.transform([30.0]).shape == (1, 1)


def test_unfitted():
    with pytest.raises(NotFittedError):
        DcsEstimator().predict([10.0])


@pytest.mark.parametrize("bad", [dict(kinetic_energy=-1.0), dict(omega=0.0), dict(e0=-1.0),
                                 dict(theta_i=200.0), dict(smax=-1), dict(smax=1.5),
                                 dict(convention="odd"), dict(method="guess"), dict(mode="x")])
def test_invalid_params(bad):
    with pytest.raises((ValueError, TypeError)):
        DcsEstimator(**bad).fit()


def test_invalid_inputs():
    est = DcsEstimator(mode="laser_free").fit()
    with pytest.raises(ValueError):
        est.predict([[10.0, 20.0]])
    with pytest.raises(ValueError):
        est.predict([200.0])
    with pytest.raises(ValueError):
        est.predict([np.nan])
