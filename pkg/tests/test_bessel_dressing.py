import cmath
import math

import numpy as np
import pytest
import scipy.special as sc
from hypothesis import given
from hypothesis import strategies as st

from emulaser.bessel_dressing import (bessel_j, bessel_j_orders, bessel_j_range,
                                      dressing_coefficients, dressing_table, envelope_halfwidth)


def test_trivial_values():
    assert bessel_j(0, 0.0) == 1.0
    assert bessel_j(1, 0.0) == 0.0
    assert bessel_j(-3, 0.0) == 0.0


def test_frozen_values():
    # frozen from a tabulated reference: J_0(1), J_1(2.5), J_5(10)
    assert bessel_j(0, 1.0) == pytest.approx(0.7651976865579666, abs=1e-15)
    assert bessel_j(1, 2.5) == pytest.approx(0.4970941024642741, abs=1e-15)
    assert bessel_j(5, 10.0) == pytest.approx(-0.2340615281867936, abs=1e-15)


@pytest.mark.parametrize("z", [1e-6, 0.3, 1.0, 7.5, 40.0, 123.4, 200.0])
def test_against_scipy(z):
    n = np.arange(0, 301)
    ours = bessel_j_orders(300, z)
    assert np.max(np.abs(ours - sc.jv(n, z))) < 1e-13


def test_large_argument_against_scipy():
    z = 4.0e5
    ours = bessel_j_range(-10, 10, z)
    ref = sc.jv(np.arange(-10, 11), z)
    assert np.max(np.abs(ours - ref)) < 1e-13


@given(st.integers(-300, 300), st.floats(0.0, 200.0))
def test_negative_order_and_argument_symmetry(n, z):
    assert bessel_j(-n, z) == pytest.approx((-1) ** (n % 2) * bessel_j(n, z), abs=1e-15)
    assert bessel_j(n, -z) == pytest.approx((-1) ** (n % 2) * bessel_j(n, z), abs=1e-15)


@given(st.integers(1, 250), st.floats(0.01, 200.0))
def test_recurrence_residual(n, z):
    j = bessel_j_range(n - 1, n + 1, z)
    assert abs(2 * n * j[1] - z * (j[0] + j[2])) < 1e-12 * max(1.0, n)


@pytest.mark.parametrize("z", np.linspace(0.0, 50.0, 11))
def test_sum_rule(z):
    w = int(math.ceil(z)) + 40
    j = bessel_j_range(-w, w, z)
    assert abs(math.fsum(j * j) - 1.0) < 1e-12


@pytest.mark.parametrize("z", [0.5, 3.0, 12.0, 50.0])
def test_envelope_support(z):
    w = math.ceil(z) + 40
    assert envelope_halfwidth(z) == w
    assert abs(bessel_j(w, z)) < 1e-12 and abs(bessel_j(-w, z)) < 1e-12


@pytest.mark.parametrize("z", [200.0, 1000.0, 4.0e4])
def test_envelope_support_widens_for_large_z(z):
    # a fixed margin of 40 is not enough once z^(1/3) grows
    assert abs(bessel_j(math.ceil(z) + 40, z)) > 1e-12
    w = envelope_halfwidth(z)
    assert abs(bessel_j(w, z)) < 1e-12


@pytest.mark.parametrize("z", [1e-300, 1e-135, 1e-20, 1e-4, 0.1, 0.4999, 0.5001])
def test_small_arguments(z):
    n = np.arange(0, 60)
    assert np.max(np.abs(bessel_j_orders(59, z) - sc.jv(n, z))) < 1e-15


def test_dressing_at_zero_argument():
    c0 = dressing_coefficients(0, 0.0, 1.3)
    assert (c0.B, c0.B1, c0.B2) == (1.0, 0.0, 0.0)
    c1 = dressing_coefficients(1, 0.0, 1.3)
    assert c1.B == 0.0 and abs(c1.B1) == pytest.approx(0.5) and abs(c1.B2) == pytest.approx(0.5)
    assert dressing_coefficients(3, 0.0, 0.2).B == 0.0


@given(st.integers(-60, 60), st.floats(0.0, 60.0), st.floats(-math.pi, math.pi))
def test_coefficients_bounded_and_parity(s, z, phi0):
    c = dressing_coefficients(s, z, phi0)
    assert abs(c.B) <= 1 + 1e-14 and abs(c.B1) <= 1 + 1e-14 and abs(c.B2) <= 1 + 1e-14
    assert abs(c.B) == pytest.approx(abs(dressing_coefficients(-s, z, phi0).B), abs=1e-15)


@pytest.mark.parametrize("z,phi0", [(3.0, 0.0), (3.0, 0.7), (12.0, -2.1)])
def test_jacobi_anger_rows(z, phi0):
    S = 40 + int(z)
    s, b, b1, b2 = dressing_table(-S, S, z, phi0)
    for phi in np.linspace(0.0, 2 * math.pi, 31):
        ph = np.exp(-1j * s * phi)
        base = cmath.exp(-1j * z * math.sin(phi - phi0))
        assert abs(np.sum(b * ph) - base) < 1e-12
        assert abs(np.sum(b1 * ph) - math.cos(phi) * base) < 1e-12
        assert abs(np.sum(b2 * ph) - math.sin(phi) * base) < 1e-12


def test_table_matches_scalar_calls():
    s, b, b1, b2 = dressing_table(-5, 5, 7.3, 0.4)
    for i, order in enumerate(s):
        c = dressing_coefficients(int(order), 7.3, 0.4)
        assert (c.B, c.B1, c.B2) == pytest.approx((b[i], b1[i], b2[i]), abs=1e-16)


def test_input_validation():
    with pytest.raises(ValueError):
        bessel_j_orders(-1, 1.0)
    with pytest.raises(ValueError):
        bessel_j_orders(3, -1.0)
    with pytest.raises(ValueError):
        dressing_table(0, 1, -0.5, 0.0)
