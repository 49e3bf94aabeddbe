"""Ordinary Bessel functions and the Jacobi-Anger dressing coefficients.

J_n(z) is evaluated by Miller's backward recurrence normalized with
J_0 + 2*sum_k J_2k = 1, which stays stable for orders well above z where the
forward recurrence blows up.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

_BIG = 1e250
_SMALL = 1e-250
# below this argument the power series is used (the recurrence would overflow)
_SERIES_MAX_Z = 0.5


def _series(nmax: int, z: float) -> np.ndarray:
    """Power series sum_k (-1)^k (z/2)^(2k+n) / (k! (k+n)!) for small z."""
    n = np.arange(nmax + 1)
    half = 0.5 * z
    lead = np.exp(n * (math.log(z) - math.log(2.0)) - np.array([math.lgamma(v + 1.0) for v in n]))
    term = lead.copy()
    out = lead.copy()
    x = -half * half
    for k in range(1, 30):
        term = term * x / (k * (k + n))
        out += term
        if np.all(np.abs(term) <= 1e-17 * np.abs(out)):
            break
    return out


def _start_order(nmax: int, z: float) -> int:
    m = max(nmax, int(z)) + 40 + int(12.0 * z ** (1.0 / 3.0))
    return m + (m & 1)


def bessel_j_orders(nmax: int, z: float) -> np.ndarray:
    """Return [J_0(z), ..., J_nmax(z)] for z >= 0."""
    if nmax < 0:
        raise ValueError("nmax must be >= 0")
    if z < 0:
        raise ValueError("z must be >= 0; use bessel_j for negative arguments")
    out = np.zeros(nmax + 1)
    if z == 0.0:
        out[0] = 1.0
        return out
    if z < _SERIES_MAX_Z:
        return _series(nmax, z)
    m = _start_order(nmax, z)
    two_over_z = 2.0 / z
    jp1 = 0.0
    j = 1e-300
    norm = 0.0
    for k in range(m, 0, -1):
        if k <= nmax:
            out[k] = j
        if not k & 1:
            norm += j
        jm1 = k * two_over_z * j - jp1
        jp1, j = j, jm1
        if abs(j) > _BIG:
            j *= _SMALL
            jp1 *= _SMALL
            norm *= _SMALL
            out *= _SMALL
    out[0] = j
    norm = 2.0 * norm + j
    return out / norm


def bessel_j(n: int, z: float) -> float:
    """J_n(z) for any integer order and real argument."""
    n = int(n)
    sign = 1.0
    if n < 0:
        n = -n
        if n & 1:
            sign = -sign
    if z < 0:
        z = -z
        if n & 1:
            sign = -sign
    return sign * float(bessel_j_orders(n, z)[n])


def bessel_j_range(nmin: int, nmax: int, z: float) -> np.ndarray:
    """J_n(z) for n = nmin..nmax (inclusive), z >= 0."""
    top = max(abs(nmin), abs(nmax))
    pos = bessel_j_orders(top, z)
    n = np.arange(nmin, nmax + 1)
    vals = pos[np.abs(n)]
    odd_neg = (n < 0) & (n % 2 == 1)
    vals[odd_neg] = -vals[odd_neg]
    return vals


@dataclass(frozen=True)
class DressingCoefficients:
    s: int
    B: complex
    B1: complex
    B2: complex


def dressing_table(smin: int, smax: int, z: float, phi0: float):
    """Arrays (s, B, B1, B2) for orders smin..smax.

    B_s = J_s(z) exp(i s phi0); B1 and B2 are the cos/sin rows of the
    Jacobi-Anger expansion built from the neighbouring orders.
    """
    if z < 0:
        raise ValueError("z must be >= 0")
    s = np.arange(smin, smax + 1)
    ext = np.arange(smin - 1, smax + 2)
    b_ext = bessel_j_range(smin - 1, smax + 1, z) * np.exp(1j * ext * phi0)
    b = b_ext[1:-1]
    up, down = b_ext[2:], b_ext[:-2]
    b1 = 0.5 * (up + down)
    b2 = (up - down) / 2j
    return s, b, b1, b2


def dressing_coefficients(s: int, z: float, phi0: float) -> DressingCoefficients:
    _, b, b1, b2 = dressing_table(s, s, z, phi0)
    return DressingCoefficients(int(s), complex(b[0]), complex(b1[0]), complex(b2[0]))


def envelope_halfwidth(z: float, margin: int = 40) -> int:
    """Order beyond which |J_s(z)| is negligible (< 1e-12).

    The transition region past s = z widens like z^(1/3), so the fixed
    margin is enlarged for large arguments.
    """
    return int(math.ceil(z)) + max(margin, int(math.ceil(10.0 * z ** (1.0 / 3.0))))
