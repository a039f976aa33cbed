"""Standalone ascending-series oracle for modified Bessel functions.

Pure-Python reference used by the test suite to cross-check the library's
Bessel routines. Deliberately has no dependency on gwpack or scipy: power
series for I_nu, the reflection formula for non-integer-order K_nu, and the
log-series for integer-order K_n. Accurate to ~1e-12 relative for |z| <= 6,
which is the region the lattice tests sample.
"""

from __future__ import annotations

import cmath
import math

_EULER_GAMMA = 0.5772156649015328606065120900824024

_MAX_TERMS = 400


def _real_gamma(a: float) -> float:
    """Gamma for real a, supporting negative non-integer arguments."""
    if a > 0:
        return math.gamma(a)
    # reflection: Gamma(a) Gamma(1-a) = pi / sin(pi a)
    return math.pi / (math.sin(math.pi * a) * math.gamma(1.0 - a))


def bessel_i_series(nu: float, z: complex) -> complex:
    r"""I_nu(z) = (z/2)^nu \sum_k (z^2/4)^k / (k! Gamma(nu+k+1))."""
    z = complex(z)
    q = z * z / 4.0
    total = 0.0 + 0.0j
    term: complex | None = None
    for k in range(_MAX_TERMS):
        a = nu + k + 1.0
        if term is None:
            if a <= 0 and a == int(a):
                continue  # 1/Gamma at a nonpositive integer is zero
            first = (1.0 / _real_gamma(a)) + 0.0j
            for j in range(1, k + 1):
                first *= q / j  # (z^2/4)^k / k! up to the first finite order
            term = first
        else:
            term = term * q / (k * (nu + k))
        total += term
        if abs(term) < 1e-18 * max(abs(total), 1e-300) and k > 4:
            break
    return (0.5 * z) ** nu * total


def bessel_k_series(nu: float, z: complex) -> complex:
    """K_nu(z) from ascending series; nu real, Re(z) > 0 and |z| moderate.

    Non-integer order uses the reflection form
    K_nu = pi (I_{-nu} - I_nu) / (2 sin(pi nu)); integer order uses the
    log-series with digamma coefficients.
    """
    z = complex(z)
    n = round(nu)
    if abs(nu - n) > 1e-9:
        return (
            math.pi
            / (2.0 * math.sin(math.pi * nu))
            * (bessel_i_series(-nu, z) - bessel_i_series(nu, z))
        )
    n = abs(int(n))
    q = z * z / 4.0
    finite = 0.0 + 0.0j
    if n > 0:
        term = 0.5 * (0.5 * z) ** (-n)
        for k in range(n):
            coef = math.factorial(n - k - 1) / math.factorial(k)
            finite += term * coef
            term *= -q
    logpart = (-1.0) ** (n + 1) * cmath.log(0.5 * z) * bessel_i_series(float(n), z)
    tail = 0.0 + 0.0j
    term = (0.5 * z) ** n * 0.5 * (-1.0) ** n / math.factorial(n)
    for k in range(_MAX_TERMS):
        if k > 0:
            term = term * q / (k * (n + k))
        tail += term * (_digamma_int(k + 1) + _digamma_int(n + k + 1))
        if abs(term) < 1e-18 * max(abs(tail), 1e-300) and k > 4:
            break
    return finite + logpart + tail


def _digamma_int(m: int) -> float:
    """psi(m) for positive integer m: -gamma + H_{m-1}."""
    return -_EULER_GAMMA + sum(1.0 / j for j in range(1, m))
