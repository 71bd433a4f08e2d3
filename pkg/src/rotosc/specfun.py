"""Hypergeometric functions on the argument ranges the radial problem needs.

Only two families appear: terminating Kummer series F(-n, c, z) for the
lambda = 0 states, and Gauss 2F1 with either a terminating first argument
(bound states) or a complex-conjugate pair a, b = x -/+ i k with y <= 0
(lambda > 0 continuum).
"""
from __future__ import annotations

import math

import cmath

import numpy as np
from scipy.special import loggamma

from .errors import ConvergenceError, DomainError

STOP_RATIO = 1e-17
STOP_RUN = 3
MAX_TERMS = 10 ** 6
PFAFF_SWITCH = -0.5
INVERSION_SWITCH = -4.0


def _fsum(terms):
    if any(isinstance(t, complex) for t in terms):
        return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
    return math.fsum(terms)


def _as_nonpositive_int(a):
    """Return -a as an int if ``a`` is a non-positive integer, else None."""
    if isinstance(a, complex):
        if a.imag != 0:
            return None
        a = a.real
    if a <= 0 and float(a).is_integer():
        return int(-a)
    return None


def kummer_coefficients(n_r: int, c: float) -> np.ndarray:
    """Power-series coefficients of F(-n_r, c, z) in z, lowest first."""
    coef = np.empty(n_r + 1)
    coef[0] = 1.0
    for k in range(n_r):
        coef[k + 1] = coef[k] * (k - n_r) / ((c + k) * (k + 1))
    return coef


def gauss_coefficients(n_r: int, b, c: float) -> np.ndarray:
    """Coefficients of the terminating series 2F1(-n_r, b; c; y) in y."""
    coef = np.empty(n_r + 1, dtype=complex if isinstance(b, complex) else float)
    coef[0] = 1.0
    for k in range(n_r):
        coef[k + 1] = coef[k] * (k - n_r) * (b + k) / ((c + k) * (k + 1))
    return coef


def kummer_poly(n_r: int, c: float, z: float) -> float:
    """Terminating confluent hypergeometric function F(-n_r, c, z)."""
    if n_r < 0 or int(n_r) != n_r:
        raise DomainError("n_r must be a non-negative integer")
    if c <= 0 and float(c).is_integer():
        raise DomainError("c must not be a non-positive integer")
    terms = [1.0]
    term = 1.0
    for k in range(int(n_r)):
        term *= (k - n_r) * z / ((c + k) * (k + 1))
        terms.append(term)
    return math.fsum(terms)


def _series(a, b, c, z, max_terms):
    terms = [1.0]
    term = 1.0
    total, comp = 1.0, 0.0
    run = 0
    for k in range(max_terms):
        term = term * (a + k) * (b + k) / ((c + k) * (k + 1)) * z
        terms.append(term)
        # Neumaier running sum, only used for the stop test
        t = total + term
        if abs(total) >= abs(term):
            comp += (total - t) + term
        else:
            comp += (term - t) + total
        total = t
        if abs(term) <= STOP_RATIO * abs(total + comp):
            run += 1
            if run >= STOP_RUN:
                return _fsum(terms)
        else:
            run = 0
    raise ConvergenceError(
        f"2F1({a}, {b}; {c}; {z}) series did not converge in {max_terms} terms"
    )


def gauss_2f1(a, b, c: float, y: float, max_terms: int = MAX_TERMS):
    """Gauss hypergeometric function 2F1(a, b; c; y).

    Terminating cases (``a`` or ``b`` a non-positive integer) are summed
    exactly for any y.  Otherwise y must be <= 0: the series is summed
    directly on [-1/2, 0] and through the Pfaff transformation
    2F1(a,b;c;y) = (1-y)^(-a) 2F1(a, c-b; c; y/(y-1)) below that.

    A complex result is returned when a or b is complex; for a conjugate
    pair it is real up to rounding.
    """
    if c <= 0 and float(c).is_integer():
        raise DomainError("c must not be a non-positive integer")
    n = _as_nonpositive_int(a)
    if n is None:
        n = _as_nonpositive_int(b)
        if n is not None:
            a, b = b, a
    if n is not None:
        terms = [1.0]
        term = 1.0
        for k in range(n):
            term = term * (a + k) * (b + k) / ((c + k) * (k + 1)) * y
            terms.append(term)
        return _fsum(terms)
    if y > 0:
        raise DomainError("non-terminating 2F1 is only provided for y <= 0")
    if y >= PFAFF_SWITCH:
        return _series(a, b, c, y, max_terms)
    if y < INVERSION_SWITCH and _inversion_ok(a, b, c):
        return _inverted(a, b, c, y, max_terms)
    z = y / (y - 1.0)
    return (1.0 - y) ** (-a) * _series(a, c - b, c, z, max_terms)


def _near_int(x, tol=1e-8):
    x = complex(x)
    return abs(x.imag) < tol and abs(x.real - round(x.real)) < tol


def _inversion_ok(a, b, c):
    if _near_int(a - b):
        return False
    return not any(_near_int(v) and complex(v).real <= 0 for v in (a, b, c - a, c - b))


def _inverted(a, b, c, y, max_terms):
    """Large-|y| connection formula in powers of 1/y (y < 0, a - b non-integer)."""
    w = 1.0 / y
    total = 0
    for p, q in ((a, b), (b, a)):
        log_coef = (loggamma(complex(c)) + loggamma(complex(q - p))
                    - loggamma(complex(q)) - loggamma(complex(c - p)))
        total += (cmath.exp(log_coef - p * math.log(-y))
                  * _series(p, p - c + 1, p - q + 1, w, max_terms))
    if not any(isinstance(v, complex) for v in (a, b)):
        return total.real
    return total
