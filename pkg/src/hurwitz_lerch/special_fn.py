"""Gamma-family functions on the complex plane.

Everything here works in binary64 complex arithmetic.  ``log_gamma`` is the
continuous (principal) log-gamma, not ``log(gamma(x))``: it satisfies
``log_gamma(x + 1) == log_gamma(x) + log(x)`` with the principal ``log``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


class PoleError(ValueError):
    """Argument sits on a pole of the function being evaluated."""


@dataclass(frozen=True)
class Constants:
    pi: float = math.pi
    euler_gamma: float = 0.57721566490153286061
    catalan: float = 0.91596559417721901505
    log_2pi: float = 1.8378770664093454836


CONSTANTS = Constants()

# Lanczos coefficients for g = 607/128, 15 terms (Godfrey).
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_C = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)
_HALF_LOG_2PI = 0.5 * CONSTANTS.log_2pi


def as_complex(x) -> complex:
    return complex(x)


def is_nonpositive_integer(x: complex) -> bool:
    x = complex(x)
    return x.imag == 0.0 and x.real <= 0.0 and x.real == math.floor(x.real)


def is_integer(x: complex) -> bool:
    x = complex(x)
    return x.imag == 0.0 and x.real == math.floor(x.real)


@lru_cache(maxsize=None)
def bernoulli(n: int) -> Fraction:
    """Bernoulli number B_n with the B_1 = -1/2 convention."""
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(-1, 2)
    if n % 2:
        return Fraction(0)
    acc = Fraction(0)
    binom = 1
    for k in range(n):
        acc += binom * bernoulli(k)
        binom = binom * (n + 1 - k) // (k + 1)
    return -acc / (n + 1)


def _lanczos_log_gamma(x: complex) -> complex:
    # valid for Re(x) >= 1/2
    z = x - 1.0
    acc = complex(_LANCZOS_C[0])
    for k in range(1, len(_LANCZOS_C)):
        acc += _LANCZOS_C[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(acc)


def log_gamma(x) -> complex:
    """Principal-branch log-gamma, continuous on C minus (-inf, 0]."""
    x = complex(x)
    if is_nonpositive_integer(x):
        raise PoleError(f"log_gamma has a pole at {x.real:g}")
    if x.real >= 0.5:
        return _lanczos_log_gamma(x)
    # upward recurrence keeps the branch continuous (reflection would not)
    shift = int(math.ceil(0.5 - x.real))
    logs = [cmath.log(x + k) for k in range(shift)]
    res = _lanczos_log_gamma(x + shift)
    return complex(res.real - math.fsum(t.real for t in logs),
                   res.imag - math.fsum(t.imag for t in logs))


def gamma(x) -> complex:
    return cmath.exp(log_gamma(x))


def trigamma(a) -> complex:
    """psi^(1)(a) = sum_{n>=0} (a+n)^-2."""
    a = complex(a)
    if is_nonpositive_integer(a):
        raise PoleError(f"trigamma has a pole at {a.real:g}")
    small = []
    while abs(a) < 12.0 or a.real < 6.0:
        small.append(1.0 / (a * a))
        a += 1.0
    inv = 1.0 / a
    inv2 = inv * inv
    # asymptotic: 1/a + 1/(2a^2) + sum B_2k / a^(2k+1)
    tail = complex(0.0)
    power = inv * inv2
    for k in range(1, 12):
        tail += float(bernoulli(2 * k)) * power
        power *= inv2
    terms = small + [inv, 0.5 * inv2, tail]
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def principal_log(x, branch: int = 0) -> complex:
    x = complex(x)
    if x == 0:
        raise ValueError("log of zero")
    if x.imag == 0:
        # drop a negative zero so the negative real axis maps to +i*pi
        x = complex(x.real, 0.0)
    res = cmath.log(x)
    if branch:
        res += 2j * math.pi * branch
    return res


def principal_power(base, exponent, branch: int = 0) -> complex:
    """base**exponent as exp(exponent * Log(base)) with Im(Log) in (-pi, pi].

    ``branch`` shifts the logarithm by 2*pi*i*branch.
    """
    base = complex(base)
    exponent = complex(exponent)
    if exponent == 1 and branch == 0:
        return base
    if exponent == 0:
        return complex(1.0)
    if base == 0:
        if exponent.real > 0:
            return complex(0.0)
        raise ValueError("zero base with exponent of non-positive real part")
    if branch == 0 and exponent.imag == 0 and exponent.real == int(exponent.real) \
            and abs(exponent.real) <= 64:
        # exact repeated multiplication for small integer powers
        return base ** int(exponent.real)
    return cmath.exp(exponent * principal_log(base, branch))


def gamma_quotient_log(numerators, denominators) -> complex:
    """sum log_gamma(numerators) - sum log_gamma(denominators)."""
    parts = [log_gamma(x) for x in numerators] + [-log_gamma(x) for x in denominators]
    return complex(math.fsum(p.real for p in parts), math.fsum(p.imag for p in parts))
