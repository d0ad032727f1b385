"""Double-exponential quadrature on (0, inf) and trapezoid rules on circles."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable

from .lerch import EvalResult, Method, NonConvergenceError, lerch_phi_neg_int_s
from .records import IdentityCase, IdentityReport, make_report
from .special_fn import principal_log


@dataclass(frozen=True)
class ContourSpec:
    radius: float = 0.5
    nodes: int = 512
    center: complex = 0j

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("contour radius must be positive")
        if self.nodes < 1 or self.nodes & (self.nodes - 1):
            raise ValueError("node count must be a power of two")


class RadiusError(ValueError):
    """Circle leaves the region where the integrand's series converges."""


def _fsum_c(values) -> complex:
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def _trap_line(g: Callable[[float], complex], h: float, u_lo: float, u_hi: float) -> tuple[complex, int]:
    # trapezoid of g over u in [u_lo, u_hi] with step h, walking out from 0 and
    # stopping a side once its contributions are negligible
    terms = [g(0.0)]
    peak = abs(terms[0])
    for direction, limit in ((1, u_hi), (-1, u_lo)):
        quiet = 0
        k = 1
        while True:
            u = direction * k * h
            if abs(u) > abs(limit):
                break
            val = g(u)
            terms.append(val)
            a = abs(val)
            peak = max(peak, a)
            quiet = quiet + 1 if a <= 1e-18 * peak else 0
            if quiet >= 3:
                break
            k += 1
    return h * _fsum_c(terms), len(terms)


def _tanh_sinh_01(f: Callable[[float], complex]):
    # t = 1/(1+exp(-pi sinh u)); accurate near t = 0 where endpoint singularities live
    def g(u: float) -> complex:
        gg = math.pi * math.sinh(u)
        if gg < -700.0:
            return 0j
        if gg > 700.0:
            return 0j
        e = math.exp(-gg)
        t = 1.0 / (1.0 + e)
        one_minus_t = e / (1.0 + e)
        w = math.pi * math.cosh(u) * t * one_minus_t
        if t == 0.0 or w == 0.0:
            return 0j
        return complex(f(t)) * w
    return g


def _exp_sinh_1inf(f: Callable[[float], complex]):
    # t = 1 + exp(pi/2 sinh u)
    def g(u: float) -> complex:
        gg = 0.5 * math.pi * math.sinh(u)
        # beyond t ~ 700 every admissible integrand has underflowed
        if gg > 6.55 or gg < -700.0:
            return 0j
        e = math.exp(gg)
        w = 0.5 * math.pi * math.cosh(u) * e
        return complex(f(1.0 + e)) * w
    return g


def integrate_semi_infinite(f: Callable[[float], complex], tol: float = 1e-12,
                            max_level: int = 9) -> EvalResult:
    """Integral of f over (0, inf): tanh-sinh on [0, 1] plus exp-sinh on [1, inf).

    ``f`` may have an integrable power singularity at 0 and must decay at
    infinity.  The error estimate is the change between the last two step
    halvings, which overstates the true error of a converged DE rule.
    """
    left = _tanh_sinh_01(f)
    right = _exp_sinh_1inf(f)
    prev = None
    err = math.inf
    work = 0
    h = 0.5
    for _level in range(max_level + 1):
        a, na = _trap_line(left, h, -7.0, 4.0)
        b, nb = _trap_line(right, h, -5.0, 5.0)
        work += na + nb
        est = a + b
        if prev is not None:
            # floor at a few ulps: the level difference can vanish exactly
            err = max(abs(est - prev), 8.9e-16 * abs(est))
            if err <= tol or err <= 4e-16 * abs(est):
                return EvalResult(est, err, Method.INTEGRAL_REP, work)
        prev = est
        h /= 2.0
    raise NonConvergenceError(f"semi-infinite quadrature stalled at estimated error {err:.3e}")


def circle_integral(f: Callable[[complex], complex], spec: ContourSpec = ContourSpec()) -> complex:
    """(1 / 2 pi i) * closed integral of f around the circle, by the trapezoid rule."""
    n = spec.nodes
    vals = []
    for j in range(n):
        offset = spec.radius * cmath.exp(2j * math.pi * j / n)
        vals.append(f(spec.center + offset) * offset)
    return _fsum_c(vals) / n


def contour_circle_cauchy(y, k: int, spec: ContourSpec = ContourSpec()) -> complex:
    """Circle quadrature of exp(w y) w^(-k-1); equals y^k / k!."""
    if k < 0 or int(k) != k:
        raise ValueError("k must be a non-negative integer")
    y = complex(y)
    k = int(k)
    return circle_integral(lambda w: cmath.exp(w * y) * w ** (-k - 1), spec)


def default_spec(m, nodes: int = 512) -> ContourSpec:
    return ContourSpec(radius=min(0.5, 0.9 * complex(m).imag), nodes=nodes)


def _check_radius(m: complex, spec: ContourSpec):
    if spec.center != 0:
        raise RadiusError("circle must be centred at the origin pole")
    if not spec.radius < m.imag:
        raise RadiusError(f"radius {spec.radius} must be below Im(m) = {m.imag}")


def _a_pow_w(a: complex):
    log_a = principal_log(a)
    return lambda w: cmath.exp(w * log_a)


def gen_sec_closed(a, m, k: int, b: float) -> complex:
    """2^(k+1) (ib)^k e^(ibm) Phi(-e^(2ibm), -k, (b - i log a)/2b) / k!"""
    a, m = complex(a), complex(m)
    v = (b - 1j * principal_log(a)) / (2.0 * b)
    phi = lerch_phi_neg_int_s(-cmath.exp(2j * b * m), k, v)
    return 2.0 ** (k + 1) * (1j * b) ** k * cmath.exp(1j * b * m) * phi / math.factorial(k)


def gen_cos_sec_closed(a, m, k: int, b: float, x: float) -> complex:
    a, m = complex(a), complex(m)
    zz = -cmath.exp(2j * b * m)
    la = principal_log(a)
    phi_minus = lerch_phi_neg_int_s(zz, k, (b - x - 1j * la) / (2.0 * b))
    phi_plus = lerch_phi_neg_int_s(zz, k, (b + x - 1j * la) / (2.0 * b))
    pre = 2.0 ** k * (1j * b) ** k * cmath.exp(1j * m * (b - x)) / math.factorial(k)
    return pre * (phi_minus + cmath.exp(2j * m * x) * phi_plus)


def contour_verify_gen_sec(a, m, k: int, b: float, spec: ContourSpec | None = None,
                           tol: float = 1e-9) -> IdentityReport:
    """Compare the Lerch closed form with circle quadrature of a^w w^(-k-1) sec(b(m+w))."""
    m = complex(m)
    spec = spec or default_spec(m)
    _check_radius(m, spec)
    apw = _a_pow_w(complex(a))
    lhs = gen_sec_closed(a, m, k, b)
    rhs = circle_integral(lambda w: apw(w) * w ** (-k - 1) / cmath.cos(b * (m + w)), spec)
    case = IdentityCase("GEN_SEC", {"a": complex(a), "m": m, "k": int(k), "b": complex(b)},
                        tol_abs=tol, tol_rel=tol)
    return make_report(case, lhs, rhs, notes=f"circle r={spec.radius:g} nodes={spec.nodes}")


def contour_verify_gen_cos_sec(a, m, k: int, b: float, x: float,
                               spec: ContourSpec | None = None, tol: float = 1e-9) -> IdentityReport:
    m = complex(m)
    spec = spec or default_spec(m)
    _check_radius(m, spec)
    apw = _a_pow_w(complex(a))
    lhs = gen_cos_sec_closed(a, m, k, b, x)
    rhs = circle_integral(
        lambda w: apw(w) * w ** (-k - 1) * cmath.cos(x * (m + w)) / cmath.cos(b * (m + w)), spec)
    case = IdentityCase("GEN_COS_SEC",
                        {"a": complex(a), "m": m, "k": int(k), "b": complex(b), "x": complex(x)},
                        tol_abs=tol, tol_rel=tol)
    return make_report(case, lhs, rhs, notes=f"circle r={spec.radius:g} nodes={spec.nodes}")
