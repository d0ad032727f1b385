"""The Lerch transcendent Phi(z, s, v) = sum_{n>=0} z^n (v+n)^(-s).

Regimes:

* ``z == 0`` or ``|z| <= 0.5``: direct summation with a geometric tail bound.
* ``0.5 < |z| <= 1``, ``z != 1``: the first N terms are summed directly and the
  remainder ``z^N Phi(z, s, v+N)`` comes from its large-shift expansion

      Phi(z, s, w) ~ w^-s sum_k (-1)^k (s)_k w^-k b_k(z),

  where ``b_k`` are the Taylor coefficients of 1/(1 - e^mu) about mu = log z.
  The expansion is asymptotic; N is chosen so that its smallest term is far
  below double precision.  This also gives the analytic continuation for
  Re(s) <= 0 on the unit circle.
* ``s`` a non-positive integer: exact rational form from (v + z d/dz)^k 1/(1-z).
* ``z == 1``: Hurwitz zeta (Euler-Maclaurin).

The integral representation over (0, inf) is kept as an independent route for
Re(s) > 0 (``method="integral"``), and the CVZ alternating-series accelerator
as another for z = -1 (``method="cvz"``).
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass
from functools import lru_cache

from .accel import cvz_alternating
from .special_fn import (
    PoleError,
    bernoulli,
    is_integer,
    is_nonpositive_integer,
    log_gamma,
)

EPS = 2.220446049250313e-16
LN2 = math.log(2.0)

# shift the tail start until dist(log z, 2 pi i Z) * |v + N| reaches this
_TAIL_DEPTH = 45.0
_MAX_SHIFT = 200_000
_TAIL_TERMS = 90


class Method(str, enum.Enum):
    SERIES = "Series"
    ACCELERATED = "Accelerated"
    CLOSED_FORM_NEG_INT_S = "ClosedFormNegIntS"
    INTEGRAL_REP = "IntegralRep"
    RECURRENCE = "Recurrence"


class Scheme(str, enum.Enum):
    CENTRAL_DIFF = "CentralDiff"
    TERMWISE_SERIES = "TermwiseSeries"
    HURWITZ_ROUTE = "HurwitzRoute"


class LerchPoleError(PoleError):
    pass


class NonConvergenceError(ArithmeticError):
    pass


class UnsupportedSchemeError(ValueError):
    pass


@dataclass(frozen=True)
class EvalResult:
    value: complex
    abs_err: float
    method: Method
    work: int


@dataclass(frozen=True)
class LerchArgs:
    z: complex
    s: complex
    v: complex

    def __post_init__(self):
        object.__setattr__(self, "z", complex(self.z))
        object.__setattr__(self, "s", complex(self.s))
        object.__setattr__(self, "v", complex(self.v))

    def validate(self):
        if is_nonpositive_integer(self.v):
            raise LerchPoleError(f"v = {self.v.real:g} is a pole of the series")
        if abs(self.z) > 1.0 + 1e-15:
            raise ValueError("|z| > 1 is not supported")
        if self.z == 1 and self.s.real <= 1.0:
            raise LerchPoleError("z = 1 needs Re(s) > 1")


def _csum(values) -> complex:
    values = list(values)
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def _pow_neg(x: complex, s: complex) -> complex:
    """x^-s on the principal branch."""
    if s == 0:
        return complex(1.0)
    if x.imag == 0.0 and x.real > 0.0:
        mag = math.pow(x.real, -s.real)
        if s.imag == 0.0:
            return complex(mag)
        ph = -s.imag * math.log(x.real)
        return complex(mag * math.cos(ph), mag * math.sin(ph))
    return cmath.exp(-s * cmath.log(x))


# ---------------------------------------------------------------- closed form

def _poly_eval(coeffs, z):
    acc = 0j
    for c in reversed(coeffs):
        acc = acc * z + c
    return acc


def lerch_phi_neg_int_s(z, kk: int, v) -> complex:
    """Phi(z, -kk, v) for integer kk >= 0 as the rational function (v + z d/dz)^kk 1/(1-z)."""
    z, v = complex(z), complex(v)
    if kk < 0 or int(kk) != kk:
        raise ValueError("kk must be a non-negative integer")
    if z == 1:
        raise LerchPoleError("z = 1 is a pole of the closed form")
    # f = P(z) / (1 - z)^d
    poly = [complex(1.0)]
    d = 1
    for _ in range(int(kk)):
        deriv = [i * poly[i] for i in range(1, len(poly))]
        new = [0j] * (len(poly) + 1)
        # v P (1 - z)
        for i, c in enumerate(poly):
            new[i] += v * c
            new[i + 1] -= v * c
        # z P' (1 - z)
        for i, c in enumerate(deriv):
            new[i + 1] += c
            new[i + 2] -= c
        # d z P
        for i, c in enumerate(poly):
            new[i + 1] += d * c
        while len(new) > 1 and new[-1] == 0:
            new.pop()
        poly = new
        d += 1
    return _poly_eval(poly, z) / (1.0 - z) ** d


# --------------------------------------------------------------- tail engine

@lru_cache(maxsize=4096)
def _inv_one_minus_exp_taylor(z: complex, count: int) -> tuple:
    """Taylor coefficients b_k of 1/(1 - e^mu) about mu = log z."""
    ratio = z / (1.0 - z)
    inv_fact = [1.0]
    for i in range(1, count):
        inv_fact.append(inv_fact[-1] / i)
    b = [1.0 / (1.0 - z)]
    for n in range(1, count):
        acc = _csum(b[n - i] * inv_fact[i] for i in range(1, n + 1))
        b.append(ratio * acc)
    return tuple(b)


def _lattice_distance(z: complex) -> float:
    mu = cmath.log(z)
    d = abs(mu)
    if mu.imag > 0:
        d = min(d, abs(mu - 2j * math.pi))
    elif mu.imag < 0:
        d = min(d, abs(mu + 2j * math.pi))
    return d


def _tail_engine(z: complex, s: complex, v: complex, deriv: bool) -> EvalResult:
    dist = _lattice_distance(z)
    if dist < 1e-3:
        raise NonConvergenceError(f"z = {z} is too close to the branch point z = 1")
    target = max((_TAIL_DEPTH + abs(s)) / dist, 10.0, 2.0 * abs(s) + 10.0)
    n_shift = 0
    if abs(v) < target:
        n_shift = max(0, int(math.ceil(target - v.real)))
        w = v + n_shift
        while abs(w) < target:
            n_shift += 1
            w += 1.0
    if n_shift > _MAX_SHIFT:
        raise NonConvergenceError("required shift exceeds the work limit")
    w = v + n_shift

    head = []
    zn = complex(1.0)
    for n in range(n_shift):
        x = v + n
        if x == 0:
            raise LerchPoleError("v + n = 0 for some n")
        t = zn * _pow_neg(x, s)
        head.append(-cmath.log(x) * t if deriv else t)
        zn *= z
    zN = z ** n_shift if n_shift else complex(1.0)

    b = _inv_one_minus_exp_taylor(z, _TAIL_TERMS)
    log_w = cmath.log(w)
    w_pow = _pow_neg(w, s)
    inv_w = 1.0 / w
    d = complex(1.0)      # (-1)^k (s)_k / w^k
    dd = 0j               # its s-derivative
    series, dseries = [], []
    best = math.inf
    prev = 0.0
    last = 0.0
    for k in range(_TAIL_TERMS):
        term = d * b[k]
        size = abs(term) + (abs(dd * b[k]) if deriv else 0.0)
        # b_k can vanish for every other k (z = -1), so judge pairs of terms
        pair = max(size, prev)
        if k > 4 and pair > 4.0 * best:
            break  # the asymptotic series has started to grow
        series.append(term)
        if deriv:
            dseries.append(dd * b[k])
        if k > 0:
            best = min(best, pair)
        last = pair
        prev = size
        if k > 2 and pair < 1e-18 * max(abs(_csum(series)), 1e-300):
            break
        d, dd = -d * (s + k) * inv_w, -(dd * (s + k) + d) * inv_w
    tail_sum = _csum(series)
    if deriv:
        tail = zN * w_pow * (_csum(dseries) - log_w * tail_sum)
    else:
        tail = zN * w_pow * tail_sum
    value = _csum(head + [tail])
    scale = math.fsum(abs(t) for t in head) + abs(tail)
    err = abs(zN * w_pow) * last * (1.0 + abs(log_w)) + 8.0 * EPS * scale
    return EvalResult(value, err, Method.ACCELERATED, n_shift + len(series))


def _direct_series(z: complex, s: complex, v: complex, deriv: bool) -> EvalResult:
    terms = []
    zn = complex(1.0)
    az = abs(z)
    n = 0
    while True:
        x = v + n
        if x == 0:
            raise LerchPoleError("v + n = 0 for some n")
        t = zn * _pow_neg(x, s)
        if deriv:
            t = -cmath.log(x) * t
        terms.append(t)
        n += 1
        zn *= z
        if zn == 0:
            return EvalResult(_csum(terms), 0.0, Method.SERIES, n)
        ax = abs(v + n)
        if ax > abs(s) + 2.0:
            rho = az * math.exp(abs(s) / (ax - 1.0))
            if deriv:
                rho *= (1.0 + 1.0 / (ax - 1.0)) * 1.01
            if rho < 0.95:
                nxt = abs(zn * _pow_neg(v + n, s)) * (abs(cmath.log(v + n)) if deriv else 1.0)
                bound = nxt / (1.0 - rho)
                total = abs(_csum(terms))
                if bound <= 1e-17 * max(total, 1e-300) or bound == 0.0:
                    err = bound + 4.0 * EPS * math.fsum(abs(u) for u in terms)
                    return EvalResult(_csum(terms), err, Method.SERIES, n)
        if n > 100_000:
            raise NonConvergenceError("direct series did not converge")


# ------------------------------------------------------------------ hurwitz

def _em_regular(s: complex, a: complex, deriv: bool):
    """Euler-Maclaurin for zeta(s, a) without the x^(1-s)/(s-1) term.

    Returns (value, derivative_or_None, x, error).
    """
    n_head = max(10, int(math.ceil(abs(s) + 12.0 - a.real)))
    while abs(a + n_head) < abs(s) + 12.0:
        n_head += 1
    head, dhead = [], []
    for n in range(n_head):
        x = a + n
        if x == 0:
            raise PoleError("a is a non-positive integer")
        t = _pow_neg(x, s)
        head.append(t)
        if deriv:
            dhead.append(-cmath.log(x) * t)
    x = a + n_head
    lx = cmath.log(x)
    xs = _pow_neg(x, s)
    terms = [0.5 * xs]
    dterms = [-0.5 * lx * xs] if deriv else []
    # (s)_{2k-1} and its derivative, built up factor by factor
    poch, dpoch = complex(1.0), 0j
    m = 0
    xpow = xs / x  # x^(-s-1)
    inv_x2 = 1.0 / (x * x)
    err = 0.0
    for k in range(1, 40):
        while m < 2 * k - 1:
            poch, dpoch = poch * (s + m), dpoch * (s + m) + poch
            m += 1
        coef = float(bernoulli(2 * k)) / math.factorial(2 * k)
        t = coef * poch * xpow
        terms.append(t)
        if deriv:
            dterms.append(coef * (dpoch - poch * lx) * xpow)
        err = abs(t)
        if poch == 0 and dpoch == 0:
            err = 0.0
            break
        if err < 1e-18 * abs(_csum(head + terms)):
            break
        xpow *= inv_x2
    val = _csum(head + terms)
    dval = _csum(dhead + dterms) if deriv else None
    return val, dval, x, err + 8.0 * EPS * math.fsum(abs(t) for t in head)


def _pole_term(s: complex, x: complex, deriv: bool):
    # x^(1-s) / (s-1) and its s-derivative
    lx = cmath.log(x)
    p = _pow_neg(x, s - 1.0)
    val = p / (s - 1.0)
    dval = (-lx * p / (s - 1.0) - p / (s - 1.0) ** 2) if deriv else None
    return val, dval


def hurwitz_zeta(s, a) -> EvalResult:
    """zeta(s, a) = sum (a+n)^-s by Euler-Maclaurin summation."""
    s, a = complex(s), complex(a)
    if s == 1:
        raise LerchPoleError("hurwitz_zeta has a pole at s = 1")
    if is_nonpositive_integer(a):
        raise PoleError("a is a non-positive integer")
    reg, _, x, err = _em_regular(s, a, False)
    pole, _ = _pole_term(s, x, False)
    return EvalResult(reg + pole, err, Method.SERIES, 0)


def hurwitz_zeta_sderiv(s, a) -> EvalResult:
    s, a = complex(s), complex(a)
    if s == 1:
        raise LerchPoleError("hurwitz_zeta has a pole at s = 1")
    _, dreg, x, err = _em_regular(s, a, True)
    _, dpole = _pole_term(s, x, True)
    return EvalResult(dreg + dpole, err, Method.SERIES, 0)


def hurwitz_zeta_sderiv_at0(a) -> complex:
    """d/ds zeta(s, a) at s = 0, i.e. log_gamma(a) - log(2 pi)/2."""
    return log_gamma(a) - 0.5 * math.log(2.0 * math.pi)


def _pole_difference(s: complex, x: complex, y: complex, deriv: bool):
    # [x^(1-s) - y^(1-s)] / (s-1), finite at s = 1
    t = 1.0 - s
    u = cmath.log(x) - cmath.log(y)
    ly = cmath.log(y)
    yt = cmath.exp(t * ly)
    if abs(t * u) > 0.5:
        xt = cmath.exp(t * cmath.log(x))
        val = (xt - yt) / (s - 1.0)
        if not deriv:
            return val, None
        dval = (-cmath.log(x) * xt + ly * yt) / (s - 1.0) - (xt - yt) / (s - 1.0) ** 2
        return val, dval
    # E(t) = (e^(tu) - 1)/t and E'(t) by series
    e, de = 0j, 0j
    term = u            # u^(k+1) t^k / (k+1)!
    for k in range(40):
        e += term
        if k >= 1 and t != 0:
            de += k * term / t
        nxt = term * t * u / (k + 2)
        if abs(nxt) < 1e-19 * abs(e):
            break
        term = nxt
    if t == 0:
        de = u * u / 2.0
    val = -yt * e
    if not deriv:
        return val, None
    return val, ly * yt * e + yt * de


def hurwitz_difference(s, a, b, deriv: bool = False):
    """zeta(s, a) - zeta(s, b) (and d/ds), analytic at s = 1."""
    s, a, b = complex(s), complex(a), complex(b)
    ra, dra, xa, ea = _em_regular(s, a, deriv)
    rb, drb, xb, eb = _em_regular(s, b, deriv)
    pv, dpv = _pole_difference(s, xa, xb, deriv)
    val = ra - rb + pv
    dval = (dra - drb + dpv) if deriv else None
    return val, dval, ea + eb


# --------------------------------------------------------------- public API

def _is_neg_int(s: complex) -> bool:
    return is_integer(s) and s.real <= 0


def lerch_phi(z, s, v, method: str | None = None) -> EvalResult:
    """Evaluate Phi(z, s, v).

    ``method`` forces a route: "series", "accelerated", "closed", "integral",
    "cvz", "hurwitz".  The default picks the most accurate regime.
    """
    args = LerchArgs(z, s, v)
    args.validate()
    z, s, v = args.z, args.s, args.v
    if method is None:
        if z == 0:
            return EvalResult(_pow_neg(v, s), 0.0, Method.SERIES, 1)
        if z == 1:
            return hurwitz_zeta(s, v)
        if _is_neg_int(s):
            method = "closed"
        elif abs(z) <= 0.5:
            method = "series"
        else:
            method = "accelerated"
    if method == "closed":
        if not _is_neg_int(s):
            raise UnsupportedSchemeError("closed form needs s a non-positive integer")
        val = lerch_phi_neg_int_s(z, int(round(-s.real)), v)
        return EvalResult(val, 16 * EPS * (1.0 + abs(val)), Method.CLOSED_FORM_NEG_INT_S, 1)
    if method == "series":
        if abs(z) > 0.99:
            raise UnsupportedSchemeError("direct series needs |z| <= 0.99")
        return _direct_series(z, s, v, False)
    if method == "accelerated":
        return _tail_engine(z, s, v, False)
    if method == "integral":
        return _lerch_integral(z, s, v)
    if method == "cvz":
        if z != -1:
            raise UnsupportedSchemeError("CVZ route is for z = -1")
        val = cvz_alternating(lambda n: _pow_neg(v + n, s), 60)
        return EvalResult(val, 1e-13 * (1.0 + abs(val)), Method.ACCELERATED, 60)
    if method == "hurwitz":
        if z != -1:
            raise UnsupportedSchemeError("Hurwitz split is for z = -1")
        diff, _, err = hurwitz_difference(s, v / 2.0, (v + 1.0) / 2.0)
        scale = _pow_neg(2.0, s)
        return EvalResult(scale * diff, abs(scale) * err, Method.SERIES, 0)
    raise UnsupportedSchemeError(f"unknown method {method!r}")


def _lerch_integral(z: complex, s: complex, v: complex) -> EvalResult:
    from .quadrature import integrate_semi_infinite

    if s.real <= 0:
        raise UnsupportedSchemeError("integral representation needs Re(s) > 0")
    if z == 1:
        raise UnsupportedSchemeError("integral route is for z != 1")
    # move Re(v) above 1/2 with Phi(z,s,v) = v^-s + z Phi(z,s,v+1)
    lead = []
    zn = complex(1.0)
    steps = 0
    while v.real < 0.5:
        if steps > 64:
            raise NonConvergenceError("too many recurrence steps")
        lead.append(zn * _pow_neg(v, s))
        zn *= z
        v += 1.0
        steps += 1
    sm1 = s - 1.0

    def integrand(t: float) -> complex:
        return cmath.exp(sm1 * math.log(t) - v * t) / (1.0 - z * math.exp(-t))

    res = integrate_semi_infinite(integrand, tol=1e-14)
    inv_gamma = cmath.exp(-log_gamma(s))
    val = _csum(lead + [zn * inv_gamma * res.value])
    method = Method.RECURRENCE if steps else Method.INTEGRAL_REP
    return EvalResult(val, abs(inv_gamma * zn) * res.abs_err, method, res.work)


def lerch_phi_sderiv(z, s, v, scheme: str | Scheme | None = None) -> EvalResult:
    """d/ds Phi(z, s, v)."""
    args = LerchArgs(z, s, v)
    args.validate()
    z, s, v = args.z, args.s, args.v
    if scheme is None:
        if z == -1 and s == 0:
            scheme = Scheme.HURWITZ_ROUTE
        elif abs(z) <= 1.0 and z != 1:
            scheme = Scheme.TERMWISE_SERIES
        else:
            scheme = Scheme.CENTRAL_DIFF
    scheme = Scheme(scheme)
    if scheme is Scheme.HURWITZ_ROUTE:
        if z != -1:
            raise UnsupportedSchemeError("HurwitzRoute is only defined for z = -1")
        if s == 0:
            val = -0.5 * LN2 + log_gamma(v / 2.0) - log_gamma((v + 1.0) / 2.0)
            return EvalResult(val, 8 * EPS * (1.0 + abs(val)), Method.CLOSED_FORM_NEG_INT_S, 0)
        diff, ddiff, err = hurwitz_difference(s, v / 2.0, (v + 1.0) / 2.0, deriv=True)
        scale = _pow_neg(2.0, s)
        val = scale * (ddiff - LN2 * diff)
        return EvalResult(val, abs(scale) * err * (1.0 + LN2), Method.SERIES, 0)
    if scheme is Scheme.TERMWISE_SERIES:
        if z == 0:
            t = _pow_neg(v, s)
            return EvalResult(-cmath.log(v) * t, 0.0, Method.SERIES, 1)
        if abs(z) <= 0.5:
            return _direct_series(z, s, v, True)
        return _tail_engine(z, s, v, True)
    # central difference with one Richardson step
    h = 1e-5

    def phi(x):
        return lerch_phi(z, x, v).value

    d1 = (phi(s + h) - phi(s - h)) / (2 * h)
    d2 = (phi(s + h / 2) - phi(s - h / 2)) / h
    val = d2 + (d2 - d1) / 3.0
    return EvalResult(val, abs(d2 - d1) / 3.0 + 1e-10 * (1.0 + abs(val)), Method.SERIES, 4)


def hyp2f1_1a(a, z) -> EvalResult:
    """2F1(1, a; a+1; z) = a * Phi(z, 1, a)."""
    a, z = complex(a), complex(z)
    if z == 0:
        return EvalResult(complex(1.0), 0.0, Method.SERIES, 1)
    res = lerch_phi(z, 1.0, a)
    return EvalResult(a * res.value, abs(a) * res.abs_err, res.method, res.work)
