"""Identity cases, reports, and the residual comparison policies."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

TWO_PI = 2.0 * math.pi


@dataclass
class IdentityCase:
    id: str
    params: dict = field(default_factory=dict)
    branch: dict = field(default_factory=dict)
    tol_abs: float = 1e-10
    tol_rel: float = 1e-10

    def sort_key(self):
        flat = []
        for name in sorted(self.params):
            v = self.params[name]
            if isinstance(v, int):
                flat.append((name, float(v), 0.0))
            else:
                v = complex(v)
                flat.append((name, v.real, v.imag))
        return (self.id, tuple(flat), tuple(sorted(self.branch.items())))


@dataclass
class IdentityReport:
    case: IdentityCase
    lhs: complex
    rhs: complex
    abs_residual: float
    rel_residual: float
    passed: bool
    notes: str = ""


def _residuals(diff: complex, rhs: complex) -> tuple[float, float]:
    a = abs(diff)
    scale = abs(rhs)
    if scale == 0.0:
        r = 0.0 if a == 0.0 else math.inf
    else:
        r = a / scale
    return a, r


def _ok(case: IdentityCase, a: float, r: float) -> bool:
    return a <= case.tol_abs or r <= case.tol_rel


def make_report(case: IdentityCase, lhs, rhs, notes: str = "", compare: str = "value") -> IdentityReport:
    """Fill an IdentityReport.

    compare:
      "value"       raw |lhs - rhs|
      "mod2pi"      lhs, rhs are logarithms; the difference is reduced modulo 2*pi*i
      "unimodular"  lhs, rhs are products carrying complex powers; if the raw
                    residual fails, equality of moduli is accepted and the
                    leftover phase is recorded
    """
    lhs, rhs = complex(lhs), complex(rhs)
    notes = [notes] if notes else []
    diff = lhs - rhs
    if compare == "mod2pi":
        turns = round(diff.imag / TWO_PI)
        if turns:
            diff -= 1j * TWO_PI * turns
            notes.append(f"difference reduced by 2*pi*i*({turns})")
    a, r = _residuals(diff, rhs)
    ok = _ok(case, a, r)
    if not ok and compare == "unimodular" and lhs != 0 and rhs != 0:
        ma, mr = _residuals(complex(abs(lhs) - abs(rhs)), complex(abs(rhs)))
        if _ok(case, ma, mr):
            phase = cmath.phase(lhs / rhs)
            notes.append(f"moduli agree (abs {ma:.3e}); unimodular phase offset {phase:.12g} rad")
            a, r, ok = ma, mr, True
    if not math.isfinite(a):
        ok = False
    return IdentityReport(case, lhs, rhs, a, r, ok, "; ".join(notes))


def failed_report(case: IdentityCase, message: str) -> IdentityReport:
    nan = complex(math.nan, math.nan)
    return IdentityReport(case, nan, nan, math.inf, math.inf, False, message)
