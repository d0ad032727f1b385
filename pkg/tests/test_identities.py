import cmath
import math

import mpmath as mp
import pytest

from hurwitz_lerch import identities as ids
from hurwitz_lerch.lerch import lerch_phi_neg_int_s
from hurwitz_lerch.records import IdentityCase, make_report
from hurwitz_lerch.special_fn import gamma

EXPECTED_IDS = ["T1", "D1", "P1", "P2", "F1", "S1", "F2", "P3", "C1", "C2", "C3", "E1", "E2", "C4", "P4",
                "P5", "G1", "GO1", "B1", "B2", "H1", "PD1", "LG1", "TB1"]


@pytest.fixture(scope="module")
def suite():
    skipped = []
    return ids.run_suite(skipped=skipped), skipped


def _v(identity, tol=1e-10, branch=None, **params):
    return ids.verify(IdentityCase(identity, params, branch or {}, tol, tol))


# ---------------------------------------------------------------- registry

def test_registry_shape():
    reg = ids.registry()
    assert [d.id for d in reg] == EXPECTED_IDS
    assert len(reg) == 24
    assert len({d.id for d in reg}) == 24
    for d in reg:
        assert callable(d.evaluate)
        assert d.default_grid, d.id
        assert d.compare in ("value", "mod2pi", "unimodular")


def test_unknown_id():
    with pytest.raises(ids.UnknownIdentityError):
        ids.verify(IdentityCase("NOPE", {}))


# ----------------------------------------------------------------- theorem

def test_theorem_k0_reduces_to_secant():
    lhs = ids.theorem_lhs(0, 1, 0.4, 1, 1)
    rhs = ids.theorem_rhs(0, 1, 0.4, 1, 1)
    d1 = _v("D1", m=0.4, n=1, z=1)
    # with k = 0 both sides are the secant identity times -1/2
    assert abs(lhs + d1.lhs / 2) < 1e-12
    assert abs(rhs + d1.rhs / 2) < 1e-12


def test_theorem_m0_k0_constants():
    for a in (1, 1.3, complex(0.8, 0.2)):
        assert abs(ids.theorem_lhs(0, a, 0, 2, 2) - ids.theorem_rhs(0, a, 0, 2, 2)) < 1e-13


def test_theorem_k2_against_exact_rational_forms():
    k, a, m, n, z = 2, 1, 0.3, 1, 2
    q = 2 * z + 1
    big = q ** n
    rhs = (big ** k * cmath.exp(1j * m * big) * lerch_phi_neg_int_s(-cmath.exp(2j * m * big), k, (a / big + 1) / 2)
           - q ** -k * cmath.exp(1j * m / q) * lerch_phi_neg_int_s(-cmath.exp(2j * m / q), k, (2 * z * a + a + 1) / 2))
    assert abs(ids.theorem_rhs(k, a, m, n, z) - rhs) < 1e-12
    assert abs(ids.theorem_lhs(k, a, m, n, z) - rhs) < 1e-10


def test_theorem_against_mpmath_noninteger_k():
    k, a, m, n, z = complex(0.5, 0.3), complex(0.8, 0.2), -0.6, 2, 3
    q = 2 * z + 1
    P = mp.lerchphi
    big = q ** n
    ref = (mp.mpf(big) ** k * mp.exp(1j * m * big) * P(-mp.exp(2j * m * big), -k, (a / big + 1) / 2)
           - (mp.mpf(1) / q) ** k * mp.exp(1j * m / q) * P(-mp.exp(2j * m / q), -k, (2 * z * a + a + 1) / 2))
    assert abs(ids.theorem_rhs(k, a, m, n, z) - complex(ref)) < 1e-9
    assert abs(ids.theorem_lhs(k, a, m, n, z) - complex(ref)) < 1e-8


# ---------------------------------------------------------- verify examples

def test_verify_p2_example():
    rep = _v("P2", z=2, a=0.6)
    assert abs(rep.rhs - math.sqrt(5)) < 1e-15
    assert rep.passed and rep.rel_residual <= 1e-10


def test_verify_gosper_trig():
    rep = _v("GO1", tol=1e-14, form=0)
    assert rep.passed and rep.abs_residual <= 1e-14


def test_verify_d1_m0():
    rep = _v("D1", m=0, n=2, z=3)
    assert rep.lhs == 0 and rep.rhs == 0 and rep.abs_residual == 0


def test_p2_schwarz_reflection():
    a = complex(1.4, 0.1)
    r1 = _v("P2", z=4, a=a)
    r2 = _v("P2", z=4, a=a.conjugate())
    assert abs(r1.lhs - r2.lhs.conjugate()) < 1e-12


def test_p1_odd_z_flagged():
    rep = _v("P1", a=1, n=1, z=3)
    assert "precondition not met" in rep.notes


def test_evaluation_error_is_data():
    rep = _v("T1", k=0.5, a=-1, m=0.1, n=0, z=1)  # v hits the pole lattice
    assert not rep.passed and "evaluation error" in rep.notes
    rep = _v("P2", z=2.5, a=1)
    assert not rep.passed and "bad parameters" in rep.notes


def test_c3_printed_form_holds_for_odd_z():
    for z in (1, 3):
        rep = _v("C3", tol=1e-8, z=z)
        assert rep.passed


def test_e1_and_c4_log_identities():
    for z in (1, 2, 3):
        assert _v("E1", tol=1e-8, n=2, z=z).passed
        assert _v("C4", tol=1e-8, n=2, z=z).passed


def test_e1_wrong_branch_detected_and_scanned():
    # shifting this log adds a real 2 pi^2 / q^n, which is not a multiple of 2 pi i
    case = IdentityCase("E1", {"n": 0, "z": 1}, {"log_rhs2": 1}, 1e-8, 1e-8)
    rep = ids.verify(case)
    assert not rep.passed and "log_rhs2=1" in rep.notes
    assert ids.branch_scan(case).passed


def test_branch_scan_recovers_principal():
    case = IdentityCase("P3", {"m": 0.35, "n": 1, "z": 2}, {"tan": 1}, 1e-9, 1e-9)
    assert ids.branch_scan(case).passed


# ------------------------------------------------------- corrected forms

def test_s1_printed_sign_is_off():
    # the corrected sum is minus the m-derivative of the secant identity
    x, n, z = 0.11, 1, 2
    rep = _v("S1", x=x, n=n, z=z)
    assert rep.passed
    h = 1e-5
    lhs_d1 = lambda m: _v("D1", m=m, n=n, z=z).lhs
    deriv = (lhs_d1(x + h) - lhs_d1(x - h)) / (2 * h)
    assert abs(deriv + rep.lhs) < 1e-7
    assert "printed form" in rep.notes


def _printed_diff(rep) -> float:
    return float(rep.notes.rsplit("|diff|=", 1)[1])


def test_c1_printed_form_differs_only_for_odd_z_above_one():
    for z in (1, 2, 4):
        rep = _v("C1", n=1, z=z)
        assert rep.passed and _printed_diff(rep) < 1e-9
    rep = _v("C1", n=1, z=3)
    assert rep.passed and _printed_diff(rep) > 1


def test_c2_corrected_holds_printed_fails_for_odd_z():
    for z in range(1, 7):
        rep = _v("C2", tol=1e-9, z=z)
        assert rep.passed
        if z % 2 == 1 and z > 1:
            assert _printed_diff(rep) > 1
        else:
            assert _printed_diff(rep) < 1e-9


def test_g1_corrected_and_printed():
    for z in (2, 4):
        rep = _v("G1", n=1, z=z)
        assert rep.passed and _printed_diff(rep) < 1e-12
    for z in (1, 3):
        rep = _v("G1", n=1, z=z)
        assert rep.passed and _printed_diff(rep) > 1e-3
    rep = _v("G1", n=0, z=3)
    assert rep.passed
    target = 7 ** -0.5 * (gamma(0.75) / gamma(0.25)) ** 2
    assert abs(rep.rhs - target) < 1e-15


# ---------------------------------------------------------------- gamma-quotient table

def test_table1_rows():
    rows = ids.table1_rows()
    assert len(rows) == 10
    assert abs(rows[0].closed_form_value - 1 / math.sqrt(5)) < 1e-16
    assert abs(rows[3].closed_form_value - 1 / 27) < 1e-16
    assert abs(rows[9].closed_form_value - 1 / 729) < 1e-18
    assert [r.sign for r in rows] == [1] * 5 + [-1] + [1] * 4
    assert rows[5].numerator_args[0].denominator == 28


def test_table1_verify_all_pass():
    reps = ids.table1_verify()
    assert all(r.passed and r.rel_residual <= 1e-10 for r in reps)
    assert "minus sign" in reps[5].notes


def test_table1_against_mpmath():
    for row in ids.table1_rows():
        num = mp.fprod(mp.gamma(mp.mpf(x.numerator) / x.denominator) for x in row.numerator_args)
        den = mp.fprod(mp.gamma(mp.mpf(x.numerator) / x.denominator) for x in row.denominator_args)
        q = (num / den) ** row.multiplicity
        assert abs(float(q) - abs(row.closed_form_value)) < 1e-13 * float(q)


# ------------------------------------------------------------------ suite

def test_run_suite_empty():
    assert ids.run_suite({"version": 1, "identities": []}) == []


def test_default_suite_all_pass(suite):
    reports, skipped = suite
    assert len(reports) >= 200
    bad = [(r.case.id, r.case.params, r.notes) for r in reports if not r.passed]
    assert not bad
    assert {r.case.id for r in reports} == set(EXPECTED_IDS)


def test_suite_sorted(suite):
    reports, _ = suite
    keys = [r.case.sort_key() for r in reports]
    assert keys == sorted(keys)


def test_single_case_grid_equals_verify():
    cfg = {"identities": [{"id": "P3", "tol": 1e-9, "params": {"m": [0.35], "n": [1], "z": [2]}}]}
    (rep,) = ids.run_suite(cfg)
    direct = ids.verify(IdentityCase("P3", {"m": 0.35, "n": 1, "z": 2}, {}, 1e-9, 1e-9))
    assert rep.lhs == direct.lhs and rep.rhs == direct.rhs and rep.passed == direct.passed


def test_preflight_skips_poles():
    cfg = {"identities": [{"id": "D1", "params": {"m": [math.pi / 2 - 0.01, 0.1], "n": [0], "z": [1]}}]}
    skipped = []
    reps = ids.run_suite(cfg, skipped=skipped)
    assert len(reps) == 1 and len(skipped) == 1
    assert "pole" in skipped[0][1]


def test_threads_same_result(monkeypatch):
    cfg = {"identities": [{"id": "T1", "params": {"k": [1, 0.5], "a": [1], "m": [0.1, 0.35], "n": [1], "z": [2]}}]}
    a = ids.run_suite(cfg)
    monkeypatch.setenv("LERCH_VERIFY_THREADS", "4")
    b = ids.run_suite(cfg)
    assert [(r.lhs, r.rhs) for r in a] == [(r.lhs, r.rhs) for r in b]


@pytest.mark.parametrize("cfg", [
    {"identities": [{"id": "ZZ", "params": {}}]},
    {"identities": [{"id": "D1", "params": {"m": ["0.1+"], "n": [0], "z": [1]}}]},
    {"identities": [{"id": "D1", "params": {"m": [0.1], "n": [0.5], "z": [1]}}]},
    {"identities": "nope"},
])
def test_config_errors(cfg):
    with pytest.raises(ids.GridConfigError):
        ids.run_suite(cfg)


@pytest.mark.parametrize("text,value", [
    ("1", 1), ("-0.5", -0.5), ("0.8+0.2i", complex(0.8, 0.2)), ("i", 1j), ("-i", -1j), ("2-3i", complex(2, -3)),
    ("1e-3+2e-1i", complex(1e-3, 0.2)), (" 0.6 ", 0.6)])
def test_parse_complex(text, value):
    assert ids.parse_complex(text) == value


@pytest.mark.parametrize("text", ["", "abc", "1+", "1+2k", "i i", None, True])
def test_parse_complex_rejects(text):
    with pytest.raises(ValueError):
        ids.parse_complex(text)


# ---------------------------------------------------------------- figures

def test_figure_samples():
    s = ids.figure_samples([1, -1, 2])
    assert abs(s[0].f - 1) < 1e-15 and abs(s[1].f - 1) < 1e-15
    h1 = _v("H1", tol=1e-8, r=2)
    assert abs(s[2].f - h1.rhs) < 1e-13
    assert abs(s[2].f - h1.lhs) < 1e-8
    assert not any(x.pole for x in s)


def test_figure_pole_flag():
    s = ids.figure_samples([0, 1.5, complex(0.5, 0.5)])
    assert s[0].pole and math.isnan(s[0].f.real)
    assert s[1].pole
    assert not s[2].pole


def test_h1_examples():
    for r in (1.3, 1.7, 2.4):
        assert _v("H1", tol=1e-8, r=r).passed


# -------------------------------------------------------- records policy

def test_residual_policy_crossover():
    case = IdentityCase("X", {}, {}, 1e-10, 1e-10)
    assert make_report(case, 1e-11, 0).passed  # absolute near zero
    assert make_report(case, 1e6 + 1e-5, 1e6).passed  # relative for large values
    assert not make_report(case, 1 + 1e-9, 1).passed
    r = make_report(case, 2j * math.pi + 0.5, 0.5, compare="mod2pi")
    assert r.passed and "2*pi*i" in r.notes
    r = make_report(case, -2.0, 2.0, compare="unimodular")
    assert r.passed and "phase" in r.notes
