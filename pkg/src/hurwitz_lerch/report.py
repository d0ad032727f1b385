"""JSON and CSV serialization of reports, the gamma-quotient table and figure samples.

Floats are written with 17 significant digits so binary64 values survive a
round trip.  Non-finite numbers become the strings "nan", "inf", "-inf".
"""

from __future__ import annotations

import csv
import io
import json
import math

from .identities import FigureSample, Table1Row, table1_quotient
from .records import IdentityCase, IdentityReport


def fmt_float(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _num(x: float):
    # JSON value: a raw 17-digit literal when finite, a string otherwise
    x = float(x)
    if math.isfinite(x):
        return _Raw(format(x, ".17g"))
    return fmt_float(x)


class _Raw(str):
    """Marker for pre-formatted numeric literals."""


def _param_value(v):
    if isinstance(v, int) and not isinstance(v, bool):
        return v
    v = complex(v)
    return {"re": _num(v.real), "im": _num(v.imag)}


def _report_obj(rep: IdentityReport) -> dict:
    case = rep.case
    return {
        "id": case.id,
        "params": {k: _param_value(case.params[k]) for k in sorted(case.params)},
        "branch": {k: int(case.branch[k]) for k in sorted(case.branch)},
        "tol_abs": _num(case.tol_abs),
        "tol_rel": _num(case.tol_rel),
        "lhs": {"re": _num(rep.lhs.real), "im": _num(rep.lhs.imag)},
        "rhs": {"re": _num(rep.rhs.real), "im": _num(rep.rhs.imag)},
        "abs_residual": _num(rep.abs_residual),
        "rel_residual": _num(rep.rel_residual),
        "pass": bool(rep.passed),
        "notes": rep.notes,
    }


def _dump(obj, indent: int, level: int = 0) -> str:
    # json.dumps would re-format floats; walk the tree to keep the 17-digit text
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, _Raw):
        return str(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(k)}: {_dump(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        items = [pad + _dump(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    return json.dumps(obj, ensure_ascii=False)


def emit_json(reports) -> str:
    return _dump([_report_obj(r) for r in reports], 2) + "\n" if reports else "[]\n"


def _to_float(x) -> float:
    return float(x)  # float() accepts "nan", "inf", "-inf"


def _to_complex(obj) -> complex:
    return complex(_to_float(obj["re"]), _to_float(obj["im"]))


def parse_json(text: str) -> list[IdentityReport]:
    out = []
    # "-0" is how a negative zero prints at 17 digits; keep its sign
    for obj in json.loads(text, parse_int=lambda t: -0.0 if t == "-0" else int(t)):
        params = {}
        for k, v in obj["params"].items():
            params[k] = v if isinstance(v, int) else _to_complex(v)
        case = IdentityCase(obj["id"], params, dict(obj.get("branch", {})),
                            _to_float(obj.get("tol_abs", 1e-10)), _to_float(obj.get("tol_rel", 1e-10)))
        out.append(IdentityReport(case, _to_complex(obj["lhs"]), _to_complex(obj["rhs"]),
                                  _to_float(obj["abs_residual"]), _to_float(obj["rel_residual"]),
                                  bool(obj["pass"]), obj.get("notes", "")))
    return out


def _csv_text(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def emit_csv(reports) -> str:
    """Flat CSV; complex params split into name_re/name_im, integer params kept whole."""
    int_names, cx_names = set(), set()
    for r in reports:
        for k, v in r.case.params.items():
            (int_names if isinstance(v, int) else cx_names).add(k)
    param_cols = []
    for name in sorted(int_names | cx_names):
        if name in cx_names:
            param_cols += [(name, "re"), (name, "im")]
        else:
            param_cols.append((name, None))
    header = ["id"] + [f"{n}_{part}" if part else n for n, part in param_cols] + [
        "branch", "lhs_re", "lhs_im", "rhs_re", "rhs_im", "abs_residual", "rel_residual",
        "tol_abs", "tol_rel", "pass", "notes"]
    rows = []
    for r in reports:
        row = [r.case.id]
        for name, part in param_cols:
            if name not in r.case.params:
                row.append("")
                continue
            v = r.case.params[name]
            if part is None:
                row.append(str(v) if isinstance(v, int) else fmt_float(complex(v).real))
            else:
                cv = complex(v)
                row.append(fmt_float(cv.real if part == "re" else cv.imag))
        row.append(";".join(f"{k}={r.case.branch[k]}" for k in sorted(r.case.branch)))
        row += [fmt_float(r.lhs.real), fmt_float(r.lhs.imag), fmt_float(r.rhs.real), fmt_float(r.rhs.imag),
                fmt_float(r.abs_residual), fmt_float(r.rel_residual), fmt_float(r.case.tol_abs),
                fmt_float(r.case.tol_rel), "true" if r.passed else "false", r.notes]
        rows.append(row)
    return _csv_text(header, rows)


def emit_table1_csv(rows: list[Table1Row], reports: list[IdentityReport]) -> str:
    header = ["index", "numerator_args", "denominator_args", "multiplicity", "sign", "computed_re",
              "computed_im", "closed_form_re", "closed_form_im", "closed_form_text", "rel_residual", "pass"]
    body = []
    for row, rep in zip(rows, reports):
        q = table1_quotient(row)
        body.append([row.index, " ".join(str(x) for x in row.numerator_args),
                     " ".join(str(x) for x in row.denominator_args), row.multiplicity, row.sign,
                     fmt_float(q.real), fmt_float(q.imag), fmt_float(row.closed_form_value.real),
                     fmt_float(row.closed_form_value.imag), row.closed_form_text,
                     fmt_float(rep.rel_residual), "true" if rep.passed else "false"])
    return _csv_text(header, body)


def emit_figure_csv(samples: list[FigureSample]) -> str:
    header = ["r_re", "r_im", "f_re", "f_im", "f_abs", "pole_flag"]
    body = [[fmt_float(s.r.real), fmt_float(s.r.imag), fmt_float(s.f.real), fmt_float(s.f.imag),
             fmt_float(abs(s.f)), "1" if s.pole else "0"] for s in samples]
    return _csv_text(header, body)


def write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
