"""Command line: eval, verify, suite, table1, figures.

Exit status is 0 when every executed verification passes, 1 when any fails
and 2 for usage or config errors.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys

from . import identities as ids
from .lerch import LerchPoleError, NonConvergenceError, UnsupportedSchemeError, lerch_phi
from .records import IdentityCase
from .report import (emit_csv, emit_figure_csv, emit_json, emit_table1_csv, fmt_float, write_text)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

# identity parameters that may be passed as --name on the verify subcommand
PARAM_NAMES = ("k", "a", "m", "n", "z", "r", "s", "x", "form", "N", "row")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _complex_arg(text: str) -> complex:
    try:
        return ids.parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_float(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0 or not math.isfinite(v):
        raise argparse.ArgumentTypeError(f"must be a positive number: {text!r}")
    return v


def _branch_arg(text: str) -> tuple[str, int]:
    key, sep, val = text.partition("=")
    try:
        if not sep or not key:
            raise ValueError
        return key, int(val)
    except ValueError:
        raise argparse.ArgumentTypeError(f"branch override must look like key=INT, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="hurwitz-lerch", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log skipped grid points")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("eval", help="evaluate Phi(z, s, v)")
    e.add_argument("--z", type=_complex_arg, required=True)
    e.add_argument("--s", type=_complex_arg, required=True)
    e.add_argument("--v", type=_complex_arg, required=True)
    e.add_argument("--method", choices=["series", "accelerated", "closed", "integral", "cvz", "hurwitz"])
    e.add_argument("--format", choices=["text", "json"], default="text")

    v = sub.add_parser("verify", help="verify one identity case")
    v.add_argument("--id", required=True, dest="identity")
    for name in PARAM_NAMES:
        v.add_argument(f"--{name}", type=_complex_arg)
    v.add_argument("--branch", type=_branch_arg, action="append", default=[],
                   help="branch override key=INT, repeatable")
    v.add_argument("--tol", type=_positive_float, help="sets both tolerances")
    v.add_argument("--tol-abs", type=_positive_float)
    v.add_argument("--tol-rel", type=_positive_float)
    v.add_argument("--scan", action="store_true", help="try branch indices -2..2 on every branch key")
    v.add_argument("--format", choices=["text", "json", "csv"], default="text")

    s = sub.add_parser("suite", help="run a verification grid")
    s.add_argument("--config", help="grid config JSON (default: the shipped grid)")
    s.add_argument("--output-dir", default=".")
    s.add_argument("--format", choices=["json", "csv", "both"], default="both")

    t = sub.add_parser("table1", help="verify the quotient gamma table and write table1.csv")
    t.add_argument("--output", default="table1.csv")
    t.add_argument("--tol", type=_positive_float, default=1e-10)

    f = sub.add_parser("figures", help="sample the reciprocal-angle tangent ratio")
    f.add_argument("--rmin", type=float, default=-4.0)
    f.add_argument("--rmax", type=float, default=4.0)
    f.add_argument("--steps", type=int, default=401)
    f.add_argument("--imag", type=float, default=0.0, help="constant imaginary part of r")
    f.add_argument("--output", default="figure_samples.csv")
    return p


def _fmt_c(x: complex) -> str:
    x = complex(x)
    sign = "-" if math.copysign(1.0, x.imag) < 0 and not math.isnan(x.imag) else "+"
    return f"{x.real!r}{sign}{abs(x.imag)!r}i"


def _print_report(rep, out):
    status = "PASS" if rep.passed else "FAIL"
    params = ", ".join(f"{k}={v if isinstance(v, int) else _fmt_c(v)}" for k, v in sorted(rep.case.params.items()))
    print(f"{status} {rep.case.id} [{params}]", file=out)
    print(f"  lhs = {_fmt_c(rep.lhs)}", file=out)
    print(f"  rhs = {_fmt_c(rep.rhs)}", file=out)
    print(f"  abs_residual = {rep.abs_residual:.3e}  rel_residual = {rep.rel_residual:.3e}", file=out)
    if rep.notes:
        print(f"  notes: {rep.notes}", file=out)


def _cmd_eval(args, out) -> int:
    try:
        res = lerch_phi(args.z, args.s, args.v, method=args.method)
    except (LerchPoleError, UnsupportedSchemeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    except NonConvergenceError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    if args.format == "json":
        import json

        def num(x):
            # finite floats as JSON numbers (repr round-trips), others as strings
            return x if math.isfinite(x) else fmt_float(x)
        print(json.dumps({"value": {"re": num(res.value.real), "im": num(res.value.imag)},
                          "abs_err": num(res.abs_err), "method": res.method.value, "work": res.work}),
              file=out)
    else:
        val = res.value
        shown = repr(val.real) if val.imag == 0 else _fmt_c(val)
        print(shown, file=out)
        print(f"abs_err={res.abs_err:.3e} method={res.method.value} work={res.work}", file=out)
    return EXIT_OK


def _cmd_verify(args, out) -> int:
    try:
        desc = ids.descriptor(args.identity)
    except ids.UnknownIdentityError:
        raise UsageError(f"unknown identity id {args.identity!r}; known: "
                         + ", ".join(d.id for d in ids.registry())) from None
    raw = {name: getattr(args, name) for name in PARAM_NAMES if getattr(args, name) is not None}
    extra = sorted(set(raw) - set(desc.params) - {"N"})
    if extra:
        raise UsageError(f"{desc.id} does not take parameters: {', '.join(extra)}")
    missing = [p for p in desc.params if p not in raw]
    if missing:
        raise UsageError(f"{desc.id} needs parameters: {', '.join(missing)}")
    try:
        params = ids.normalize_params(desc, raw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    tol_abs = args.tol_abs or args.tol or desc.tol
    tol_rel = args.tol_rel or args.tol or desc.tol
    branch = dict(args.branch)
    unknown = sorted(set(branch) - set(desc.branch_keys))
    if unknown:
        raise UsageError(f"{desc.id} has no branch keys {', '.join(unknown)}; known: "
                         + (", ".join(desc.branch_keys) or "none"))
    case = IdentityCase(desc.id, params, branch, tol_abs, tol_rel)
    rep = ids.branch_scan(case) if args.scan else ids.verify(case)
    if args.format == "json":
        out.write(emit_json([rep]))
    elif args.format == "csv":
        out.write(emit_csv([rep]))
    else:
        _print_report(rep, out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def _cmd_suite(args, out) -> int:
    try:
        config = ids.load_config(args.config) if args.config else ids.default_config()
        skipped = []
        reports = ids.run_suite(config, skipped=skipped)
    except ids.GridConfigError as exc:
        raise UsageError(str(exc)) from None
    os.makedirs(args.output_dir, exist_ok=True)
    if args.format in ("json", "both"):
        write_text(os.path.join(args.output_dir, "reports.json"), emit_json(reports))
    if args.format in ("csv", "both"):
        write_text(os.path.join(args.output_dir, "reports.csv"), emit_csv(reports))
    failed = [r for r in reports if not r.passed]
    for r in failed:
        print(f"FAIL {r.case.id} {r.case.params} abs={r.abs_residual:.3e} rel={r.rel_residual:.3e} {r.notes}",
              file=out)
    for case, reason in skipped:
        logging.getLogger(__name__).info("skipped %s %s: %s", case.id, case.params, reason)
    print(f"{len(reports) - len(failed)}/{len(reports)} passed, {len(skipped)} skipped", file=out)
    return EXIT_FAIL if failed else EXIT_OK


def _cmd_table1(args, out) -> int:
    rows = ids.table1_rows()
    reports = ids.table1_verify(args.tol)
    write_text(args.output, emit_table1_csv(rows, reports))
    for row, rep in zip(rows, reports):
        status = "PASS" if rep.passed else "FAIL"
        print(f"{status} row {row.index:2d}  {row.closed_form_text:<42s} rel_residual={rep.rel_residual:.2e}",
              file=out)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_FAIL


def _cmd_figures(args, out) -> int:
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    if not args.rmax > args.rmin:
        raise UsageError("--rmax must exceed --rmin")
    h = (args.rmax - args.rmin) / (args.steps - 1)
    grid = [complex(args.rmin + i * h, args.imag) for i in range(args.steps)]
    samples = ids.figure_samples(grid)
    write_text(args.output, emit_figure_csv(samples))
    flagged = sum(s.pole for s in samples)
    print(f"wrote {len(samples)} samples to {args.output} ({flagged} near poles)", file=out)
    return EXIT_OK


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                            format="%(levelname)s %(message)s")
        handler = {"eval": _cmd_eval, "verify": _cmd_verify, "suite": _cmd_suite,
                   "table1": _cmd_table1, "figures": _cmd_figures}[args.command]
        return handler(args, out)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
