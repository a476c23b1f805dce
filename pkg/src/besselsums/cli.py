"""Command-line interface.

Subcommands:
    eval    one sum at one parameter point
    sweep   a grid over the damping and/or frequency at fixed order
    table   convergence study: partial values per method and level
    verify  built-in verification suite

Exit codes: 0 success, 2 domain or region error, 3 verification failure,
64 usage error.  All numeric output is locale-independent with '.' as
the decimal separator and survives a parse round-trip bit-exactly.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import __version__
from .engine import convergence_table, evaluate
from .errors import BesselSumError
from .results import ConvergenceRow, EvalResult
from .verify import run_suite

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_VERIFY = 3
EXIT_USAGE = 64

_METHODS = ("auto", "direct", "polylog", "theorem", "asymptotic", "special")


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # usage problems exit 64
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _float_list(text: str, flag: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok != ""]
    except ValueError:
        raise BesselSumError(f"{flag} expects a number or comma-separated"
                             f" numbers, got {text!r}")


def _result_entry(r: EvalResult) -> dict[str, Any]:
    return {
        "value": r.value,
        "est_error": r.est_error,
        "terms": r.terms_used,
        "method": str(r.method),
        "flags": sorted(r.region_flags),
    }


def _row_entry(row: ConvergenceRow) -> dict[str, Any]:
    return {
        "method": str(row.method),
        "level": row.level,
        "value": row.value,
        "abs_error": row.abs_error,
        "seconds": row.seconds,
    }


def _report(inputs: dict[str, Any], results: list[EvalResult],
            rows: list[ConvergenceRow] | None = None,
            notes: list[str] | None = None) -> dict[str, Any]:
    report: dict[str, Any] = {
        "inputs": inputs,
        "results": [_result_entry(r) for r in results],
        "version": __version__,
        "seed": None,  # no randomized component
    }
    if rows is not None:
        report["rows"] = [_row_entry(r) for r in rows]
    if notes:
        report["notes"] = notes
    return report


def _emit_text(report: dict[str, Any]) -> None:
    for res in report["results"]:
        ins = res.get("inputs", report["inputs"])
        point = f"a={_fmt(ins['a'])} b={_fmt(ins['b'])} nu={_fmt(ins['nu'])}"
        flags = f" [{', '.join(res['flags'])}]" if res["flags"] else ""
        print(f"{ins['kind']}{' alt' if ins.get('alternating') else ''} "
              f"{point}: {_fmt(res['value'])} "
              f"(est_error {_fmt(res['est_error'])}, terms {res['terms']}, "
              f"method {res['method']}){flags}")
    for row in report.get("rows", []):
        print(f"{row['method']:>10s} level {row['level']:>5d}: "
              f"{_fmt(row['value'])} abs_error {_fmt(row['abs_error'])} "
              f"seconds {row['seconds']:.6f}")
    for note in report.get("notes", []):
        print(f"note: {note}")


def _emit_csv_rows(rows: list[dict[str, Any]]) -> None:
    print("method,level,value,abs_error,seconds")
    for row in rows:
        print(f"{row['method']},{row['level']},{_fmt(row['value'])},"
              f"{_fmt(row['abs_error'])},{_fmt(row['seconds'])}")


def _emit_csv_results(report: dict[str, Any]) -> None:
    print("kind,alternating,a,b,nu,method,value,est_error,terms,flags")
    for res in report["results"]:
        ins = res.get("inputs", report["inputs"])
        flags = ";".join(res["flags"])
        print(f"{ins['kind']},{int(bool(ins.get('alternating')))},"
              f"{_fmt(ins['a'])},{_fmt(ins['b'])},{_fmt(ins['nu'])},"
              f"{res['method']},{_fmt(res['value'])},{_fmt(res['est_error'])},"
              f"{res['terms']},{flags}")


def _emit(report: dict[str, Any], fmt: str, table_mode: bool = False) -> None:
    if fmt == "json":
        print(json.dumps(report, indent=2))
    elif fmt == "csv":
        if table_mode:
            _emit_csv_rows(report.get("rows", []))
        else:
            _emit_csv_results(report)
    else:
        _emit_text(report)


def _add_common(sub: argparse.ArgumentParser, grid: bool) -> None:
    sub.add_argument("--kind", required=True, choices=("J", "K"),
                     help="which Bessel kernel the sum carries")
    sub.add_argument("--alternating", action="store_true",
                     help="evaluate the alternating variant")
    hint = " (comma-separated list for a grid)" if grid else ""
    sub.add_argument("--a", required=True, help=f"damping rate{hint}")
    sub.add_argument("--b", required=True, help=f"frequency{hint}")
    sub.add_argument("--nu", required=True, type=float, help="Bessel order")
    sub.add_argument("--method", default="auto", choices=_METHODS)
    sub.add_argument("--tol", type=float, default=1e-10,
                     help="target truncation error (default 1e-10)")
    sub.add_argument("--max-terms", type=int, default=None,
                     help="cap on series length for the direct method")
    sub.add_argument("--format", default="text",
                     choices=("text", "json", "csv"))


def build_parser() -> _Parser:
    parser = _Parser(prog="besselsums",
                     description="Evaluate exponentially damped Bessel-function"
                                 " sums by region-adaptive expansions.")
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p_eval = subs.add_parser("eval", help="evaluate one sum")
    _add_common(p_eval, grid=False)

    p_sweep = subs.add_parser("sweep", help="evaluate a parameter grid")
    _add_common(p_sweep, grid=True)

    p_table = subs.add_parser("table", help="convergence study")
    _add_common(p_table, grid=False)
    p_table.add_argument("--methods", default="direct,asymptotic",
                         help="comma-separated methods to tabulate")
    p_table.add_argument("--reference", default="auto", choices=_METHODS,
                         help="method supplying the reference value")
    p_table.add_argument("--levels", default="1,2,4,8,16,32",
                         help="comma-separated increasing truncation levels")

    p_verify = subs.add_parser("verify", help="run the verification suite")
    p_verify.add_argument("--suite", default="quick", choices=("quick", "full"))
    p_verify.add_argument("--format", default="text", choices=("text", "json"))
    return parser


def _cmd_eval(args: argparse.Namespace) -> int:
    a = _float_list(args.a, "--a")
    b = _float_list(args.b, "--b")
    if len(a) != 1 or len(b) != 1:
        raise BesselSumError("eval takes single --a and --b values;"
                             " use sweep for grids")
    inputs = {"command": "eval", "kind": args.kind,
              "alternating": args.alternating, "a": a[0], "b": b[0],
              "nu": args.nu, "method": args.method, "tol": args.tol}
    res = evaluate(args.kind, a[0], b[0], args.nu, args.method, args.tol,
                   args.alternating, args.max_terms)
    _emit(_report(inputs, [res]), args.format)
    return EXIT_OK


def _cmd_sweep(args: argparse.Namespace) -> int:
    a_vals = _float_list(args.a, "--a")
    b_vals = _float_list(args.b, "--b")
    inputs = {"command": "sweep", "kind": args.kind,
              "alternating": args.alternating, "a": a_vals, "b": b_vals,
              "nu": args.nu, "method": args.method, "tol": args.tol}
    results = []
    entries = []
    for av in a_vals:  # deterministic grid order: a-major, then b
        for bv in b_vals:
            res = evaluate(args.kind, av, bv, args.nu, args.method,
                           args.tol, args.alternating, args.max_terms)
            results.append(res)
            entry = _result_entry(res)
            entry["inputs"] = {"kind": args.kind, "a": av, "b": bv,
                               "nu": args.nu,
                               "alternating": args.alternating}
            entries.append(entry)
    report = _report(inputs, results)
    report["results"] = entries
    _emit(report, args.format)
    return EXIT_OK


def _cmd_table(args: argparse.Namespace) -> int:
    a = _float_list(args.a, "--a")
    b = _float_list(args.b, "--b")
    if len(a) != 1 or len(b) != 1:
        raise BesselSumError("table takes single --a and --b values")
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in _METHODS or m == "auto":
            raise BesselSumError(f"--methods entries must be one of"
                                 f" {_METHODS[1:]}, got {m!r}")
    try:
        levels = [int(tok) for tok in args.levels.split(",") if tok]
    except ValueError:
        raise BesselSumError(f"--levels expects integers, got {args.levels!r}")
    inputs = {"command": "table", "kind": args.kind, "a": a[0], "b": b[0],
              "nu": args.nu, "methods": methods, "reference": args.reference,
              "levels": levels, "tol": args.tol}
    rows, notes = convergence_table(args.kind, a[0], b[0], args.nu,
                                    methods, args.reference, levels, args.tol)
    report = _report(inputs, [], rows, notes)
    _emit(report, args.format, table_mode=True)
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    checks = run_suite(args.suite)
    passed = sum(1 for c in checks if c.passed)
    if args.format == "json":
        print(json.dumps({
            "suite": args.suite,
            "passed": passed,
            "total": len(checks),
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail}
                       for c in checks],
            "version": __version__,
            "seed": None,
        }, indent=2))
    else:
        for c in checks:
            print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}")
        print(f"{passed}/{len(checks)} checks passed (suite: {args.suite})")
    return EXIT_OK if passed == len(checks) else EXIT_VERIFY


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {"eval": _cmd_eval, "sweep": _cmd_sweep,
                "table": _cmd_table, "verify": _cmd_verify}
    try:
        return handlers[args.command](args)
    except BesselSumError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
