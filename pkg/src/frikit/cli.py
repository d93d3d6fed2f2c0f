"""Command-line front end.

Exit codes: 0 success, 1 validation failure, 2 usage error, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from .analysis import ComparisonMatrix, MethodRow, compare_methods, evaluate
from .conclusion import ALL_METHODS, Conclusion, InterpolationConfig, MethodId
from .errors import FriError
from .estimator import uniform_levels
from .fis import format_num, parse_fis, parse_observation, write_csv
from .rulebase import validate_rulebase

EXIT_OK, EXIT_INVALID, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _method(text: str) -> str:
    if text.strip().lower() == "all":
        return "all"
    try:
        return MethodId.parse(text).value
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {n}")
    return n


def _levels(text: str) -> int:
    n = _positive(text)
    if n < 2:
        raise argparse.ArgumentTypeError("--levels needs at least 2 levels")
    return n


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frikit", description="Fuzzy rule interpolation toolkit.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a rule base file")
    p.add_argument("--fis", required=True)
    p.add_argument("--out", choices=("text", "json"), default="text")

    def common(p, method: bool):
        p.add_argument("--fis", required=True)
        p.add_argument("--obs", required=True)
        if method:
            p.add_argument("--method", required=True, type=_method)
        p.add_argument("--levels", type=_levels, default=None, help="number of uniform alpha levels")
        p.add_argument("--paper-literal-kh", action="store_true", help="use the printed KH weights")

    p = sub.add_parser("infer", help="interpolate a conclusion")
    common(p, True)
    p.add_argument("--out", choices=("text", "csv", "json"), default="text")

    p = sub.add_parser("compare", help="run every method and print the verdict matrix")
    common(p, False)
    p.add_argument("--out", choices=("text", "csv", "json"), default="text")

    p = sub.add_parser("bench", help="run the seven-example comparison and write its artifacts")
    p.add_argument("--suite", required=True, choices=("table1",))
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--budget", type=_positive, default=100_000, help="max samples per witness search")

    p = sub.add_parser("plot", help="write an SVG of the rule base, observation and conclusion")
    common(p, True)
    p.add_argument("--svg", required=True)
    return parser


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _config(args) -> InterpolationConfig:
    return InterpolationConfig(alpha_levels=uniform_levels(args.levels),
                               paper_literal_kh=args.paper_literal_kh)


def _load(args):
    doc = parse_fis(_read(args.fis))
    obs = parse_observation(_read(args.obs))
    return doc.rule_base(), obs


def _conclusion_lines(c: Conclusion) -> list[str]:
    lines = [f"method: {c.method.value}"]
    if c.rules is not None:
        lines.append(f"rules: {c.rules[0] + 1}, {c.rules[1] + 1}")
    if c.shape is not None:
        pts = " ".join(f"({format_num(p.x)}, {format_num(p.mu)})" for p in c.shape.points)
        lines.append(f"breakpoints: {pts}")
    else:
        lines.append("alpha family (alpha: inf sup):")
        lines += [f"  {format_num(a.alpha)}: {format_num(a.inf)} {format_num(a.sup)}" for a in c.alpha_family]
    lines += [f"note: {n}" for n in c.notes]
    return lines


def _cuts_csv(c: Conclusion) -> str:
    inf, sup = c.cuts()
    rows = [f"{format_num(a)},{format_num(i)},{format_num(s)}" for a, i, s in zip(c.levels, inf, sup)]
    return "alpha,inf,sup\n" + "".join(r + "\n" for r in rows)


def _row_csv(rows: Sequence[MethodRow]) -> str:
    out = []
    for r in rows:
        g = r.geometry or (None,) * 4
        out.append({"method": r.method.value, "status": r.status, "abnormal": r.abnormal,
                    "linear": r.linear, "lf": g[0], "lc": g[1], "rc": g[2], "rf": g[3]})
    return write_csv(out)


def _cmd_check(args, out) -> int:
    doc = parse_fis(_read(args.fis))
    rep = validate_rulebase(doc.rule_base())
    if args.out == "json":
        out.write(json.dumps({"ok": rep.ok, "problems": rep.lines()}, sort_keys=True) + "\n")
    else:
        rb = doc.rule_base()
        out.write(f"{doc.name}: {rb.n_inputs} inputs, {len(rb.rules)} rules\n")
        for line in rep.lines():
            out.write(line + "\n")
        out.write("ok\n" if rep.ok else "invalid\n")
    return EXIT_OK if rep.ok else EXIT_INVALID


def _cmd_infer(args, out) -> int:
    if args.method == "all":
        return _cmd_compare(args, out)
    rb, obs = _load(args)
    row = evaluate(args.method, rb, obs, _config(args))
    if row.error is not None:
        raise _RowError(row.error)
    if args.out == "json":
        out.write(json.dumps(row.as_dict(), sort_keys=True) + "\n")
    elif args.out == "csv":
        out.write(_row_csv([row]) + "\n" + _cuts_csv(row.conclusion))
    else:
        lines = _conclusion_lines(row.conclusion)
        lines.append(f"abnormal: {str(row.abnormal).lower()}")
        if row.abnormality.abnormal:
            a = row.abnormality
            lines.append(f"violation: {a.violation_kind} at alpha={format_num(a.first_violation_alpha)}")
        lines.append(f"piecewise linear: {str(row.linear).lower()} "
                     f"(max deviation {row.linearity.max_deviation:.3g})")
        out.write("\n".join(lines) + "\n")
    return EXIT_OK


def format_comparison(m: ComparisonMatrix) -> str:
    head = f"{'method':<11}{'status':<28}{'abnormal':<10}{'linear':<8}geometry"
    lines = [head]
    for r in m.rows:
        geom = "" if r.geometry is None else " ".join(f"{v:.6g}" for v in r.geometry)
        ab = "" if r.abnormal is None else str(r.abnormal).lower()
        lin = "" if r.linear is None else str(r.linear).lower()
        lines.append(f"{r.method.value:<11}{r.status:<28}{ab:<10}{lin:<8}{geom}".rstrip())
    return "\n".join(lines) + "\n"


def _cmd_compare(args, out) -> int:
    rb, obs = _load(args)
    m = compare_methods(rb, obs, cfg=_config(args))
    if args.out == "json":
        out.write(json.dumps(m.as_dict(), sort_keys=True) + "\n")
    elif args.out == "csv":
        out.write(_row_csv(m.rows))
    else:
        out.write(format_comparison(m))
    return EXIT_OK


def _cmd_bench(args, out) -> int:
    from .benchmark.search import SearchBudget
    from .benchmark.suite import format_matrix, run_suite, write_artifacts

    seed = args.seed
    env = os.environ.get("FRI_SEED")
    if env:
        try:
            seed = int(env)
        except ValueError:
            raise UsageError(f"FRI_SEED must be an integer, got {env!r}") from None
    rep = run_suite(budget=SearchBudget(args.budget, seed), seed=seed)
    write_artifacts(rep, args.out)
    out.write(format_matrix(rep) + "\n")
    for line in rep.not_reproduced:
        out.write(line + "\n")
    for line in rep.mismatches:
        out.write("MISMATCH " + line + "\n")
    out.write(f"artifacts written to {args.out}\n")
    return EXIT_INVALID if rep.mismatches else EXIT_OK


def _cmd_plot(args, out) -> int:
    from .benchmark.svg import render_svg
    from .methods import interpolate

    rb, obs = _load(args)
    cfg = _config(args)
    methods = ALL_METHODS if args.method == "all" else (MethodId.parse(args.method),)
    concl = {}
    for m in methods:
        try:
            concl[m.value] = interpolate(m, rb, obs, cfg)
        except FriError:
            if len(methods) == 1:
                raise
    render_svg((rb, obs), concl, args.svg, title=", ".join(concl))
    out.write(f"wrote {args.svg}\n")
    return EXIT_OK


class _RowError(Exception):
    def __init__(self, payload: dict):
        super().__init__(payload.get("message", ""))
        self.payload = payload


COMMANDS = {"check": _cmd_check, "infer": _cmd_infer, "compare": _cmd_compare,
            "bench": _cmd_bench, "plot": _cmd_plot}


def _report(args, err, payload: dict) -> None:
    if args.command != "bench" and getattr(args, "out", None) == "json":
        err.write(json.dumps({"error": payload}, sort_keys=True) + "\n")
    else:
        err.write(f"error: {payload['code']}: {payload['message']}\n")


def main(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except UsageError as e:
        _report(args, err, {"code": "UsageError", "message": str(e)})
        return EXIT_USAGE
    except _RowError as e:
        _report(args, err, e.payload)
        return EXIT_INVALID
    except FriError as e:
        _report(args, err, e.to_dict())
        return EXIT_INVALID
    except OSError as e:
        _report(args, err, {"code": "IOError", "message": str(e)})
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
