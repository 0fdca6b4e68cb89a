"""Command line: ``kohncoerce {analyze,grid,verify}``.

Exit codes: 0 success, 2 when the spectrum decision is Inconclusive, 1 on
errors or on any failed verification check.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from .errors import KohnCoerceError
from .exponents import classify
from .report import AnalysisReport, analyze, format_gamma, parse_gamma
from .support import classify_region
from .verify import SUITES, run_suite, summarize
from .weight import lambda_approx_xy, lambda_min_xy

MAX_RES = 4096
GRID_KINDS = ("lambda", "lambda_approx", "region", "rho")


def _read_gamma(path):
    text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    return parse_gamma(text)


def _write(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def cmd_analyze(gamma_file, out_file=None, config=None) -> AnalysisReport:
    gamma = _read_gamma(gamma_file)
    report = analyze(gamma, config=config)
    _write(out_file, report.to_json())
    return report


def _parse_bounds(text):
    try:
        vals = [float(v) for v in text.split(",")]
    except ValueError:
        raise ValueError(f"bounds must be x0,x1,y0,y1; got {text!r}") from None
    if len(vals) != 4 or not all(math.isfinite(v) for v in vals):
        raise ValueError(f"bounds must be four finite numbers x0,x1,y0,y1; got {text!r}")
    x0, x1, y0, y1 = vals
    if min(vals) < 0 or x1 < x0 or y1 < y0:
        raise ValueError("bounds are moduli: need 0 <= x0 <= x1 and 0 <= y0 <= y1")
    return x0, x1, y0, y1


def grid_values(gamma, what, bounds, res, tol=1e-10):
    """``(xs, ys, values)`` with ``values[j, i]`` at ``(xs[i], ys[j])`` (y-major)."""
    if what not in GRID_KINDS:
        raise ValueError(f"unsupported grid {what!r}; choose from {', '.join(GRID_KINDS)}")
    if not 1 <= res <= MAX_RES:
        raise ValueError(f"resolution must be between 1 and {MAX_RES}")
    x0, x1, y0, y1 = bounds
    xs, ys = np.linspace(x0, x1, res), np.linspace(y0, y1, res)
    X, Y = np.meshgrid(xs, ys)
    if what == "lambda":
        vals = lambda_min_xy(gamma, X * X, Y * Y)
    elif what == "lambda_approx":
        vals = lambda_approx_xy(gamma, X * X, Y * Y)
    elif what == "rho":
        from .admissibility import rho_grid
        vals = rho_grid(gamma, X, Y, tol)
    else:
        profile = classify(gamma)
        vals = np.array([[classify_region(profile, (x, y), scheme="figure").value for x in xs]
                         for y in ys], dtype=object)
    return xs, ys, vals


def _fmt(v):
    if isinstance(v, str):
        return v
    v = float(v)
    return "nan" if math.isnan(v) else repr(v)


def cmd_grid(gamma_file, what, bounds, resolution, out_csv=None, tol=1e-10):
    gamma = _read_gamma(gamma_file)
    if isinstance(bounds, str):
        bounds = _parse_bounds(bounds)
    xs, ys, vals = grid_values(gamma, what, bounds, resolution, tol)
    lines = [
        f"# meta: gamma={format_gamma(gamma)}",
        f"# meta: what={what}",
        "# meta: bounds=" + ",".join(repr(float(b)) for b in bounds),
        f"# meta: resolution={resolution}",
        "x,y,value",
    ]
    for j, y in enumerate(ys):
        for i, x in enumerate(xs):
            lines.append(f"{_fmt(x)},{_fmt(y)},{_fmt(vals[j, i])}")
    _write(out_csv, "\n".join(lines) + "\n")
    return out_csv


def cmd_verify(gamma_file, suite, out_file=None, tol=None, seed=0, threads=1) -> dict:
    gamma = None if gamma_file is None else _read_gamma(gamma_file)
    results = run_suite(suite, gamma, tol=tol, seed=seed, threads=threads)
    summary = summarize(results)
    summary["config"] = {"suite": suite, "tol": tol, "seed": seed, "threads": threads}
    if gamma is not None:
        summary["gamma"] = [list(p) for p in gamma]
    _write(out_file, json.dumps(summary, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    return summary


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors; 2 is reserved for Inconclusive
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser():
    p = _Parser(prog="kohncoerce", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="classify Γ and write the JSON report")
    a.add_argument("--gamma", required=True, help="exponent set file ('-' for stdin)")
    a.add_argument("--out", help="report path (default stdout)")

    g = sub.add_parser("grid", help="sample a quantity over (|z|, |w|) and write CSV")
    g.add_argument("what", choices=GRID_KINDS)
    g.add_argument("--gamma", required=True)
    g.add_argument("--out")
    g.add_argument("--bounds", default="0,3,0,3", help="x0,x1,y0,y1 in (|z|, |w|)")
    g.add_argument("--res", type=int, default=64)
    g.add_argument("--tol", type=float, default=1e-10, help="relative tolerance for rho")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("--suite", required=True, choices=SUITES + ("all",))
    v.add_argument("--gamma", help="exponent set file (not needed for 'uncertainty')")
    v.add_argument("--out")
    v.add_argument("--tol", type=float)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--threads", type=int, default=1)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "analyze":
            report = cmd_analyze(args.gamma, args.out, config={"command": "analyze"})
            return report.exit_code
        if args.command == "grid":
            cmd_grid(args.gamma, args.what, args.bounds, args.res, args.out, args.tol)
            return 0
        summary = cmd_verify(args.gamma, args.suite, args.out, args.tol, args.seed, args.threads)
        return 0 if summary["passed"] else 1
    except (KohnCoerceError, ValueError, OSError) as exc:
        print(f"kohncoerce: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
