"""Command-line front end.

Subcommands: ``choose``, ``discretize``, ``bounds``, ``curve``, ``verify``.
Exit status is 0 on success, 1 when ``verify`` finds a violation and 2 on
usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import problemfile
from .approx import (
    credal_size_bound,
    default_eps_grid,
    discretize,
    gamma_curve,
    partition_size_bound,
)
from .choice import extreme_points, max_eps, opt_eps
from .core import credal_close, loss_close, r_d
from .problemfile import ProblemFileError, format_rational
from .verify import run_verify, verify_problems

PARTITION_TABLE_EPS = (0.2, 0.1, 0.05, 0.02, 0.01)
PARTITION_TABLE_DCOUNT = (2, 4, 8, 16, 32)
CREDAL_TABLE_CELLS = (4, 8, 12, 16, 20, 24, 28, 32)
CREDAL_TABLE_DELTA = (0.2, 0.1, 0.05)
CREDAL_TABLE_LOG_CELLS = tuple(5**k for k in range(1, 8))

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _float_list(text: str) -> list[float]:
    try:
        return [float(Fraction(t)) for t in text.split(",") if t.strip()]
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of integers: {text!r}")


def _fmt_real(x: float) -> str:
    return f"{x:g}"


def _emit_report(args, report: dict) -> None:
    if getattr(args, "report", None):
        Path(args.report).write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")


def _load(path: str):
    text = Path(path).read_text()
    return problemfile.loads(text), problemfile.digest(text)


# ---------------------------------------------------------------------------


def cmd_choose(args) -> int:
    problem, dig = _load(args.file)
    fn = opt_eps if args.kind == "opt" else max_eps
    result = fn(problem, args.gamma)
    rd = r_d(problem)
    print(" ".join(result.chosen))
    print(f"R_D {format_rational(rd)}")
    _emit_report(args, {
        "command": ["choose", args.kind, format_rational(args.gamma)],
        "input_digest": dig,
        "kind": result.kind,
        "level": format_rational(result.level),
        "chosen": list(result.chosen),
        "R_D": format_rational(rd),
    })
    return EXIT_OK


def cmd_discretize(args, parser) -> int:
    if not 0 < args.eps < Fraction(1, 2):
        parser.error("--eps must lie in (0, 1/2)")
    if args.delta <= 0:
        parser.error("--delta must be positive")
    problem, dig = _load(args.file)
    source = extreme_points(problem.credal) if args.extreme else problem.credal
    rep = discretize(problem, args.eps, args.delta, credal=source)
    approx = rep.approx_problem
    problemfile.dump(approx, args.out)
    sidecar = {
        "command": ["discretize", format_rational(args.eps), format_rational(args.delta)]
        + (["extreme"] if args.extreme else []),
        "input_digest": dig,
        "output": Path(args.out).name,
        "cells": [[problem.states[i] for i in c] for c in rep.partition.cells],
        "partition_size": len(rep.partition),
        "partition_bound": format_rational(rep.partition_bound),
        "credal_size": len(approx.credal),
        "grid_N": rep.grid_N,
        "grid_bound": rep.grid_bound,
        "credal_bound": rep.credal_bound,
        "loss_close": loss_close(problem, approx, rep.partition, rep.eps),
        "credal_close": credal_close(source, approx.credal, rep.partition, rep.delta),
    }
    report_path = Path(args.report) if args.report else Path(str(args.out) + ".report.json")
    report_path.write_text(json.dumps(sidecar, indent=2, sort_keys=True) + "\n")
    print(f"cells {sidecar['partition_size']} (bound {sidecar['partition_bound']})")
    print(f"credal {sidecar['credal_size']} (grid N={rep.grid_N}, bound {rep.grid_bound})")
    print(f"loss_close {str(sidecar['loss_close']).lower()}")
    print(f"credal_close {str(sidecar['credal_close']).lower()}")
    return EXIT_OK


def format_table(title: str, corner: str, cols, rows) -> list[str]:
    lines = [title, corner.ljust(10) + "".join(_fmt_real(c).rjust(12) for c in cols)]
    for label, values in rows:
        lines.append(str(label).ljust(10) + "".join(f"{v:.1f}".rjust(12) for v in values))
    return lines


def bounds_tables(eps, dcount, cells, delta, log_cells) -> tuple[list, list, list]:
    t1 = [(d, [partition_size_bound(e, d) for e in eps]) for d in dcount]
    t2 = [(n, [credal_size_bound(n, dl) for dl in delta]) for n in cells]
    t2log = [(n, [credal_size_bound(n, dl) for dl in delta]) for n in log_cells]
    return t1, t2, t2log


def cmd_bounds(args) -> int:
    import math

    eps = args.eps or list(PARTITION_TABLE_EPS)
    dcount = args.dcount or list(PARTITION_TABLE_DCOUNT)
    cells = args.cells or list(CREDAL_TABLE_CELLS)
    delta = args.delta or list(CREDAL_TABLE_DELTA)
    log_cells = args.log_cells if args.log_cells is not None else (
        [] if args.cells else list(CREDAL_TABLE_LOG_CELLS)
    )
    if any(x <= 0 for x in eps + delta) or any(x < 1 for x in dcount + cells + log_cells):
        raise ValueError("all bound arguments must be positive")
    t1, t2, t2log = bounds_tables(eps, dcount, cells, delta, log_cells)
    lines = format_table("log10 partition size bound", "|D| \\ eps", eps, t1)
    lines.append("")
    lines += format_table("log10 credal size bound", "|A| \\ delta", delta, t2)
    if t2log:
        lines += format_table(
            "", "log10|A|", [],
            [(f"{math.log10(n):.1f}", v) for n, v in t2log],
        )[1:]
    print("\n".join(lines))
    _emit_report(args, {
        "command": ["bounds"],
        "partition": {"eps": eps, "rows": [[d, v] for d, v in t1]},
        "credal": {"delta": delta, "rows": [[n, v] for n, v in t2 + t2log]},
    })
    return EXIT_OK


def cmd_curve(args, parser) -> int:
    if args.gamma_star <= 0:
        parser.error("--gamma-star must be positive")
    grid = args.eps or default_eps_grid(args.gamma_star, args.steps)
    bad = [e for e in grid if not 0 < e < args.gamma_star]
    if bad:
        parser.error(f"eps values {bad} must lie strictly between 0 and gamma-star")
    points = gamma_curve(args.gamma_star, args.dcount, grid, rounded=not args.literal)
    lines = ["eps,log10_bound"] + [f"{_fmt_real(e)},{v:.9f}" for e, v in points]
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    _emit_report(args, {
        "command": ["curve", args.gamma_star, args.dcount],
        "points": [[e, v] for e, v in points],
    })
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.trials < 1:
        raise ValueError("--trials must be at least 1")
    if args.problem:
        report = verify_problems(problemfile.load(p) for p in args.problem)
    else:
        report = run_verify(args.trials, args.seed, args.max_states, args.max_decisions)
    doc = report.to_dict()
    for name, t in doc["properties"].items():
        print(f"{name:<20} passed={t['passed']} skipped={t['skipped']} failed={t['failed']}")
    print("ok" if report.ok else "VIOLATION")
    if args.dump and report.counterexamples:
        out = Path(args.dump)
        out.mkdir(parents=True, exist_ok=True)
        for i, cx in enumerate(report.counterexamples):
            (out / f"counterexample_{i:03d}_{cx['property']}.json").write_text(
                json.dumps(cx["problem"], indent=2) + "\n"
            )
    elif report.counterexamples:
        print(json.dumps(report.counterexamples[0], indent=2))
    _emit_report(args, {"command": ["verify"], **doc})
    return EXIT_OK if report.ok else EXIT_VIOLATION


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="credalapprox", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("choose", help="gamma-optimal or gamma-maximal decisions")
    c.add_argument("file")
    c.add_argument("--kind", choices=("opt", "max"), default="opt")
    c.add_argument("--gamma", type=_rational, default=Fraction(0))
    c.add_argument("--report")

    d = sub.add_parser("discretize", help="coarsen states and round the credal set")
    d.add_argument("file")
    d.add_argument("--eps", type=_rational, required=True)
    d.add_argument("--delta", type=_rational, required=True)
    d.add_argument("--out", required=True)
    d.add_argument("--extreme", action="store_true",
                   help="round only the extreme points of the credal set")
    d.add_argument("--report", help="sidecar path (default: OUT.report.json)")

    b = sub.add_parser("bounds", help="size-bound tables")
    b.add_argument("--eps", type=_float_list)
    b.add_argument("--dcount", type=_int_list)
    b.add_argument("--cells", type=_int_list)
    b.add_argument("--delta", type=_float_list)
    b.add_argument("--log-cells", type=_int_list,
                   help="large partition sizes listed by log10 (default 5^1..5^7)")
    b.add_argument("--report")

    v = sub.add_parser("curve", help="credal-size bound along eps + delta = gamma*")
    v.add_argument("--gamma-star", type=float, default=0.2)
    v.add_argument("--dcount", type=int, default=2)
    v.add_argument("--steps", type=int, default=100)
    v.add_argument("--eps", type=_float_list, help="explicit eps values instead of a grid")
    v.add_argument("--literal", action="store_true",
                   help="real-valued Gamma arguments instead of rounded ones")
    v.add_argument("--out")
    v.add_argument("--report")

    r = sub.add_parser("verify", help="randomized exact property checks")
    r.add_argument("--trials", type=int, default=100)
    r.add_argument("--seed", type=int, default=0)
    r.add_argument("--max-states", type=int, default=8)
    r.add_argument("--max-decisions", type=int, default=4)
    r.add_argument("--problem", action="append", help="check this problem file instead")
    r.add_argument("--dump", help="directory for counterexample problem files")
    r.add_argument("--report")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    start = time.perf_counter()
    try:
        if args.command == "choose":
            code = cmd_choose(args)
        elif args.command == "discretize":
            code = cmd_discretize(args, parser)
        elif args.command == "bounds":
            code = cmd_bounds(args)
        elif args.command == "curve":
            code = cmd_curve(args, parser)
        else:
            code = cmd_verify(args)
    except (ProblemFileError, ValueError, OSError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(f"elapsed {time.perf_counter() - start:.3f} s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
