"""Command-line front end.

Exit codes: 0 success, 2 no solution within the caps, 64 usage error,
65 bad input data, 73 output cannot be written.
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import List, Optional

import numpy as np

from . import bench
from .constraints import hyperplane
from .core import DomainError, StopRule, solve
from .formulations import InfeasibleOrderError, build, verify_magic, verify_sudoku
from .gridio import GridFormatError, format_grid, load_grid

EXIT_OK = 0
EXIT_UNSOLVED = 2
EXIT_USAGE = 64
EXIT_DATAERR = 65
EXIT_CANTCREAT = 73


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_float(s):
    v = float(s)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _int_list(s):
    try:
        return [int(t) for t in s.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {s!r}")


def _name_list(s):
    return [t for t in s.split(",") if t]


def _add_caps(p, time_cap):
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-cap", type=_positive_float, default=time_cap,
                   help="wall-clock limit in seconds (default %(default)s)")
    p.add_argument("--iter-cap", type=int, default=None)
    p.add_argument("--tolerance", type=_positive_float, default=0.05)


def _add_output(p):
    p.add_argument("--output", default=None, help="write here instead of stdout")
    p.add_argument("--format", choices=["text", "csv", "structured"], default="text")


def make_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="drmagic",
                     description="Douglas-Rachford feasibility solver for magic squares and Sudoku")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("find", help="find a magic square of a given order")
    p.add_argument("--order", "-n", type=int, required=True)
    p.add_argument("--formulation", choices=["int", "bin"], default="int")
    _add_caps(p, 1800.0)
    _add_output(p)

    p = sub.add_parser("complete", help="complete a partially filled magic square")
    p.add_argument("--input", required=True)
    p.add_argument("--formulation", choices=["int", "bin"], default="int")
    _add_caps(p, 1800.0)
    _add_output(p)

    p = sub.add_parser("sudoku", help="solve a Sudoku puzzle")
    p.add_argument("--input", required=True)
    p.add_argument("--formulation", choices=["int", "bin"], default="bin")
    _add_caps(p, 300.0)
    _add_output(p)

    p = sub.add_parser("bench", help="run the multi-start experiment and write CSV files")
    p.add_argument("--orders", type=_int_list, default=[3, 4, 5])
    p.add_argument("--formulations", type=_name_list, default=["int", "bin"])
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--workers", type=int, default=None)
    _add_caps(p, 1800.0)
    p.add_argument("--output", default=".", help="directory for the CSV files")

    p = sub.add_parser("demo-convex", help="print Douglas-Rachford trajectories for two lines")
    p.add_argument("--steps", type=int, default=12)
    return parser


def _emit(text: str, output: Optional[str]) -> int:
    if output is None:
        sys.stdout.write(text)
        return EXIT_OK
    try:
        with open(output, "w") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"drmagic: cannot write {output}: {exc.strerror}", file=sys.stderr)
        return EXIT_CANTCREAT
    return EXIT_OK


def _run(form, args, kind) -> int:
    x0 = bench.random_start(form.shape, args.seed)
    rule = StopRule(args.tolerance, args.time_cap, args.iter_cap)
    result, grid = form.solve(x0, rule)
    if grid is None:
        print(f"drmagic: no solution ({result.status.value}) after "
              f"{result.iterations} iterations, {result.wall_time:.2f} s", file=sys.stderr)
        return EXIT_UNSOLVED
    return _emit(format_grid(grid, args.format, kind), args.output)


def cmd_find(args) -> int:
    if args.order < 1:
        print("drmagic: order must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    try:
        form = build(args.formulation, args.order)
    except InfeasibleOrderError as exc:
        print(f"drmagic: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return _run(form, args, "magic")


def _load(path, expected_kind):
    kind, grid = load_grid(path)
    if kind not in (None, expected_kind):
        raise GridFormatError(f"expected a {expected_kind} grid, got {kind!r}")
    return grid


def cmd_complete(args) -> int:
    try:
        M = _load(args.input, "magic")
        form = build(args.formulation, M.shape[0], prefill=M)
    except InfeasibleOrderError as exc:
        print(f"drmagic: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GridFormatError, DomainError) as exc:
        print(f"drmagic: {exc}", file=sys.stderr)
        return EXIT_DATAERR
    if np.all(M != 0):
        if not verify_magic(M):
            print("drmagic: the filled grid is not a magic square", file=sys.stderr)
            return EXIT_DATAERR
        return _emit(format_grid(M, args.format, "magic"), args.output)
    return _run(form, args, "magic")


def cmd_sudoku(args) -> int:
    try:
        S = _load(args.input, "sudoku")
        form = build("sudoku-" + args.formulation, 9, prefill=S)
    except (GridFormatError, DomainError) as exc:
        print(f"drmagic: {exc}", file=sys.stderr)
        return EXIT_DATAERR
    if np.all(S != 0):
        if not verify_sudoku(S):
            print("drmagic: the filled grid is not a valid Sudoku", file=sys.stderr)
            return EXIT_DATAERR
        return _emit(format_grid(S, args.format, "sudoku"), args.output)
    return _run(form, args, "sudoku")


def cmd_bench(args) -> int:
    if args.trials < 1:
        print("drmagic: --trials must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    out = args.output
    paths = {k: os.path.join(out, f"{k}.csv") for k in ("trials", "summary", "cumfreq")}
    try:
        os.makedirs(out, exist_ok=True)
        for p in paths.values():
            open(p, "a").close()
    except OSError as exc:
        print(f"drmagic: cannot write to {out}: {exc.strerror}", file=sys.stderr)
        return EXIT_CANTCREAT

    plan = bench.ExperimentPlan(args.orders, args.formulations, args.trials,
                                args.time_cap, args.seed, args.iter_cap, args.tolerance)
    records, errors = bench.run_plan(plan, args.workers)
    for (name, n), msg in errors.items():
        print(f"drmagic: skipped {name} n={n}: {msg}", file=sys.stderr)
    try:
        bench.write_trials(records, paths["trials"])
        if records:
            bench.write_summary(records, paths["summary"])
            bench.write_cumulative(records, paths["cumfreq"])
    except OSError as exc:
        print(f"drmagic: cannot write results: {exc.strerror}", file=sys.stderr)
        return EXIT_CANTCREAT
    if records:
        for s in bench.summarize(records):
            timing = "-" if s.mean_time_s is None else f"{s.mean_time_s:.2f} ({s.max_time_s:.2f})"
            print(f"{s.formulation:10s} n={s.n:<3d} solved {s.solved}/{s.trials}  {timing}")
    return EXIT_OK


def _trajectory(sets, x0, steps):
    rows = []

    def record(k, x):
        rows.append((k, x.mean(axis=0), float(np.linalg.norm(x))))

    solve(sets, x0, StopRule(1e-300, 60.0, steps), decoder_round=lambda z: z,
          callback=record)
    return rows


def cmd_demo_convex(args) -> int:
    crossing = [hyperplane([0.0, 1.0], 0.0, "x2 = 0"), hyperplane([1.0, 1.0], 2.0, "x1 + x2 = 2")]
    parallel = [hyperplane([0.0, 1.0], 0.0, "x2 = 0"), hyperplane([0.0, 1.0], 1.0, "x2 = 1")]
    print("crossing lines x2 = 0 and x1 + x2 = 2 (intersection (2, 0)), start (0, 3)")
    for k, m, nrm in _trajectory(crossing, [0.0, 3.0], args.steps):
        print(f"  k={k:3d}  shadow=({m[0]: .8f}, {m[1]: .8f})  |x|={nrm:.6f}")
    print("parallel lines x2 = 0 and x2 = 1 (empty intersection), start (0, 3)")
    for k, m, nrm in _trajectory(parallel, [0.0, 3.0], args.steps):
        print(f"  k={k:3d}  shadow=({m[0]: .8f}, {m[1]: .8f})  |x|={nrm:.6f}")
    return EXIT_OK


COMMANDS = {
    "find": cmd_find,
    "complete": cmd_complete,
    "sudoku": cmd_sudoku,
    "bench": cmd_bench,
    "demo-convex": cmd_demo_convex,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = make_parser().parse_args(argv)
    return COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())
