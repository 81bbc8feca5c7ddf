"""Command-line front end.

Exit codes: 0 solved, 1 stalled, 2 contradiction, 64 usage or input error.
"""

from __future__ import annotations

import argparse
import sys
from typing import Iterator, Sequence

from .campaign import completeness_audit, run_campaign, schedule_robustness
from .engine import CONTRADICTORY, SOLVED, STALLED, bsrt, format_trace, saturate
from .generator import GENERATOR_ID, generate_puzzle
from .oracle import count_solutions, is_minimal, solve_unique
from .sudoku import PuzzleFormatError, format_grid, initial_state, parse_puzzle

EXIT_USAGE = 64
EXIT_CODES = {SOLVED: 0, STALLED: 1, CONTRADICTORY: 2}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _u64(text: str) -> int:
    try:
        v = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if not 0 <= v < 1 << 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 unsigned bits")
    return v


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _puzzle_lines(arg: str | None, stdin) -> Iterator[str]:
    if arg is not None and arg != "-":
        yield arg
        return
    for line in stdin:
        if line.strip():
            yield line


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="resrules", description="Constructive Sudoku resolution with resolution rules.")
    sub = p.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="saturate puzzles with the basic resolution theory")
    s.add_argument("--trace", action="store_true", help="print the resolution path")
    s.add_argument("puzzle", nargs="?", help="81-character line, or - for stdin")

    t = sub.add_parser("trace", help="same as solve --trace")
    t.add_argument("puzzle", nargs="?")

    g = sub.add_parser("gen", help="generate minimal puzzles")
    g.add_argument("--n", type=_positive, required=True)
    g.add_argument("--seed", type=_u64, required=True)

    c = sub.add_parser("campaign", help="solve-rate campaign over generated minimal puzzles")
    c.add_argument("--n", type=_positive, required=True)
    c.add_argument("--seed", type=_u64, required=True)
    c.add_argument("--jobs", type=_positive, default=1)
    c.add_argument("--schedules", type=_positive, default=2, help="scan orders compared per puzzle")
    c.add_argument("--json", metavar="PATH", help="also write a JSON report")

    a = sub.add_parser("audit", help="completeness audit of puzzles in a file")
    a.add_argument("--file", required=True)
    a.add_argument("--seed", type=_u64, required=True)
    a.add_argument("--schedules", type=_positive, default=3)

    o = sub.add_parser("oracle", help="count solutions by exhaustive search")
    o.add_argument("puzzle", nargs="?")
    return p


def cmd_solve(puzzle: str | None, trace: bool, stdin, out) -> int:
    theory = bsrt()
    status = 0
    for line in _puzzle_lines(puzzle, stdin):
        p = parse_puzzle(line)
        res = saturate(theory, initial_state(p))
        out.write(f"outcome: {res.kind}\n")
        out.write(f"grid: {format_grid(res.final.values)}\n")
        out.write(f"steps: {len(res.path)}\n")
        if res.kind == STALLED:
            out.write(f"candidates: {res.final.candidates.bit_count()}\n")
        if trace:
            out.write(format_trace(res.path))
        status = max(status, EXIT_CODES[res.kind])
    return status


def cmd_gen(n: int, seed: int, out) -> int:
    for i in range(n):
        out.write(generate_puzzle(seed, i)[0].line() + "\n")
    return 0


def cmd_campaign(n: int, seed: int, jobs: int, schedules: int, json_path: str | None, out) -> int:
    report = run_campaign(n, seed, jobs=jobs, schedules=schedules)
    out.write(report.to_text())
    if json_path:
        with open(json_path, "w") as fh:
            fh.write(report.to_json())
    return 0


def cmd_audit(path: str, seed: int, schedules: int, out) -> int:
    with open(path) as fh:
        puzzles = [parse_puzzle(line) for line in fh if line.strip()]
    audit = completeness_audit(puzzles)
    sched = schedule_robustness(puzzles, k=schedules, seed=seed)
    out.write("# resrules-audit v1\n")
    out.write(f"generator_id: {GENERATOR_ID}\n")
    out.write(f"master_seed: {seed}\n")
    for k, v in audit.summary().items():
        out.write(f"{k}: {v}\n")
    out.write(f"schedule_variants: {sched.k}\n")
    out.write(f"schedule_variants_agreeing: {sched.agreeing}\n")
    for a in audit.puzzles:
        out.write(
            f"puzzle {a.line} unique={a.unique} outcome={a.outcome} "
            f"recall={a.value_recall} elim={a.elimination_completeness} violations={a.violations}\n"
        )
    return 0


def cmd_oracle(puzzle: str | None, stdin, out) -> int:
    for line in _puzzle_lines(puzzle, stdin):
        p = parse_puzzle(line)
        k = count_solutions(p, 2)
        out.write(f"solutions: {'2+' if k >= 2 else k}\n")
        if k == 1:
            out.write(f"solution: {format_grid(solve_unique(p))}\n")
            out.write(f"minimal: {str(is_minimal(p)).lower()}\n")
    return 0


def main(argv: Sequence[str] | None = None, stdin=None, out=None) -> int:
    stdin = stdin if stdin is not None else sys.stdin
    out = out if out is not None else sys.stdout
    args = build_parser().parse_args(argv)
    try:
        if args.verb in ("solve", "trace"):
            return cmd_solve(args.puzzle, args.verb == "trace" or args.trace, stdin, out)
        if args.verb == "gen":
            return cmd_gen(args.n, args.seed, out)
        if args.verb == "campaign":
            return cmd_campaign(args.n, args.seed, args.jobs, args.schedules, args.json, out)
        if args.verb == "audit":
            return cmd_audit(args.file, args.seed, args.schedules, out)
        return cmd_oracle(args.puzzle, stdin, out)
    except (PuzzleFormatError, OSError) as exc:
        sys.stderr.write(f"resrules: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
