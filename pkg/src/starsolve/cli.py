"""star-solve: batch and one-shot star-circuit solving.

Subcommands::

    star-solve solve  <path|->  [--format csv|jsonl] [--parallel] [--tolerance REL]
    star-solve verify <path|->
    star-solve synth  --count N --seed S [--symmetric]

``-`` means standard input; results go to standard output. Records are
processed independently and in order: a bad record marks its output row
and the batch continues. Exit codes: 0 all records ok, 1 usage / I/O /
parse error, 2 at least one record failed.
"""

from __future__ import annotations

import argparse
import sys
from collections import deque
from concurrent.futures import ThreadPoolExecutor
from functools import partial
from itertools import chain
from random import Random
from typing import Callable, Iterable, Iterator, TextIO

from .circuit import (
    ALL_120,
    LineVoltages,
    PhaseToPhaseVoltages,
    solve_general_star,
    solve_symmetric_star,
    verify_solution,
)
from .config import residual_tolerance
from .errors import (
    AngleAtLeast120,
    AngleOutOfRange,
    InconsistentMeasurement,
    NotATriangle,
    PhaseDiagnostic,
    StarSolveError,
)
from .general import general_solve_by_circles, validate_angles
from .oracle import minimize_distance_sum, random_synthesis_spec, synthesize_triangle
from .records import (
    STATUS_ANGLE_GE_120,
    STATUS_INCONSISTENT,
    STATUS_INFEASIBLE,
    STATUS_OK,
    MeasurementRecord,
    ParseError,
    RowWriter,
    SolutionRecord,
    combined_row,
    detect_format,
    format_for_path,
    read_measurements,
    read_pairs,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RECORD_FAILED = 2


# =========================================================================
# Per-record solving
# =========================================================================

def solve_record(m: MeasurementRecord, tolerance: float
                 ) -> tuple[MeasurementRecord, SolutionRecord]:
    """Solve one measurement; failures become a status, never an exception."""
    try:
        u = PhaseToPhaseVoltages(m.u1, m.u2, m.u3)
        if m.has_angles:
            angles = validate_angles(m.psi1, m.psi2)
            lv = solve_general_star(u, m.psi1, m.psi2)
        else:
            angles = ALL_120
            lv = solve_symmetric_star(u)
        report = verify_solution(u, lv, angles, tolerance)
        notes = list(lv.diagnostics)
        if report.passed:
            status = STATUS_OK
        else:
            status = STATUS_INFEASIBLE
            notes.append(f"closure residual {report.max_residual:.3e} "
                         f"exceeds tolerance {tolerance:g}")
        solution = SolutionRecord(m.id, lv.u1p, lv.u2p, lv.u3p,
                                  report.max_residual, status, "; ".join(notes))
    except (PhaseDiagnostic, AngleAtLeast120) as exc:
        solution = _failure(m, STATUS_ANGLE_GE_120, str(exc))
    except (InconsistentMeasurement, NotATriangle, AngleOutOfRange) as exc:
        solution = _failure(m, STATUS_INCONSISTENT, str(exc))
    except StarSolveError as exc:
        solution = _failure(m, STATUS_INFEASIBLE, str(exc))
    return m, solution


def _failure(m: MeasurementRecord, status: str, message: str) -> SolutionRecord:
    return SolutionRecord(m.id, None, None, None, None, status, message)


def verify_record(m: MeasurementRecord, s: SolutionRecord | None,
                  tolerance: float) -> tuple[bool, str]:
    """Check one measurement/solution pair against independent machinery.

    Solved rows must pass the mesh-rule closure, agree with a fresh
    circle-intersection re-solve, and (for 120-deg rows) match the
    distance-sum minimum. Failure rows pass iff a re-solve reproduces the
    recorded failure status.
    """
    if s is None:
        return False, "row carries no solution fields"
    if not s.solved or s.u1p is None:
        _, fresh = solve_record(m, tolerance)
        if fresh.status == s.status:
            return True, f"failure status {s.status!r} confirmed by re-solve"
        return False, (f"recorded status {s.status!r} but re-solve "
                       f"produced {fresh.status!r}")

    try:
        u = PhaseToPhaseVoltages(m.u1, m.u2, m.u3)
        angles = validate_angles(m.psi1, m.psi2) if m.has_angles else ALL_120
        lv = LineVoltages(s.u1p, s.u2p, s.u3p)

        report = verify_solution(u, lv, angles, tolerance)
        if not report.passed:
            return False, (f"closure residual {report.max_residual:.3e} "
                           f"exceeds tolerance {tolerance:g}")

        circle = general_solve_by_circles(u.to_edges(), angles)
        floor = 1e-12 * (u.u1 + u.u2 + u.u3)
        for name, given, recomputed in zip(("u1p", "u2p", "u3p"),
                                           lv.as_tuple(), circle.distances()):
            if abs(given - recomputed) > max(tolerance * max(given, recomputed), floor):
                return False, (f"{name}={given:.6g} disagrees with circle-path "
                               f"value {recomputed:.6g}")

        if not m.has_angles:
            minimized = minimize_distance_sum(u.to_edges())
            total = s.u1p + s.u2p + s.u3p
            if abs(minimized.value - total) > 1e-6 * total:
                return False, (f"line-voltage sum {total:.9g} disagrees with "
                               f"minimized distance sum {minimized.value:.9g}")
    except StarSolveError as exc:
        return False, f"cross-check raised: {exc}"
    return True, f"max residual {report.max_residual:.3e}"


# =========================================================================
# Stream plumbing
# =========================================================================

def _open_input(path: str) -> tuple[TextIO, bool]:
    if path == "-":
        return sys.stdin, False
    return open(path, "r", newline=""), True


def _detect(path: str, first_line: str) -> str:
    fmt = format_for_path(path) if path != "-" else None
    return fmt or detect_format(first_line)


def _ordered_parallel_map(fn: Callable, items: Iterable, window: int = 64) -> Iterator:
    """Parallel map preserving input order with a bounded in-flight window."""
    pending: deque = deque()
    with ThreadPoolExecutor() as pool:
        for item in items:
            pending.append(pool.submit(fn, item))
            if len(pending) >= window:
                yield pending.popleft().result()
        while pending:
            yield pending.popleft().result()


# =========================================================================
# Subcommands
# =========================================================================

def cmd_solve(args: argparse.Namespace) -> int:
    try:
        tolerance = residual_tolerance(args.tolerance)
    except ValueError as exc:
        print(f"star-solve: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        stream, owned = _open_input(args.path)
    except OSError as exc:
        print(f"star-solve: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        lines = iter(stream)
        first = next(lines, None)
        if first is None:
            return EXIT_OK
        in_fmt = _detect(args.path, first)
        out_fmt = args.format or in_fmt
        writer = RowWriter(sys.stdout, out_fmt)
        measurements = read_measurements(chain([first], lines), in_fmt)
        solver = partial(solve_record, tolerance=tolerance)
        results = (_ordered_parallel_map(solver, measurements)
                   if args.parallel else map(solver, measurements))
        failed = 0
        for measurement, solution in results:
            writer.write(combined_row(measurement, solution))
            if not solution.solved:
                failed += 1
        return EXIT_RECORD_FAILED if failed else EXIT_OK
    except ParseError as exc:
        print(f"star-solve: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if owned:
            stream.close()


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        tolerance = residual_tolerance(None)
    except ValueError as exc:
        print(f"star-solve: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        stream, owned = _open_input(args.path)
    except OSError as exc:
        print(f"star-solve: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        lines = iter(stream)
        first = next(lines, None)
        if first is None:
            print("0 records, 0 failed")
            return EXIT_OK
        fmt = _detect(args.path, first)
        total = failed = 0
        for measurement, solution in read_pairs(chain([first], lines), fmt):
            total += 1
            passed, detail = verify_record(measurement, solution, tolerance)
            if not passed:
                failed += 1
            print(f"{measurement.id}: {'PASS' if passed else 'FAIL'} ({detail})")
        print(f"{total} records, {failed} failed")
        return EXIT_RECORD_FAILED if failed else EXIT_OK
    except ParseError as exc:
        print(f"star-solve: {exc}", file=sys.stderr)
        return EXIT_USAGE
    finally:
        if owned:
            stream.close()


def cmd_synth(args: argparse.Namespace) -> int:
    if args.count < 1:
        print("star-solve: --count must be at least 1", file=sys.stderr)
        return EXIT_USAGE
    rng = Random(args.seed)
    writer = RowWriter(sys.stdout, "csv")
    for index in range(args.count):
        spec = random_synthesis_spec(rng, seed=args.seed, symmetric=args.symmetric)
        edges, expected = synthesize_triangle(spec)
        measurement = MeasurementRecord(
            id=f"synth-{args.seed}-{index:05d}",
            u1=edges.a, u2=edges.b, u3=edges.c,
            psi1=None if args.symmetric else spec.angles.psi_a,
            psi2=None if args.symmetric else spec.angles.psi_b,
        )
        planted = SolutionRecord(
            id=measurement.id,
            u1p=expected.a_prime, u2p=expected.b_prime, u3p=expected.c_prime,
            max_residual=expected.max_residual,
            status=STATUS_OK,
            diagnostics="planted ground truth",
        )
        writer.write(combined_row(measurement, planted))
    return EXIT_OK


# =========================================================================
# Argument parsing
# =========================================================================

class _Parser(argparse.ArgumentParser):
    # Spec'd exit codes reserve 2 for record failures; usage errors exit 1.
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="star-solve",
        description="Recover star-circuit line voltages from phase-to-phase "
                    "measurements.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser(
        "solve", help="solve each input record",
        description="Read measurement records (CSV or JSON lines), solve each, "
                    "and write records extended with line voltages and status. "
                    "Records without psi columns use the 120-degree formulas.")
    p_solve.add_argument("path", nargs="?", default="-",
                         help="input file, or - for stdin (default)")
    p_solve.add_argument("--format", choices=("csv", "jsonl"), default=None,
                         help="output format (default: mirror the input)")
    p_solve.add_argument("--parallel", action="store_true",
                         help="solve records concurrently (order preserved)")
    p_solve.add_argument("--tolerance", type=float, default=None, metavar="REL",
                         help="relative residual tolerance for status=ok "
                              "(default 1e-8, or STAR_SOLVE_TOLERANCE)")
    p_solve.set_defaults(func=cmd_solve)

    p_verify = sub.add_parser(
        "verify", help="verify measurement/solution pairs",
        description="Re-check each row's solution: mesh-rule closure, an "
                    "independent circle-intersection re-solve, and (for "
                    "120-degree rows) the distance-sum minimality oracle.")
    p_verify.add_argument("path", nargs="?", default="-",
                          help="input file, or - for stdin (default)")
    p_verify.set_defaults(func=cmd_verify)

    p_synth = sub.add_parser(
        "synth", help="generate synthetic records with planted ground truth",
        description="Emit solvable records built from planted line voltages; "
                    "deterministic for a fixed seed.")
    p_synth.add_argument("--count", type=int, required=True,
                         help="number of records to generate")
    p_synth.add_argument("--seed", type=int, default=0,
                         help="random seed (default 0)")
    p_synth.add_argument("--symmetric", action="store_true",
                         help="all phase differences 120 deg; psi columns left empty")
    p_synth.set_defaults(func=cmd_synth)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except BrokenPipeError:
        # Downstream consumer (head, etc.) closed the pipe; die quietly.
        import os

        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
