"""Command line interface for the bcd-sat solver and benchmark harness."""

from __future__ import annotations

import argparse
import logging
import sys
import traceback
from collections.abc import Sequence
from pathlib import Path
from typing import NoReturn

from rich.console import Console
from rich.panel import Panel
from rich.table import Table

from .bench import bench_run, find_contradictions, write_cactus_csv
from .config import DEFAULT_BENCH_WORKERS, DEFAULT_DECOMPOSE_BUDGET
from .decomposition import decompose
from .domain import BranchMode, Formula, Verdict
from .exceptions import BcdSatError
from .generators import HARD_RATIO_3SAT, write_random_instances
from .io import format_model_lines, parse_model, read_dimacs, write_dimacs_file
from .logging_config import setup_logging
from .models import RunOptions
from .policy import default_theta, resolve_theta
from .runner import solve_instance
from .simplify import simplify_root
from .validation import brute_force, check_model, check_proof

logger = logging.getLogger(__name__)
console = Console(stderr=True)

EXIT_OK = 0
EXIT_ERROR = 1


class _ArgumentParser(argparse.ArgumentParser):
    """ArgumentParser that reports bad flags with exit code 1."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _theta_arg(value: str) -> int | str:
    if value == "auto":
        return value
    try:
        theta = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"theta must be a non-negative integer or 'auto', got {value!r}"
        ) from None
    if theta < 0:
        raise argparse.ArgumentTypeError("theta must be non-negative")
    return theta


def _modes_arg(value: str) -> list[BranchMode]:
    modes = []
    for name in value.split(","):
        try:
            modes.append(BranchMode(name.strip().lower()))
        except ValueError:
            choices = ", ".join(mode.value for mode in BranchMode)
            raise argparse.ArgumentTypeError(
                f"unknown mode {name!r} (choose from {choices})"
            ) from None
    return list(dict.fromkeys(modes))


def _add_solve_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--mode",
        type=BranchMode,
        choices=list(BranchMode),
        default=BranchMode.NONE,
        help="Branching mode (default: none)",
    )
    parser.add_argument(
        "--theta",
        type=_theta_arg,
        help="Override the conflict budget of the policy: an integer or 'auto'",
    )
    parser.add_argument("--seed", type=int, default=0, help="Random seed (default: 0)")
    parser.add_argument(
        "--decompose-budget",
        type=float,
        default=DEFAULT_DECOMPOSE_BUDGET,
        metavar="S",
        help=(
            "Seconds allowed for improving the decomposition "
            f"(default: {DEFAULT_DECOMPOSE_BUDGET:.1f})"
        ),
    )


def build_arg_parser() -> argparse.ArgumentParser:
    """Build the command line parser with all subcommands."""
    parser = _ArgumentParser(
        prog="bcd-sat",
        description="CDCL SAT solver with decomposition-guided branching.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Solve with the third mode table and write a DRAT proof
  %(prog)s solve instance.cnf --mode bcd3 --proof instance.drat

  # Verify the proof and a model
  %(prog)s check-proof instance.cnf instance.drat
  %(prog)s check-model instance.cnf model.txt

  # Benchmark a directory under two modes
  %(prog)s bench bench/ --modes none,bcd3 --timeout 30 --csv results.csv
        """,
    )
    parser.add_argument(
        "--verbose", "-v", action="store_true", help="Enable verbose logging"
    )
    parser.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default="INFO",
        help="Set logging level (default: INFO)",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    solve = commands.add_parser("solve", help="Solve a DIMACS CNF file")
    solve.add_argument("file", type=Path, help="DIMACS CNF file")
    _add_solve_options(solve)
    solve.add_argument("--timeout", type=float, metavar="S", help="Time limit (s)")
    solve.add_argument("--proof", type=Path, metavar="FILE", help="DRAT proof output")
    solve.add_argument(
        "--debug-checks",
        action="store_true",
        help="Check watcher invariants and RUP of every learnt clause (slow)",
    )

    decomp = commands.add_parser(
        "decompose", help="Split a formula into two blocked sets"
    )
    decomp.add_argument("file", type=Path, help="DIMACS CNF file")
    decomp.add_argument(
        "--out-prefix",
        type=Path,
        metavar="P",
        help="Write the sets to P.L.cnf and P.S.cnf",
    )
    decomp.add_argument(
        "--decompose-budget",
        type=float,
        default=DEFAULT_DECOMPOSE_BUDGET,
        metavar="S",
        help="Seconds allowed for improving the decomposition",
    )

    bench = commands.add_parser("bench", help="Run every instance under every mode")
    bench.add_argument("directory", type=Path, help="Directory of DIMACS files")
    bench.add_argument(
        "--modes",
        type=_modes_arg,
        default=[BranchMode.NONE, BranchMode.BCD3],
        help="Comma-separated modes (default: none,bcd3)",
    )
    bench.add_argument("--timeout", type=float, metavar="S", help="Per-run limit (s)")
    bench.add_argument("--csv", type=Path, metavar="FILE", help="Bench CSV output")
    bench.add_argument(
        "--cactus-csv", type=Path, metavar="FILE", help="Cactus CSV output"
    )
    bench.add_argument(
        "--workers",
        type=int,
        default=DEFAULT_BENCH_WORKERS,
        help=f"Worker processes (default: {DEFAULT_BENCH_WORKERS})",
    )
    bench.add_argument(
        "--decompose-budget",
        type=float,
        default=DEFAULT_DECOMPOSE_BUDGET,
        metavar="S",
        help="Seconds allowed for improving each decomposition",
    )

    check_m = commands.add_parser("check-model", help="Check a model against a CNF")
    check_m.add_argument("cnf", type=Path)
    check_m.add_argument("model", type=Path)

    check_p = commands.add_parser("check-proof", help="Forward-check a DRAT proof")
    check_p.add_argument("cnf", type=Path)
    check_p.add_argument("proof", type=Path)

    oracle = commands.add_parser("oracle", help="Brute-force verdict (<= 24 vars)")
    oracle.add_argument("file", type=Path)

    info = commands.add_parser("info", help="Report instance and decomposition data")
    info.add_argument("file", type=Path)
    info.add_argument(
        "--decompose-budget",
        type=float,
        default=DEFAULT_DECOMPOSE_BUDGET,
        metavar="S",
        help="Seconds allowed for improving the decomposition",
    )

    generate = commands.add_parser("generate", help="Write random k-SAT instances")
    generate.add_argument("directory", type=Path)
    generate.add_argument("--count", type=int, default=10)
    generate.add_argument("--vars", type=int, default=100, dest="num_vars")
    generate.add_argument("--ratio", type=float, default=HARD_RATIO_3SAT)
    generate.add_argument("-k", type=int, default=3)
    generate.add_argument("--seed", type=int, default=0)

    return parser


def validate_arguments(args: argparse.Namespace) -> None:
    """Validate numeric options, raising ValueError on bad values."""
    timeout = getattr(args, "timeout", None)
    if timeout is not None and timeout <= 0:
        raise ValueError("--timeout must be positive")
    budget = getattr(args, "decompose_budget", None)
    if budget is not None and budget <= 0:
        raise ValueError("--decompose-budget must be positive")
    if getattr(args, "workers", 1) < 1:
        raise ValueError("--workers must be at least 1")
    if args.command == "generate":
        if args.count < 1 or args.num_vars < 1 or args.ratio <= 0:
            raise ValueError("--count, --vars and --ratio must be positive")
        if not 1 <= args.k <= args.num_vars:
            raise ValueError("-k must be between 1 and --vars")


def _print_model(model: Sequence[bool]) -> None:
    for line in format_model_lines(model):
        print(line)


def cmd_solve(args: argparse.Namespace) -> int:
    """Solve one file and print the competition-style answer."""
    options = RunOptions(
        mode=args.mode,
        theta=args.theta,
        timeout=args.timeout,
        decompose_budget=args.decompose_budget,
        proof_path=args.proof,
        seed=args.seed,
        debug_checks=args.debug_checks,
    )
    outcome = solve_instance(read_dimacs(args.file), options)
    result = outcome.result
    if outcome.quality is not None:
        print(f"c decomposition quality {outcome.quality:.4f}")
    print(f"c theta {outcome.theta}")
    print(
        f"c conflicts {result.stats.conflicts} decisions {result.stats.decisions} "
        f"time {outcome.elapsed:.3f}s"
    )
    print(result.verdict.status_line)
    if result.verdict is Verdict.SAT and result.model is not None:
        _print_model(result.model)
    return result.verdict.exit_code


def _split_formula(formula: Formula, indices: Sequence[int]) -> Formula:
    return Formula(
        num_vars=formula.num_vars,
        clauses=tuple(formula.clauses[i] for i in indices),
    )


def cmd_decompose(args: argparse.Namespace) -> int:
    simplified = simplify_root(read_dimacs(args.file))
    if simplified.unsat:
        console.print("[yellow]Warning:[/yellow] formula is UNSAT at the root")
        print(Verdict.UNSAT.status_line)
        return Verdict.UNSAT.exit_code
    decomposition = decompose(simplified, args.decompose_budget)
    print(
        f"c quality {decomposition.quality:.6f}"
        f" large {len(decomposition.large)} small {len(decomposition.small)}"
        f" clauses {simplified.num_clauses} vars {simplified.num_vars}"
    )
    if args.out_prefix is not None:
        prefix = args.out_prefix
        large_path = prefix.with_name(prefix.name + ".L.cnf")
        small_path = prefix.with_name(prefix.name + ".S.cnf")
        write_dimacs_file(_split_formula(simplified, decomposition.large), large_path)
        write_dimacs_file(_split_formula(simplified, decomposition.small), small_path)
        console.print(f"[green]Wrote[/green] {large_path} and {small_path}")
    return EXIT_OK


def cmd_bench(args: argparse.Namespace) -> int:
    result = bench_run(
        args.directory,
        args.modes,
        args.timeout,
        workers=args.workers,
        csv_path=args.csv,
        options=RunOptions(decompose_budget=args.decompose_budget),
        console=console,
    )
    if args.cactus_csv is not None:
        write_cactus_csv(result.cactus, args.cactus_csv)

    table = Table(title="Solved instances per mode")
    table.add_column("Mode", style="cyan")
    table.add_column("Solved", justify="right")
    table.add_column("Total time (s)", justify="right")
    for mode in args.modes:
        times = result.cactus.get(mode, ())
        table.add_row(mode.value, str(len(times)), f"{sum(times):.2f}")
    console.print(table)

    contradictions = find_contradictions(result.records)
    if contradictions:
        console.print(
            Panel(
                "\n".join(contradictions),
                title="[red]Contradictory verdicts[/red]",
                border_style="red",
            )
        )
        return EXIT_ERROR
    if args.csv is not None:
        console.print(f"[green]Results saved to:[/green] {args.csv}")
    return EXIT_OK


def cmd_check_model(args: argparse.Namespace) -> int:
    formula = read_dimacs(args.cnf)
    model = parse_model(args.model.read_text(encoding="utf-8"))
    if check_model(formula, model):
        print("s MODEL VALID")
        return EXIT_OK
    print("s MODEL INVALID")
    return EXIT_ERROR


def cmd_check_proof(args: argparse.Namespace) -> int:
    formula = read_dimacs(args.cnf)
    outcome = check_proof(formula, args.proof.read_text(encoding="utf-8"))
    if outcome.valid:
        print("s VERIFIED")
        return EXIT_OK
    location = f" at line {outcome.line}" if outcome.line is not None else ""
    console.print(f"[red]Proof rejected{location}:[/red] {outcome.reason}")
    print("s NOT VERIFIED")
    return EXIT_ERROR


def cmd_oracle(args: argparse.Namespace) -> int:
    verdict = brute_force(read_dimacs(args.file))
    print(verdict.status_line)
    return verdict.exit_code


def cmd_info(args: argparse.Namespace) -> int:
    formula = read_dimacs(args.file)
    simplified = simplify_root(formula)
    table = Table(title=args.file.name, show_header=False)
    table.add_column(style="cyan", no_wrap=True)
    table.add_column(style="white")
    table.add_row("Clauses (input)", str(formula.num_clauses))
    table.add_row("Clauses |F|", str(simplified.num_clauses))
    table.add_row("Variables", str(simplified.num_vars))
    table.add_row("Root units", str(len(simplified.units)))
    if simplified.unsat:
        table.add_row("Status", "UNSAT at the root")
    else:
        sizes = [len(clause) for clause in simplified.clauses]
        if sizes:
            table.add_row("Clause sizes", f"{min(sizes)}..{max(sizes)}")
        decomposition = decompose(simplified, args.decompose_budget)
        table.add_row("Quality |L|/|F|", f"{decomposition.quality:.4f}")
        for mode in (BranchMode.BCD1, BranchMode.BCD2, BranchMode.BCD3):
            theta = resolve_theta(mode, simplified.num_clauses, simplified.num_vars)
            table.add_row(f"theta {mode.value}", str(theta))
        table.add_row("theta auto", str(default_theta(simplified.num_vars)))
    Console().print(table)
    return EXIT_OK


def cmd_generate(args: argparse.Namespace) -> int:
    paths = write_random_instances(
        args.directory, args.count, args.num_vars, args.ratio, args.k, args.seed
    )
    console.print(f"[green]Wrote {len(paths)} instances to[/green] {args.directory}")
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "decompose": cmd_decompose,
    "bench": cmd_bench,
    "check-model": cmd_check_model,
    "check-proof": cmd_check_proof,
    "oracle": cmd_oracle,
    "info": cmd_info,
    "generate": cmd_generate,
}


def main(argv: Sequence[str] | None = None) -> None:
    """Main entry point for the bcd-sat CLI.

    Exits with 10 (SAT), 20 (UNSAT), 0 (UNKNOWN or success) or 1 (error).
    """
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    setup_logging(level=args.log_level, verbose=args.verbose)

    try:
        validate_arguments(args)
        code = COMMANDS[args.command](args)
    except (FileNotFoundError, ValueError) as e:
        console.print(f"[red]Error:[/red] {e}")
        sys.exit(EXIT_ERROR)
    except PermissionError as e:
        console.print(f"[red]Permission error:[/red] {e}")
        sys.exit(EXIT_ERROR)
    except BcdSatError as e:
        console.print(f"[red]Solver error:[/red] {e}")
        sys.exit(EXIT_ERROR)
    except Exception as e:
        console.print(f"[red]Unexpected error:[/red] {e}")
        if args.verbose:
            traceback.print_exc()
        sys.exit(EXIT_ERROR)
    sys.exit(code)


if __name__ == "__main__":
    main()
