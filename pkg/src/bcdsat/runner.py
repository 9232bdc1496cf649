"""Single-instance pipeline: simplify, decompose, configure the policy, solve."""

from __future__ import annotations

import logging
import time
from contextlib import ExitStack
from dataclasses import dataclass, replace
from pathlib import Path

from .decomposition import BlockedDecomposition, decompose
from .domain import BranchMode, Formula, RunRecord, Verdict
from .exceptions import ProofWriteError
from .io import read_dimacs
from .models import TIMEOUT_GRACE, RunOptions, SolverOptions
from .policy import DecisionTrace, ModeConfig, attach_policy
from .simplify import simplify_root
from .solver import CDCLSolver, DratProof, SolveResult

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class InstanceOutcome:
    """Everything a run produced for one formula."""

    formula: Formula
    simplified: Formula
    result: SolveResult
    mode_config: ModeConfig
    decomposition: BlockedDecomposition | None
    elapsed: float

    @property
    def quality(self) -> float | None:
        return None if self.decomposition is None else self.decomposition.quality

    @property
    def theta(self) -> int:
        return self.mode_config.theta

    def to_record(self, instance: str) -> RunRecord:
        return RunRecord(
            instance=instance,
            mode=self.mode_config.mode,
            verdict=self.result.verdict,
            time_s=self.elapsed,
            conflicts=self.result.stats.conflicts,
            decisions=self.result.stats.decisions,
            quality=self.quality,
            theta=self.theta,
        )


def _remaining(options: RunOptions, spent: float) -> float | None:
    if options.timeout is None:
        return None
    return max(options.timeout - spent, 0.0)


def _decompose_budget(options: RunOptions, spent: float) -> float:
    remaining = _remaining(options, spent)
    if remaining is None:
        return options.decompose_budget
    return min(options.decompose_budget, remaining)


def _solver_options(options: RunOptions, spent: float) -> SolverOptions:
    return SolverOptions(
        seed=options.seed,
        time_limit=_remaining(options, spent),
        debug_checks=options.debug_checks,
    )


def _overran(options: RunOptions, elapsed: float) -> bool:
    return options.timeout is not None and elapsed > options.timeout * (
        1 + TIMEOUT_GRACE
    )


def solve_instance(
    formula: Formula,
    options: RunOptions | None = None,
    trace: list[DecisionTrace] | None = None,
) -> InstanceOutcome:
    """Run the full pipeline on a parsed formula.

    The solver works on the root-simplified formula; its model covers the
    root units because they are asserted at level 0. When ``proof_path`` is
    set, a DRAT proof against the input formula is written there. With a
    timeout, decomposition gets at most the time left, and a verdict reached
    past the timeout plus grace is reported as UNKNOWN.

    Raises:
        ProofWriteError: If the proof file cannot be written.
        ConfigurationError: If the decomposition does not verify.
    """
    options = options or RunOptions()
    started = time.perf_counter()
    simplified = simplify_root(formula)

    decomposition: BlockedDecomposition | None = None
    if options.mode is not BranchMode.NONE:
        decomposition = decompose(
            simplified,
            _decompose_budget(options, time.perf_counter() - started),
        )
    mode_config = ModeConfig.for_formula(options.mode, simplified, options.theta)
    solver_options = _solver_options(options, time.perf_counter() - started)

    with ExitStack() as stack:
        proof = None
        if options.proof_path is not None:
            try:
                options.proof_path.parent.mkdir(parents=True, exist_ok=True)
                handle = stack.enter_context(
                    options.proof_path.open("w", encoding="utf-8")
                )
            except OSError as e:
                raise ProofWriteError(
                    f"Cannot open proof file {options.proof_path}: {e}"
                ) from e
            proof = DratProof(handle)
        solver = CDCLSolver(simplified, options=solver_options, proof=proof)
        attach_policy(solver, decomposition, mode_config, simplified, trace=trace)
        result = solver.solve()

    elapsed = time.perf_counter() - started
    if result.verdict is not Verdict.UNKNOWN and _overran(options, elapsed):
        logger.warning(
            "%s after %.2fs is past the %.1fs timeout; reporting UNKNOWN",
            result.verdict,
            elapsed,
            options.timeout,
        )
        result = replace(result, verdict=Verdict.UNKNOWN, model=None)
    logger.info(
        "%s in %.3fs (%d conflicts, %d decisions, %d restarts)",
        result.verdict,
        elapsed,
        result.stats.conflicts,
        result.stats.decisions,
        result.stats.restarts,
    )
    return InstanceOutcome(
        formula=formula,
        simplified=simplified,
        result=result,
        mode_config=mode_config,
        decomposition=decomposition,
        elapsed=elapsed,
    )


def solve_file(
    file_path: str | Path, options: RunOptions | None = None
) -> InstanceOutcome:
    """Read a DIMACS file and run the pipeline on it."""
    return solve_instance(read_dimacs(file_path), options)
