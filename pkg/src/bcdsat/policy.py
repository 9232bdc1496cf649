"""Decomposition-guided branching.

The clause sequence C_1..C_n is the large blocked set followed by the small
one, each in reverse elimination order. ``pos[v]`` is the first index of a
binary clause containing ``v`` (or of any clause, when ``v`` is in no binary
clause). At decision levels 1-3, and while fewer than theta conflicts have
happened, the next decision is restricted to the unsatisfied clauses
C_pos..C_pos+5 around the variable decided at level 1.

The table is computed once per run and never updated.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Literal as TypingLiteral

from pydantic import BaseModel, ConfigDict, Field

from .decomposition import BlockedDecomposition, verify_decomposition
from .domain import BranchMode, Formula, variable
from .exceptions import ConfigurationError
from .solver import CDCLSolver, evsids_decision

logger = logging.getLogger(__name__)

WINDOW_SIZE = 6
POLICY_LEVELS = frozenset({1, 2, 3})

# Rule-of-thumb thresholds for an explicit "auto" theta.
LARGE_INSTANCE_VARS = 500_000
LARGE_THETA = 30_000
SMALL_THETA = 500_000


@dataclass(frozen=True)
class OrderedBlockedClauses:
    """The clause sequence C_1..C_n (stored 0-based) with its source indices.

    ``split`` is the number of clauses that came from the large set.
    """

    clauses: tuple[tuple[int, ...], ...]
    sources: tuple[int, ...]
    split: int

    def __len__(self) -> int:
        return len(self.clauses)

    @classmethod
    def from_decomposition(
        cls, decomposition: BlockedDecomposition, formula: Formula
    ) -> OrderedBlockedClauses:
        orders = (decomposition.elim_order_large, decomposition.elim_order_small)
        sources = tuple(step.clause for order in orders for step in reversed(order))
        return cls(
            clauses=tuple(formula.clauses[i].literals for i in sources),
            sources=sources,
            split=len(decomposition.elim_order_large),
        )

    def clause(self, position: int) -> tuple[int, ...]:
        """Return C_position (1-based)."""
        return self.clauses[position - 1]


@dataclass(frozen=True)
class PosTable:
    """1-based first positions per variable; 0 means the variable is absent."""

    pos: tuple[int, ...]

    def __getitem__(self, var: int) -> int:
        return self.pos[var] if 0 < var < len(self.pos) else 0


def build_pos(obc: OrderedBlockedClauses, num_vars: int) -> PosTable:
    """Compute pos with binary clauses taking priority over longer ones."""
    pos = [0] * (num_vars + 1)
    for index, lits in enumerate(obc.clauses, 1):
        if len(lits) == 2:
            for lit in lits:
                if pos[variable(lit)] == 0:
                    pos[variable(lit)] = index
    for index, lits in enumerate(obc.clauses, 1):
        for lit in lits:
            if pos[variable(lit)] == 0:
                pos[variable(lit)] = index
    return PosTable(tuple(pos))


def resolve_theta(  # noqa: PLR0911
    mode: BranchMode, num_clauses: int, num_vars: int
) -> int:
    """Conflict budget of the policy for a mode, from clause and variable counts.

    Returns 0 (policy disabled) for ``BranchMode.NONE``.
    """
    n, m = num_clauses, num_vars
    match mode:
        case BranchMode.NONE:
            return 0
        case BranchMode.BCD1:
            if n > 1_500_000 or m > 500_000:
                return 0
            return 6_000_000
        case BranchMode.BCD2:
            if n > 5_000_000 or m > 1_500_000 or n < 2 * m:
                return 0
            if m > 500_000:
                return 30_000
            return 500_000
        case BranchMode.BCD3:
            if n > 5_000_000 or m > 1_500_000 or n < 2 * m or n > 30 * m:
                return 0
            if m > 500_000:
                return 30_000
            if 1600 <= m <= 15_000:
                return 6_000_000
            return 500_000
    raise ConfigurationError(f"Unknown branching mode: {mode!r}")


def default_theta(num_vars: int) -> int:
    """Theta for ``--theta auto``: small budget for large instances."""
    return LARGE_THETA if num_vars > LARGE_INSTANCE_VARS else SMALL_THETA


class ModeConfig(BaseModel):
    """Branching mode with its resolved conflict budget."""

    model_config = ConfigDict(frozen=True)

    mode: BranchMode = BranchMode.NONE
    theta: int = Field(default=0, ge=0)
    window: int = Field(default=WINDOW_SIZE, ge=1)
    levels: frozenset[int] = POLICY_LEVELS

    @property
    def active(self) -> bool:
        return self.mode is not BranchMode.NONE and self.theta > 0

    @classmethod
    def for_formula(
        cls,
        mode: BranchMode,
        formula: Formula,
        theta: int | TypingLiteral["auto"] | None = None,
    ) -> ModeConfig:
        """Resolve theta for a simplified formula, honouring an override."""
        if mode is BranchMode.NONE:
            if theta is not None:
                logger.warning("Ignoring theta override %r with mode none", theta)
            return cls(mode=mode, theta=0)
        if theta is None:
            resolved = resolve_theta(mode, formula.num_clauses, formula.num_vars)
        elif theta == "auto":
            resolved = default_theta(formula.num_vars)
        else:
            resolved = int(theta)
        if resolved == 0:
            logger.info("Mode %s: theta=0 (policy disabled)", mode)
        else:
            logger.info("Mode %s: theta=%d", mode, resolved)
        return cls(mode=mode, theta=resolved)


@dataclass(frozen=True)
class DecisionTrace:
    """One recorded decision: where it was taken and what drove it."""

    level: int
    literal: int
    source: TypingLiteral["window", "global"]
    window: tuple[int, int] | None = None


def _window_bounds(pos_v: int, size: int, n: int) -> tuple[int, int]:
    return pos_v, min(pos_v + size - 1, n)


def pick_branch_lit(
    solver: CDCLSolver,
    pos: PosTable,
    obc: OrderedBlockedClauses,
    config: ModeConfig,
) -> tuple[int | None, tuple[int, int] | None]:
    """Choose a decision literal, restricted to the window when the gate is open.

    Returns the literal (None once everything is assigned) and the window
    that produced it, or None for the window when EVSIDS chose globally.
    """
    if (
        config.active
        and solver.decision_level in config.levels
        and solver.stats.conflicts < config.theta
    ):
        root_var = solver.root_decision_var()
        pos_v = pos[root_var] if root_var is not None else 0
        if pos_v:
            bounds = _window_bounds(pos_v, config.window, len(obc))
            var = _best_window_var(solver, obc.clauses[bounds[0] - 1 : bounds[1]])
            if var is not None:
                return solver.polarity(var), bounds
    return evsids_decision(solver), None


def _best_window_var(
    solver: CDCLSolver, clauses: Sequence[Sequence[int]]
) -> int | None:
    value = solver.value
    activity = solver.activity
    best: int | None = None
    for lits in clauses:
        if any(solver.lit_value(lit) > 0 for lit in lits):
            continue
        for lit in lits:
            var = variable(lit)
            if value[var] != 0:
                continue
            if (
                best is None
                or activity[var] > activity[best]
                or (activity[var] == activity[best] and var < best)
            ):
                best = var
    return best


@dataclass
class BcdBrancher:
    """Decision hook applying the window policy, optionally tracing decisions."""

    pos: PosTable
    obc: OrderedBlockedClauses
    config: ModeConfig
    trace: list[DecisionTrace] | None = field(default=None)

    def __call__(self, solver: CDCLSolver) -> int | None:
        lit, window = pick_branch_lit(solver, self.pos, self.obc, self.config)
        if self.trace is not None and lit is not None:
            self.trace.append(
                DecisionTrace(
                    level=solver.decision_level,
                    literal=lit,
                    source="global" if window is None else "window",
                    window=window,
                )
            )
        return lit


def attach_policy(
    solver: CDCLSolver,
    decomposition: BlockedDecomposition | None,
    config: ModeConfig,
    formula: Formula,
    trace: list[DecisionTrace] | None = None,
) -> CDCLSolver:
    """Install the decomposition-guided decision hook on a solver.

    Mode none leaves the solver's hook untouched.

    Raises:
        ConfigurationError: If the decomposition is missing or does not
            verify against the formula.
    """
    if config.mode is BranchMode.NONE:
        return solver
    if decomposition is None or not verify_decomposition(decomposition, formula):
        raise ConfigurationError(
            f"Mode {config.mode} needs a valid blocked decomposition of the formula"
        )
    obc = OrderedBlockedClauses.from_decomposition(decomposition, formula)
    pos = build_pos(obc, formula.num_vars)
    solver.decide = BcdBrancher(pos=pos, obc=obc, config=config, trace=trace)
    logger.debug(
        "Attached %s policy: %d ordered clauses, theta=%d",
        config.mode,
        len(obc),
        config.theta,
    )
    return solver
