"""Root-level simplification: unit propagation, tautology and duplicate removal."""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Iterable, Sequence
from dataclasses import dataclass

from .domain import Clause, Formula

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PropagationOutcome:
    """Result of unit propagation to fixpoint."""

    trail: tuple[int, ...]
    conflict: bool

    @property
    def assigned(self) -> frozenset[int]:
        return frozenset(self.trail)


class UnitPropagator:
    """Occurrence-list unit propagation over a clause database that can grow
    and shrink.

    Clauses are addressed by the index returned from ``add``. Removed slots
    stay ``None`` so indices remain stable. Used by root simplification and by
    the forward RUP checks (proof checking and the engine's debug mode).
    """

    def __init__(self, clauses: Iterable[Sequence[int]] = ()):
        self._clauses: list[tuple[int, ...] | None] = []
        self._occurrences: defaultdict[int, list[int]] = defaultdict(list)
        self._units: set[int] = set()
        self._empty = 0
        for lits in clauses:
            self.add(lits)

    def __len__(self) -> int:
        return sum(1 for clause in self._clauses if clause is not None)

    def add(self, literals: Sequence[int]) -> int:
        """Add a clause and return its index."""
        index = len(self._clauses)
        lits = tuple(dict.fromkeys(literals))
        self._clauses.append(lits)
        if not lits:
            self._empty += 1
        elif len(lits) == 1:
            self._units.add(index)
        for lit in lits:
            self._occurrences[lit].append(index)
        return index

    def remove(self, index: int) -> None:
        """Remove the clause stored at index (no-op if already removed)."""
        lits = self._clauses[index]
        if lits is None:
            return
        self._clauses[index] = None
        if not lits:
            self._empty -= 1
        self._units.discard(index)
        for lit in lits:
            self._occurrences[lit].remove(index)

    def clause(self, index: int) -> tuple[int, ...] | None:
        return self._clauses[index]

    def propagate(self, assumptions: Iterable[int] = ()) -> PropagationOutcome:
        """Assign the assumptions plus all unit clauses and propagate to fixpoint.

        Returns:
            The assignment trail in propagation order and whether a conflict
            (a falsified clause or complementary assumptions) was reached.
        """
        if self._empty:
            return PropagationOutcome(trail=(), conflict=True)

        value: dict[int, bool] = {}
        trail: list[int] = []

        def assign(lit: int) -> bool:
            current = value.get(abs(lit))
            if current is None:
                value[abs(lit)] = lit > 0
                trail.append(lit)
                return True
            return current == (lit > 0)

        pending = list(assumptions)
        for index in sorted(self._units):
            lits = self._clauses[index]
            if lits:
                pending.append(lits[0])
        for lit in pending:
            if not assign(lit):
                return PropagationOutcome(trail=tuple(trail), conflict=True)

        head = 0
        while head < len(trail):
            false_lit = -trail[head]
            head += 1
            for index in self._occurrences.get(false_lit, ()):
                lits = self._clauses[index]
                if lits is None:
                    continue
                unassigned = 0
                candidate = 0
                satisfied = False
                for lit in lits:
                    current = value.get(abs(lit))
                    if current is None:
                        unassigned += 1
                        candidate = lit
                    elif current == (lit > 0):
                        satisfied = True
                        break
                if satisfied:
                    continue
                if unassigned == 0:
                    return PropagationOutcome(trail=tuple(trail), conflict=True)
                if unassigned == 1:
                    assign(candidate)
        return PropagationOutcome(trail=tuple(trail), conflict=False)


def simplify_root(formula: Formula) -> Formula:
    """Simplify a formula at the root level.

    Performs unit propagation to fixpoint, removes satisfied clauses, falsified
    literals, tautologies and duplicate clauses, and records every fixed
    literal in ``units`` (propagation order). If the empty clause is derived
    the result is marked ``unsat`` and carries no clauses.

    Args:
        formula: Formula to simplify. Existing ``units`` are honoured.

    Returns:
        Equisatisfiable Formula with no unit clauses and no tautologies.
    """
    if formula.unsat:
        return formula

    kept = [clause for clause in formula.clauses if not clause.is_tautology]
    propagator = UnitPropagator(clause.literals for clause in kept)
    outcome = propagator.propagate(formula.units)
    if outcome.conflict:
        logger.info("Root propagation derived the empty clause")
        return Formula(
            num_vars=formula.num_vars, units=outcome.trail, unsat=True
        )

    assigned = outcome.assigned
    residual: list[Clause] = []
    seen: set[frozenset[int]] = set()
    for clause in kept:
        if any(lit in assigned for lit in clause.literals):
            continue
        reduced = Clause.from_literals(
            lit for lit in clause.literals if -lit not in assigned
        )
        if reduced.key in seen:
            continue
        seen.add(reduced.key)
        residual.append(reduced)

    logger.info(
        "Root simplification: %d -> %d clauses, %d fixed literals, "
        "%d tautologies dropped",
        formula.num_clauses,
        len(residual),
        len(outcome.trail),
        len(formula.clauses) - len(kept),
    )
    return Formula(
        num_vars=formula.num_vars, clauses=tuple(residual), units=outcome.trail
    )

