"""Blocked-clause predicates and blocked clause elimination (BCE).

A literal ``l`` blocks clause ``C`` with respect to a clause set when ``C``
contains ``-l`` as well, or when every resolvent of ``C`` on ``l`` with a
clause containing ``-l`` is a tautology. BCE removes blocked clauses until
none is left; the residue is unique whatever the removal order.
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterable, Iterator, Sequence
from typing import NamedTuple

from ..domain import Clause
from ..exceptions import ContractError

logger = logging.getLogger(__name__)


class EliminationStep(NamedTuple):
    """One BCE removal: the clause index and the literal that blocked it."""

    clause: int
    literal: int


class BceResult(NamedTuple):
    """Outcome of BCE to fixpoint over a clause sequence."""

    eliminated: tuple[EliminationStep, ...]
    residue: tuple[int, ...]


def resolvent(c1: Clause, c2: Clause, lit: int) -> Clause:
    """Resolve c1 and c2 on lit.

    Returns:
        ``(c1 - {lit}) | (c2 - {-lit})`` with duplicates removed. Use
        ``Clause.is_tautology`` to check for a complementary pair.

    Raises:
        ContractError: If lit is not in c1 or -lit is not in c2.
    """
    if lit not in c1.literals:
        raise ContractError(f"literal {lit} does not occur in {list(c1.literals)}")
    if -lit not in c2.literals:
        raise ContractError(f"literal {-lit} does not occur in {list(c2.literals)}")
    return Clause.from_literals([
        *(x for x in c1.literals if x != lit),
        *(x for x in c2.literals if x != -lit),
    ])


def is_blocked(clause: Clause, lit: int, active: Iterable[Clause]) -> bool:
    """Return True when lit blocks clause with respect to the active clauses.

    Raises:
        ContractError: If lit does not occur in clause.
    """
    if lit not in clause.literals:
        raise ContractError(
            f"literal {lit} does not occur in {list(clause.literals)}"
        )
    if -lit in clause.literals:
        return True
    return all(
        resolvent(clause, other, lit).is_tautology
        for other in active
        if -lit in other.literals
    )


class OccurrenceIndex:
    """Per-literal occurrence lists over the active members of a clause sequence.

    Each literal maps to an insertion-ordered set of clause indices, so removal
    is O(1) and iteration order is deterministic. Only indices passed as
    members (all clauses by default) are ever indexed.
    """

    def __init__(
        self,
        clauses: Sequence[Sequence[int]],
        members: Iterable[int] | None = None,
    ):
        self._literal_sets = [frozenset(lits) for lits in clauses]
        self._tautological = [
            any(-lit in lits for lit in lits) for lits in self._literal_sets
        ]
        self._occurrences: dict[int, dict[int, None]] = {}
        self._active: set[int] = set()
        for index in range(len(clauses)) if members is None else members:
            self.activate(index)

    def __len__(self) -> int:
        return len(self._active)

    def __contains__(self, index: object) -> bool:
        return index in self._active

    def literals(self, index: int) -> frozenset[int]:
        return self._literal_sets[index]

    def is_tautology(self, index: int) -> bool:
        return self._tautological[index]

    def active_indices(self) -> tuple[int, ...]:
        """Return the active clause indices in ascending order."""
        return tuple(sorted(self._active))

    def occurrences(self, lit: int) -> Iterator[int]:
        """Yield the active clause indices containing lit."""
        return iter(tuple(self._occurrences.get(lit, ())))

    def count(self, lit: int) -> int:
        """Return the number of active clauses containing lit."""
        bucket = self._occurrences.get(lit)
        return len(bucket) if bucket else 0

    def activate(self, index: int) -> None:
        if index in self._active:
            return
        self._active.add(index)
        for lit in self._literal_sets[index]:
            self._occurrences.setdefault(lit, {})[index] = None

    def deactivate(self, index: int) -> None:
        if index not in self._active:
            return
        self._active.discard(index)
        for lit in self._literal_sets[index]:
            self._occurrences[lit].pop(index, None)

    def resolvent_is_tautology(self, index: int, other: int, lit: int) -> bool:
        """Return True when resolving clause index with other on lit is tautological."""
        lits = self._literal_sets[index]
        other_lits = self._literal_sets[other]
        if self._tautological[index] or self._tautological[other]:
            remainder = (lits - {lit}) | (other_lits - {-lit})
            return any(-x in remainder for x in remainder)
        return any(-x in lits for x in other_lits if x != -lit)

    def blocks(self, index: int, lit: int) -> bool:
        """Return True when lit blocks clause index w.r.t. the active clauses."""
        lits = self._literal_sets[index]
        if -lit in lits:
            return True
        if not self.count(-lit):
            return True
        return all(
            self.resolvent_is_tautology(index, other, lit)
            for other in self.occurrences(-lit)
            if other != index
        )


def bce_fixpoint(
    clauses: Sequence[Clause], members: Iterable[int] | None = None
) -> BceResult:
    """Run blocked clause elimination to fixpoint.

    A clause is re-examined only when a clause containing the complement of
    one of its literals disappears.

    Args:
        clauses: Clause sequence; results refer to its indices.
        members: Optional subset of indices to run on (default: all).

    Returns:
        BceResult with the elimination steps in removal order and the residue
        indices in ascending order.
    """
    literal_lists = [clause.literals for clause in clauses]
    index = OccurrenceIndex(literal_lists, members)
    pending = deque(index.active_indices())
    queued = set(pending)
    steps: list[EliminationStep] = []

    while pending:
        current = pending.popleft()
        queued.discard(current)
        if current not in index:
            continue
        blocking = next(
            (lit for lit in literal_lists[current] if index.blocks(current, lit)),
            None,
        )
        if blocking is None:
            continue
        index.deactivate(current)
        steps.append(EliminationStep(current, blocking))
        for lit in literal_lists[current]:
            for touched in index.occurrences(-lit):
                if touched not in queued:
                    queued.add(touched)
                    pending.append(touched)

    residue = index.active_indices()
    logger.debug(
        "BCE eliminated %d clauses, residue %d", len(steps), len(residue)
    )
    return BceResult(eliminated=tuple(steps), residue=residue)
