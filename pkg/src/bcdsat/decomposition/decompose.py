"""Decomposition of a formula into a large and a small blocked set.

``pure_decompose`` builds a decomposition that is valid by construction: each
clause goes to the set matching the sign of its maximum variable, and
eliminating clauses in decreasing maximum-variable order makes every step
vacuously blocked on that literal. ``improve_decomposition`` then greedily
moves clauses from the small set into the large one while the large set stays
fully eliminable, until fixpoint or until its time budget runs out.
"""

from __future__ import annotations

import logging
import math
import time
from collections.abc import Callable, Sequence
from fractions import Fraction

from pydantic import BaseModel, ConfigDict, computed_field, model_validator

from ..domain import Formula, variable
from ..exceptions import ContractError
from .blocked import EliminationStep, OccurrenceIndex

logger = logging.getLogger(__name__)

Clock = Callable[[], float]


class BlockedDecomposition(BaseModel):
    """Partition of a formula's clause indices into two blocked sets.

    ``elim_order_large`` and ``elim_order_small`` list each set's clauses in
    BCE elimination order together with the blocking literal used at that
    step. Validity against a formula is checked by ``verify_decomposition``.
    """

    model_config = ConfigDict(frozen=True)

    large: tuple[int, ...]
    small: tuple[int, ...]
    elim_order_large: tuple[EliminationStep, ...]
    elim_order_small: tuple[EliminationStep, ...]

    @model_validator(mode="after")
    def large_not_smaller(self) -> BlockedDecomposition:
        if len(self.large) < len(self.small):
            raise ValueError("the large set must hold at least as many clauses")
        return self

    @computed_field
    @property
    def quality(self) -> float:
        """Fraction of clauses in the large set, |L| / (|L| + |S|)."""
        total = len(self.large) + len(self.small)
        return len(self.large) / total if total else 1.0


def _literal_lists(formula: Formula) -> list[tuple[int, ...]]:
    return [clause.literals for clause in formula.clauses]


def pure_decompose(formula: Formula) -> BlockedDecomposition:
    """Split a simplified formula by the sign of each clause's maximum variable.

    Clauses whose maximum variable occurs positively form P, the rest form N.
    The larger of the two becomes the large set (ties go to P). Within each
    set the elimination order is decreasing maximum variable, ties by index.

    Raises:
        ContractError: If the formula contains an empty clause.
    """
    positive: list[tuple[int, int, int]] = []
    negative: list[tuple[int, int, int]] = []
    for index, clause in enumerate(formula.clauses):
        if clause.is_empty:
            raise ContractError(f"clause {index} is empty; simplify the formula first")
        top = max(clause.literals, key=variable)
        bucket = positive if top > 0 else negative
        bucket.append((variable(top), index, top))

    def steps(bucket: list[tuple[int, int, int]]) -> tuple[EliminationStep, ...]:
        ordered = sorted(bucket, key=lambda item: (-item[0], item[1]))
        return tuple(EliminationStep(index, lit) for _, index, lit in ordered)

    if len(positive) >= len(negative):
        large, small = positive, negative
    else:
        large, small = negative, positive
    decomposition = BlockedDecomposition(
        large=tuple(sorted(index for _, index, _ in large)),
        small=tuple(sorted(index for _, index, _ in small)),
        elim_order_large=steps(large),
        elim_order_small=steps(small),
    )
    logger.debug(
        "Pure decomposition: |L|=%d |S|=%d quality=%.4f",
        len(decomposition.large),
        len(decomposition.small),
        decomposition.quality,
    )
    return decomposition


def _replays(
    literal_lists: Sequence[Sequence[int]],
    members: set[int],
    order: Sequence[EliminationStep],
) -> bool:
    """Replay an elimination order over one set and report whether it empties it."""
    if len(order) != len(members) or {step.clause for step in order} != members:
        return False
    index = OccurrenceIndex(literal_lists, members)
    for step in order:
        if step.literal not in index.literals(step.clause):
            return False
        if not index.blocks(step.clause, step.literal):
            return False
        index.deactivate(step.clause)
    return True


def verify_decomposition(decomposition: BlockedDecomposition, formula: Formula) -> bool:
    """Check that a decomposition partitions the formula into two blocked sets.

    Returns:
        True iff large and small partition the clause indices and replaying
        each recorded elimination order removes every clause of its set, each
        blocked (on its recorded literal) w.r.t. the rest of its own set.
    """
    large = set(decomposition.large)
    small = set(decomposition.small)
    if len(large) != len(decomposition.large) or len(small) != len(
        decomposition.small
    ):
        logger.debug("Decomposition lists a clause twice")
        return False
    if large & small or (large | small) != set(range(formula.num_clauses)):
        logger.debug("Decomposition does not partition the clause indices")
        return False

    literal_lists = _literal_lists(formula)
    for name, members, order in (
        ("large", large, decomposition.elim_order_large),
        ("small", small, decomposition.elim_order_small),
    ):
        if not _replays(literal_lists, members, order):
            logger.debug("Elimination order of the %s set does not replay", name)
            return False
    return True


class _LargeSetState:
    """Mutable view of the large set used while moving clauses into it.

    Each member carries a sort key for its elimination position and the
    literal that blocks it there. New members get keys strictly between
    existing ones, so accepted moves never renumber the order.
    """

    def __init__(
        self,
        literal_lists: Sequence[Sequence[int]],
        decomposition: BlockedDecomposition,
    ):
        self.index = OccurrenceIndex(literal_lists, decomposition.large)
        self.keys: dict[int, Fraction] = {
            step.clause: Fraction(position)
            for position, step in enumerate(decomposition.elim_order_large)
        }
        self.blocking = {
            step.clause: step.literal for step in decomposition.elim_order_large
        }
        self.used_keys = set(self.keys.values())
        self.min_key: Fraction | None = min(self.used_keys, default=None)
        self.max_key: Fraction | None = max(self.used_keys, default=None)

    def find_slot(self, candidate: int) -> tuple[Fraction, int] | None:
        """Return an elimination key and blocking literal for candidate, if any.

        Members eliminated before the candidate must stay blocked with the
        candidate present; the candidate must be blocked w.r.t. the members
        eliminated after it.
        """
        lits = self.index.literals(candidate)
        upper: Fraction | float = math.inf
        for lit in lits:
            for member in self.index.occurrences(-lit):
                if self.blocking[member] != -lit or lit in self.index.literals(member):
                    continue
                if not self.index.resolvent_is_tautology(member, candidate, -lit):
                    upper = min(upper, self.keys[member])

        best: tuple[Fraction | float, int] | None = None
        for lit in sorted(lits, key=lambda x: (variable(x), x)):
            lower: Fraction | float = -math.inf
            if -lit not in lits:
                for member in self.index.occurrences(-lit):
                    if not self.index.resolvent_is_tautology(candidate, member, lit):
                        lower = max(lower, self.keys[member])
            if lower < upper and (best is None or lower < best[0]):
                best = (lower, lit)
        if best is None:
            return None
        lower, lit = best
        return self._key_between(lower, upper), lit

    def _key_between(
        self, lower: Fraction | float, upper: Fraction | float
    ) -> Fraction:
        if self.min_key is None or self.max_key is None:
            return Fraction(0)
        if lower == -math.inf:
            return self.min_key - 1
        if upper == math.inf:
            return self.max_key + 1
        low = Fraction(lower)
        key = (low + Fraction(upper)) / 2
        while key in self.used_keys:
            key = (low + key) / 2
        return key

    def add(self, candidate: int, key: Fraction, lit: int) -> None:
        self.index.activate(candidate)
        self.keys[candidate] = key
        self.blocking[candidate] = lit
        self.used_keys.add(key)
        if self.min_key is None or key < self.min_key:
            self.min_key = key
        if self.max_key is None or key > self.max_key:
            self.max_key = key

    def order(self) -> tuple[EliminationStep, ...]:
        return tuple(
            EliminationStep(member, self.blocking[member])
            for member in sorted(self.keys, key=self.keys.__getitem__)
        )


def improve_decomposition(
    decomposition: BlockedDecomposition,
    formula: Formula,
    budget: float,
    clock: Clock = time.monotonic,
    deadline: float | None = None,
) -> BlockedDecomposition:
    """Greedily move clauses from the small set into the large set.

    A clause moves when the large set plus that clause is still fully
    eliminable. The check only inspects the occurrence lists of the
    candidate's literals. Passes repeat until one moves nothing or the budget
    expires; the best decomposition so far is returned either way.

    Args:
        decomposition: A valid decomposition of formula.
        formula: The decomposed formula.
        budget: Time limit in seconds.
        clock: Monotonic clock, injectable for tests.
        deadline: Absolute clock reading to stop at; overrides budget when
            the caller already spent part of it.

    Returns:
        A valid decomposition whose quality is at least the input's.
    """
    if not decomposition.small:
        return decomposition

    if deadline is None:
        deadline = clock() + budget
    state = _LargeSetState(_literal_lists(formula), decomposition)
    remaining = list(decomposition.small)
    moved = 0
    expired = False

    changed = True
    while changed and not expired:
        changed = False
        still_small: list[int] = []
        for position, candidate in enumerate(remaining):
            if clock() >= deadline:
                expired = True
                still_small.extend(remaining[position:])
                break
            slot = state.find_slot(candidate)
            if slot is None:
                still_small.append(candidate)
                continue
            state.add(candidate, *slot)
            moved += 1
            changed = True
        remaining = still_small

    if expired:
        logger.info(
            "Decomposition budget of %.1fs expired; keeping best so far", budget
        )

    kept_small = set(remaining)
    improved = BlockedDecomposition(
        large=tuple(sorted(state.keys)),
        small=tuple(sorted(kept_small)),
        elim_order_large=state.order(),
        elim_order_small=tuple(
            step
            for step in decomposition.elim_order_small
            if step.clause in kept_small
        ),
    )
    logger.debug(
        "Moved %d clauses into the large set; quality %.4f -> %.4f",
        moved,
        decomposition.quality,
        improved.quality,
    )
    return improved


def decompose(
    formula: Formula, budget: float, clock: Clock = time.monotonic
) -> BlockedDecomposition:
    """Pure decomposition followed by greedy improvement, both within budget."""
    started = clock()
    decomposition = improve_decomposition(
        pure_decompose(formula),
        formula,
        budget,
        clock=clock,
        deadline=started + budget,
    )
    logger.info(
        "Decomposition: |L|=%d |S|=%d quality=%.4f in %.2fs",
        len(decomposition.large),
        len(decomposition.small),
        decomposition.quality,
        clock() - started,
    )
    return decomposition
