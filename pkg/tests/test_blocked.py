"""Tests for blocked-clause predicates and blocked clause elimination."""

from __future__ import annotations

import pytest

from bcdsat.decomposition import (
    OccurrenceIndex,
    bce_fixpoint,
    is_blocked,
    resolvent,
)
from bcdsat.domain import Clause
from bcdsat.exceptions import ContractError
from bcdsat.generators import random_corpus


def _c(*lits: int) -> Clause:
    return Clause.from_literals(lits)


def _bce_oracle(clauses: list[Clause]) -> tuple[int, ...]:
    """Rescan every active clause each round until nothing is blocked."""
    active = list(range(len(clauses)))
    changed = True
    while changed:
        changed = False
        for i in list(active):
            others = [clauses[j] for j in active if j != i]
            if any(is_blocked(clauses[i], lit, others) for lit in clauses[i]):
                active.remove(i)
                changed = True
    return tuple(sorted(active))


class TestResolvent:
    def test_basic(self):
        assert resolvent(_c(1, 2), _c(-1, 3), 1).literals == (2, 3)

    def test_tautological_resolvent(self):
        result = resolvent(_c(1, 2), _c(-1, -2), 1)

        assert result.key == frozenset({2, -2})
        assert result.is_tautology

    def test_unit_resolution_gives_empty_clause(self):
        assert resolvent(_c(1), _c(-1), 1).is_empty

    def test_duplicates_are_removed(self):
        assert resolvent(_c(1, 2), _c(-1, 2), 1).literals == (2,)

    @pytest.mark.parametrize(
        ("c1", "c2", "lit"),
        [((2, 3), (-1,), 1), ((1, 2), (3,), 1)],
    )
    def test_precondition_violations(self, c1, c2, lit):
        with pytest.raises(ContractError):
            resolvent(_c(*c1), _c(*c2), lit)


class TestIsBlocked:
    def test_all_resolvents_tautological(self):
        assert is_blocked(_c(1, 2), 1, [_c(1, 2), _c(-1, -2)])

    def test_non_tautological_resolvent(self):
        assert not is_blocked(_c(1, 2), 1, [_c(1, 2), _c(-1, 3)])

    def test_tautology_is_blocked_on_its_complementary_literal(self):
        assert is_blocked(_c(1, -1, 2), 1, [_c(-1, 3), _c(-1, 4)])

    def test_no_partner_clauses_means_blocked(self):
        assert is_blocked(_c(1, 2), 2, [_c(-1, 3)])

    def test_literal_must_occur(self):
        with pytest.raises(ContractError, match="does not occur"):
            is_blocked(_c(1, 2), 3, [])


class TestOccurrenceIndex:
    def test_tracks_active_members(self):
        index = OccurrenceIndex([(1, 2), (-1, 3), (2, 3)], members=[0, 1])

        assert len(index) == 2
        assert 2 not in index
        assert list(index.occurrences(-1)) == [1]
        assert index.count(2) == 1

        index.deactivate(1)
        index.activate(2)

        assert index.count(-1) == 0
        assert list(index.occurrences(3)) == [2]
        assert index.active_indices() == (0, 2)

    def test_blocks_matches_predicate(self):
        lists = [(1, 2), (-1, -2), (-1, 3)]
        clauses = [_c(*lits) for lits in lists]
        index = OccurrenceIndex(lists)

        for i, clause in enumerate(clauses):
            others = [c for j, c in enumerate(clauses) if j != i]
            for lit in clause:
                assert index.blocks(i, lit) == is_blocked(clause, lit, others)


class TestBceFixpoint:
    def test_pair_is_fully_eliminated(self):
        result = bce_fixpoint([_c(1, 2), _c(-1, -2)])

        assert result.residue == ()
        assert sorted(step.clause for step in result.eliminated) == [0, 1]

    def test_chain_matches_oracle(self):
        clauses = [_c(1, 2), _c(-1, 3), _c(-3, -2)]

        assert bce_fixpoint(clauses).residue == _bce_oracle(clauses)

    def test_empty_input(self):
        result = bce_fixpoint([])

        assert result.eliminated == ()
        assert result.residue == ()

    def test_unsatisfiable_core_survives(self):
        clauses = [_c(1, 2), _c(-1, 2), _c(1, -2), _c(-1, -2)]

        assert bce_fixpoint(clauses).residue == (0, 1, 2, 3)

    def test_members_restrict_the_run(self):
        clauses = [_c(1, 2), _c(-1, 2), _c(1, -2), _c(-1, -2)]

        result = bce_fixpoint(clauses, members=[0, 3])

        assert result.residue == ()
        assert {step.clause for step in result.eliminated} == {0, 3}

    def test_elimination_order_replays(self):
        clauses = [_c(1, 2), _c(-1, 3), _c(-3, -2), _c(2, 4), _c(-4, 1)]
        result = bce_fixpoint(clauses)
        remaining = set(range(len(clauses)))

        for step in result.eliminated:
            remaining.discard(step.clause)
            others = [clauses[j] for j in remaining]
            assert is_blocked(clauses[step.clause], step.literal, others)
        assert remaining == set(result.residue)

    @pytest.mark.parametrize("seed", range(5))
    def test_residue_matches_rescan_oracle(self, seed):
        for formula in random_corpus(100, max_vars=12, max_clauses=30, seed=seed):
            clauses = list(formula.clauses)

            assert bce_fixpoint(clauses).residue == _bce_oracle(clauses)
