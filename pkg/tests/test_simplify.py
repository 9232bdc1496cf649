"""Tests for root-level simplification and the unit propagator."""

from __future__ import annotations

import pytest

from bcdsat.domain import Formula
from bcdsat.generators import random_corpus
from bcdsat.io import model_to_mapping
from bcdsat.simplify import UnitPropagator, simplify_root
from bcdsat.validation import brute_force, check_model, find_model


def _formula(*clauses: list[int], num_vars: int | None = None) -> Formula:
    return Formula.from_lists(clauses, num_vars=num_vars)


class TestSimplifyRoot:
    def test_unit_chain_is_fully_assigned(self):
        result = simplify_root(_formula([1], [-1, 2], [-2, 3]))

        assert set(result.units) == {1, 2, 3}
        assert result.clauses == ()
        assert not result.unsat

    def test_complementary_units_are_unsat(self):
        result = simplify_root(_formula([1], [-1]))

        assert result.unsat
        assert result.clauses == ()

    def test_duplicate_clauses_are_merged(self):
        result = simplify_root(_formula([1, 2], [2, 1]))

        assert [clause.key for clause in result.clauses] == [frozenset({1, 2})]

    def test_falsified_literals_are_removed(self):
        result = simplify_root(_formula([1], [-1, 2, 3], [1, 4]))

        assert [clause.literals for clause in result.clauses] == [(2, 3)]
        assert result.units == (1,)

    def test_tautologies_are_dropped(self):
        result = simplify_root(_formula([1, -1], [2, 3]))

        assert [clause.literals for clause in result.clauses] == [(2, 3)]

    def test_existing_units_are_honoured(self):
        formula = Formula(
            num_vars=2, clauses=_formula([-1, 2]).clauses, units=(1,)
        )

        assert set(simplify_root(formula).units) == {1, 2}

    def test_unsat_formula_is_returned_unchanged(self):
        formula = Formula(num_vars=1, units=(1,), unsat=True)

        assert simplify_root(formula) is formula

    def test_variable_count_is_preserved(self):
        result = simplify_root(_formula([1], num_vars=9))

        assert result.num_vars == 9

    @pytest.mark.parametrize("formula", list(random_corpus(60, max_vars=10, seed=3)))
    def test_equisatisfiable_and_models_extend(self, formula):
        result = simplify_root(formula)

        assert all(len(clause) >= 2 for clause in result.clauses)
        assert not any(clause.is_tautology for clause in result.clauses)
        assert brute_force(result) == brute_force(formula)
        model = find_model(result)
        if model is not None:
            assert check_model(formula, model_to_mapping(model))


class TestUnitPropagator:
    def test_propagates_to_fixpoint(self):
        propagator = UnitPropagator([(1,), (-1, 2), (-2, 3)])

        outcome = propagator.propagate()

        assert outcome.trail == (1, 2, 3)
        assert not outcome.conflict

    def test_assumption_conflict(self):
        propagator = UnitPropagator([(-1, 2), (-2,)])

        assert propagator.propagate([1]).conflict

    def test_complementary_assumptions_conflict(self):
        assert UnitPropagator().propagate([1, -1]).conflict

    def test_removed_clause_no_longer_propagates(self):
        propagator = UnitPropagator([(1,)])
        index = propagator.add((-1, 2))

        propagator.remove(index)

        assert propagator.propagate().assigned == frozenset({1})
        assert propagator.clause(index) is None
        assert len(propagator) == 1

    def test_empty_clause_is_an_immediate_conflict(self):
        propagator = UnitPropagator([()])

        assert propagator.propagate().conflict
