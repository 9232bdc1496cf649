"""Tests for blocked clause decomposition."""

from __future__ import annotations

import importlib
import itertools
import time

import pytest
from pydantic import ValidationError

from bcdsat.decomposition import (
    BlockedDecomposition,
    EliminationStep,
    decompose,
    improve_decomposition,
    pure_decompose,
    verify_decomposition,
)
from bcdsat.domain import Clause, Formula
from bcdsat.exceptions import ContractError
from bcdsat.generators import random_corpus, random_formula
from bcdsat.simplify import simplify_root


def _formula(*clauses: list[int]) -> Formula:
    return Formula.from_lists(clauses)


def _square() -> Formula:
    return _formula([1, 2], [-1, 2], [1, -2], [-1, -2])


def _pair_split(large: int, small: int) -> BlockedDecomposition:
    lits = {0: 1, 1: -1}
    return BlockedDecomposition(
        large=(large,),
        small=(small,),
        elim_order_large=(EliminationStep(large, lits[large]),),
        elim_order_small=(EliminationStep(small, lits[small]),),
    )


class TestPureDecompose:
    def test_max_variable_sign_splits_the_square(self):
        result = pure_decompose(_square())

        assert result.large == (0, 1)
        assert result.small == (2, 3)
        assert result.quality == 0.5

    def test_all_positive_tops_go_to_large(self):
        result = pure_decompose(_formula([1, 2], [2, 3]))

        assert result.large == (0, 1)
        assert result.small == ()
        assert result.quality == 1.0

    def test_larger_set_becomes_large(self):
        result = pure_decompose(_formula([-1, -2]))

        assert result.large == (0,)
        assert result.small == ()
        assert result.quality == 1.0

    def test_elimination_order_is_decreasing_max_variable(self):
        result = pure_decompose(_formula([1, 2], [3, 1], [-1, 2]))

        assert [step.clause for step in result.elim_order_large] == [1, 0, 2]
        assert [step.literal for step in result.elim_order_large] == [3, 2, 2]

    def test_empty_formula(self):
        result = pure_decompose(Formula(num_vars=0))

        assert result.large == ()
        assert result.quality == 1.0

    def test_empty_clause_is_rejected(self):
        formula = Formula(num_vars=1, clauses=(Clause.from_literals([]),))

        with pytest.raises(ContractError, match="empty"):
            pure_decompose(formula)

    @pytest.mark.parametrize("seed", range(4))
    def test_always_valid_with_quality_at_least_half(self, seed):
        for formula in random_corpus(50, seed=seed):
            result = pure_decompose(formula)

            assert verify_decomposition(result, formula)
            assert 0.5 <= result.quality <= 1.0


class TestVerifyDecomposition:
    @pytest.mark.parametrize(("large", "small"), [(0, 1), (1, 0)])
    def test_singleton_sets_are_blocked_either_way(self, large, small):
        formula = _formula([1, 2], [-1, -2])

        assert verify_decomposition(_pair_split(large, small), formula)

    def test_order_naming_a_foreign_clause_is_rejected(self):
        formula = _formula([1, 2], [-1, -2])
        decomposition = BlockedDecomposition(
            large=(0,),
            small=(1,),
            elim_order_large=(EliminationStep(1, -1),),
            elim_order_small=(EliminationStep(1, -1),),
        )

        assert not verify_decomposition(decomposition, formula)

    def test_missing_clause_is_rejected(self):
        formula = _formula([1, 2], [-1, -2], [3])
        assert not verify_decomposition(_pair_split(0, 1), formula)

    def test_overlapping_sets_are_rejected(self):
        formula = _formula([1, 2])
        decomposition = BlockedDecomposition(
            large=(0,),
            small=(0,),
            elim_order_large=(EliminationStep(0, 1),),
            elim_order_small=(EliminationStep(0, 1),),
        )

        assert not verify_decomposition(decomposition, formula)

    def test_unblocked_step_is_rejected(self):
        decomposition = BlockedDecomposition(
            large=(0, 1, 2, 3),
            small=(),
            elim_order_large=tuple(
                EliminationStep(i, lit)
                for i, lit in [(0, 2), (1, 2), (2, 1), (3, -1)]
            ),
            elim_order_small=(),
        )

        assert not verify_decomposition(decomposition, _square())

    def test_literal_not_in_clause_is_rejected(self):
        decomposition = BlockedDecomposition(
            large=(0,),
            small=(),
            elim_order_large=(EliminationStep(0, 3),),
            elim_order_small=(),
        )

        assert not verify_decomposition(decomposition, _formula([1, 2]))

    def test_small_larger_than_large_is_invalid(self):
        with pytest.raises(ValidationError, match="large set"):
            BlockedDecomposition(
                large=(),
                small=(0,),
                elim_order_large=(),
                elim_order_small=(EliminationStep(0, 1),),
            )


class TestImproveDecomposition:
    def test_nothing_to_move_returns_input(self):
        formula = _formula([1, 2], [2, 3])
        decomposition = pure_decompose(formula)

        assert improve_decomposition(decomposition, formula, 10.0) is decomposition

    def test_moves_a_clause_of_the_square(self):
        formula = _square()

        result = improve_decomposition(pure_decompose(formula), formula, 10.0)

        assert result.large == (0, 1, 2)
        assert result.small == (3,)
        assert result.quality == 0.75
        assert verify_decomposition(result, formula)

    def test_expired_budget_keeps_input_sets(self):
        formula = _square()
        ticks = itertools.count()

        result = improve_decomposition(
            pure_decompose(formula), formula, 0.5, clock=lambda: next(ticks)
        )

        assert result.large == (0, 1)
        assert result.small == (2, 3)
        assert verify_decomposition(result, formula)

    @pytest.mark.parametrize("seed", range(100))
    def test_monotone_and_valid_on_random_3sat(self, seed):
        formula = simplify_root(random_formula(20, 85, k=3, seed=seed))
        baseline = pure_decompose(formula)

        result = improve_decomposition(baseline, formula, 10.0)

        assert result.quality >= baseline.quality
        assert verify_decomposition(result, formula)

    def test_decompose_combines_both_steps(self):
        formula = _square()

        assert decompose(formula, 10.0).quality == 0.75

    @pytest.mark.slow
    def test_larger_instance_within_budget(self):
        formula = simplify_root(random_formula(400, 1600, k=3, seed=7))

        result = decompose(formula, 10.0)

        assert verify_decomposition(result, formula)
        assert result.quality >= 0.5

    def test_decompose_budget_covers_the_pure_step(self, monkeypatch):
        module = importlib.import_module("bcdsat.decomposition.decompose")
        now = [0.0]

        def slow_pure(formula):
            now[0] += 1.0
            return pure_decompose(formula)

        monkeypatch.setattr(module, "pure_decompose", slow_pure)
        result = decompose(_square(), 0.5, clock=lambda: now[0])

        assert result.large == (0, 1)
        assert result.small == (2, 3)

    def test_explicit_deadline_overrides_budget(self):
        formula = _square()

        result = improve_decomposition(
            pure_decompose(formula), formula, 10.0, clock=lambda: 5.0, deadline=5.0
        )

        assert result.small == (2, 3)

    @pytest.mark.slow
    def test_ten_thousand_clauses_within_budget(self):
        formula = simplify_root(random_formula(3000, 12000, k=3, seed=3))
        baseline = pure_decompose(formula)

        started = time.monotonic()
        result = decompose(formula, 5.0)
        elapsed = time.monotonic() - started

        assert formula.num_clauses >= 10_000
        assert elapsed < 8.0
        assert result.quality >= baseline.quality
        assert verify_decomposition(result, formula)
