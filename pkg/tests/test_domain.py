"""Tests for the CNF domain model and benchmark records."""

from __future__ import annotations

import math

import pytest
from pydantic import ValidationError

from bcdsat.domain import (
    BranchMode,
    Clause,
    Formula,
    RunRecord,
    Verdict,
    negate,
    variable,
)


@pytest.mark.parametrize("lit", [1, -1, 7, -42])
def test_negate_is_an_involution(lit):
    assert negate(negate(lit)) == lit
    assert variable(lit) >= 1
    assert variable(negate(lit)) == variable(lit)


class TestClause:
    def test_from_literals_drops_duplicates_keeping_order(self):
        clause = Clause.from_literals([3, -1, 3, 2, -1])

        assert clause.literals == (3, -1, 2)
        assert len(clause) == 3
        assert -1 in clause
        assert list(clause) == [3, -1, 2]

    def test_zero_is_rejected(self):
        with pytest.raises(ValueError, match="0 is not a literal"):
            Clause.from_literals([1, 0])

    def test_negative_lbd_is_rejected(self):
        with pytest.raises(ValueError, match="lbd"):
            Clause.from_literals([1], learnt=True, lbd=-1)

    def test_tautology_flag(self):
        assert Clause.from_literals([1, -1, 2]).is_tautology
        assert not Clause.from_literals([1, 2]).is_tautology

    def test_empty_clause(self):
        assert Clause.from_literals([]).is_empty

    def test_key_ignores_order(self):
        assert Clause.from_literals([1, -2]).key == Clause.from_literals([-2, 1]).key

    def test_variables(self):
        assert Clause.from_literals([-3, 1]).variables == frozenset({1, 3})


class TestFormula:
    def test_literal_outside_range_is_rejected(self):
        with pytest.raises(ValueError, match="outside 1..2"):
            Formula(num_vars=2, clauses=(Clause.from_literals([3]),))

    def test_unit_outside_range_is_rejected(self):
        with pytest.raises(ValueError, match="unit literal"):
            Formula(num_vars=1, units=(-2,))

    def test_negative_num_vars_is_rejected(self):
        with pytest.raises(ValueError, match="non-negative"):
            Formula(num_vars=-1)

    def test_from_lists_infers_num_vars(self):
        formula = Formula.from_lists([[1, -4], [2]])

        assert formula.num_vars == 4
        assert formula.num_clauses == 2

    def test_tautologies_are_flagged(self):
        formula = Formula.from_lists([[1, 2], [1, -1], [2, -2, 3]])

        assert formula.tautologies == (1, 2)

    def test_clause_multiset_is_order_insensitive(self):
        a = Formula.from_lists([[1, 2], [-1], [1, 2]])
        b = Formula.from_lists([[-1], [2, 1], [2, 1]])

        assert a.clause_multiset() == b.clause_multiset()

    def test_occurring_variables_include_units(self):
        formula = Formula(
            num_vars=5, clauses=(Clause.from_literals([1, -2]),), units=(4,)
        )

        assert formula.occurring_variables() == {1, 2, 4}


class TestVerdict:
    @pytest.mark.parametrize(
        ("verdict", "code", "line"),
        [
            (Verdict.SAT, 10, "s SATISFIABLE"),
            (Verdict.UNSAT, 20, "s UNSATISFIABLE"),
            (Verdict.UNKNOWN, 0, "s UNKNOWN"),
        ],
    )
    def test_exit_codes_and_status_lines(self, verdict, code, line):
        assert verdict.exit_code == code
        assert verdict.status_line == line


class TestRunRecord:
    def _record(self, **overrides):
        values = {
            "instance": "a.cnf",
            "mode": "bcd3",
            "verdict": "SAT",
            "time_s": 1.25,
            "conflicts": 10,
            "decisions": 20,
            "quality": 0.75,
            "theta": 500000,
        }
        values.update(overrides)
        return RunRecord.model_validate(values)

    def test_coerces_enums(self):
        record = self._record()

        assert record.mode is BranchMode.BCD3
        assert record.verdict is Verdict.SAT
        assert record.solved

    def test_unknown_is_not_solved(self):
        assert not self._record(verdict="UNKNOWN").solved

    @pytest.mark.parametrize("blank", ["", None, math.nan])
    def test_blank_quality_becomes_none(self, blank):
        assert self._record(quality=blank).quality is None

    def test_quality_must_be_a_fraction(self):
        with pytest.raises(ValidationError):
            self._record(quality=1.5)

    def test_negative_time_is_rejected(self):
        with pytest.raises(ValidationError):
            self._record(time_s=-0.1)

    def test_to_row_keeps_full_precision(self):
        row = self._record(time_s=0.1 + 0.2, quality=None).to_row()

        assert row["time_s"] == 0.1 + 0.2
        assert row["quality"] == ""
        assert row["mode"] == "bcd3"
        assert row["verdict"] == "SAT"
