"""Tests for random instance generation."""

from __future__ import annotations

import pytest

from bcdsat.domain import variable
from bcdsat.generators import random_corpus, random_formula, write_random_instances
from bcdsat.io import read_dimacs


def test_clauses_have_k_distinct_variables():
    formula = random_formula(10, 50, k=3, seed=1)

    assert formula.num_clauses == 50
    for clause in formula.clauses:
        assert len({variable(lit) for lit in clause}) == 3


def test_same_seed_same_formula():
    assert random_formula(20, 40, seed=9) == random_formula(20, 40, seed=9)


def test_width_must_fit_variables():
    with pytest.raises(ValueError, match="k must be between"):
        random_formula(2, 5, k=3)


def test_corpus_is_reproducible():
    first = list(random_corpus(5, seed=2))

    assert first == list(random_corpus(5, seed=2))
    assert all(3 <= formula.num_vars <= 20 for formula in first)


def test_written_instances_parse_back(tmp_path):
    paths = write_random_instances(tmp_path, 2, 10, ratio=4.0, seed=3)

    assert [path.name for path in paths] == ["rand-10-000.cnf", "rand-10-001.cnf"]
    formula = read_dimacs(paths[1])
    assert formula.num_vars == 10
    assert formula.num_clauses == 40
    assert formula == random_formula(10, 40, seed=4)
