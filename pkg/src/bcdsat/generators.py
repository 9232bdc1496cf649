"""Seeded random CNF generation for test corpora and desk-scale benchmarks."""

from __future__ import annotations

import logging
from collections.abc import Iterator
from pathlib import Path

import numpy as np

from .domain import Clause, Formula
from .io import write_dimacs_file

logger = logging.getLogger(__name__)

# Clause/variable ratio near the 3-SAT satisfiability threshold.
HARD_RATIO_3SAT = 4.26


def random_formula(
    num_vars: int, num_clauses: int, k: int = 3, seed: int | None = 0
) -> Formula:
    """Uniform random k-SAT: each clause has k distinct variables, random signs.

    Raises:
        ValueError: If k is not in 1..num_vars.
    """
    if not 1 <= k <= num_vars:
        raise ValueError(f"k must be between 1 and num_vars ({num_vars}), got {k}")
    rng = np.random.default_rng(seed)
    clauses = []
    for _ in range(num_clauses):
        variables = rng.choice(num_vars, size=k, replace=False) + 1
        signs = rng.integers(0, 2, size=k) * 2 - 1
        clauses.append(Clause.from_literals(int(lit) for lit in variables * signs))
    return Formula(num_vars=num_vars, clauses=tuple(clauses))


def random_corpus(
    count: int, max_vars: int = 20, max_clauses: int = 90, seed: int = 0
) -> Iterator[Formula]:
    """Yield small formulas of mixed sizes, widths and clause/variable ratios."""
    rng = np.random.default_rng(seed)
    for _ in range(count):
        num_vars = int(rng.integers(3, max_vars + 1))
        num_clauses = int(rng.integers(1, max_clauses + 1))
        k = int(rng.integers(1, min(num_vars, 4) + 1))
        yield random_formula(
            num_vars, num_clauses, k=k, seed=int(rng.integers(0, 2**31))
        )


def write_random_instances(
    directory: Path,
    count: int,
    num_vars: int,
    ratio: float = HARD_RATIO_3SAT,
    k: int = 3,
    seed: int = 0,
) -> list[Path]:
    """Write count random k-SAT DIMACS files named ``rand-<vars>-<i>.cnf``."""
    num_clauses = max(1, round(num_vars * ratio))
    paths = []
    for index in range(count):
        path = directory / f"rand-{num_vars}-{index:03d}.cnf"
        write_dimacs_file(random_formula(num_vars, num_clauses, k, seed + index), path)
        paths.append(path)
    logger.info(
        "Wrote %d random %d-SAT instances (%d vars, %d clauses) to %s",
        count,
        k,
        num_vars,
        num_clauses,
        directory,
    )
    return paths
