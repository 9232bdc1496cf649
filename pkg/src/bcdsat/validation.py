"""Correctness oracles: model checking, truth-table solving and RUP proof checking."""

from __future__ import annotations

import logging
from collections import defaultdict
from collections.abc import Mapping
from dataclasses import dataclass

import numpy as np

from .domain import Formula, Verdict, variable
from .exceptions import ModelError, OracleLimitError
from .simplify import UnitPropagator

logger = logging.getLogger(__name__)

MAX_ORACLE_VARS = 24
_CHUNK_BITS = 16


def check_model(formula: Formula, model: Mapping[int, bool]) -> bool:
    """Return True iff the model satisfies every clause and unit of formula.

    Variables missing from the model count as unassigned, so a clause whose
    only true literals are on missing variables is reported as unsatisfied.

    Raises:
        ModelError: If the model names a variable outside 1..num_vars.
    """
    for var in model:
        if not 1 <= var <= formula.num_vars:
            raise ModelError(
                f"Model assigns variable {var} outside 1..{formula.num_vars}"
            )
    if formula.unsat:
        return False

    def is_true(lit: int) -> bool:
        value = model.get(variable(lit))
        return value is not None and value == (lit > 0)

    if not all(is_true(lit) for lit in formula.units):
        return False
    for index, clause in enumerate(formula.clauses):
        if not any(is_true(lit) for lit in clause.literals):
            logger.debug("Clause %d is falsified by the model", index)
            return False
    return True


def find_model(formula: Formula) -> tuple[bool, ...] | None:
    """Enumerate the truth table and return the first model, if any.

    Raises:
        OracleLimitError: If the formula has more than 24 variables.
    """
    n = formula.num_vars
    if n > MAX_ORACLE_VARS:
        raise OracleLimitError(
            f"Brute force is limited to {MAX_ORACLE_VARS} variables, got {n}"
        )
    if formula.unsat or any(clause.is_empty for clause in formula.clauses):
        return None

    clause_lists = [(lit,) for lit in formula.units]
    clause_lists += [clause.literals for clause in formula.clauses]
    chunk = 1 << min(n, _CHUNK_BITS)
    shifts = np.arange(n, dtype=np.int64)
    for start in range(0, 1 << n, chunk):
        rows = np.arange(start, start + chunk, dtype=np.int64)
        table = ((rows[:, None] >> shifts) & 1).astype(bool)
        alive = np.ones(chunk, dtype=bool)
        for lits in clause_lists:
            satisfied = np.zeros(chunk, dtype=bool)
            for lit in lits:
                column = table[:, variable(lit) - 1]
                satisfied |= column if lit > 0 else ~column
            alive &= satisfied
            if not alive.any():
                break
        hits = np.flatnonzero(alive)
        if hits.size:
            return tuple(bool(bit) for bit in table[hits[0]])
    return None


def brute_force(formula: Formula) -> Verdict:
    """Ground-truth verdict by truth-table enumeration (at most 24 variables)."""
    return Verdict.SAT if find_model(formula) is not None else Verdict.UNSAT


@dataclass(frozen=True)
class ProofCheckResult:
    """Outcome of a forward RUP check.

    ``line`` is the 1-based proof line that failed, when there is one.
    """

    valid: bool
    line: int | None = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.valid


def _parse_proof_line(line: str, line_number: int) -> tuple[bool, tuple[int, ...]]:
    tokens = line.split()
    deletion = tokens[0] == "d"
    if deletion:
        tokens = tokens[1:]
    try:
        lits = [int(token) for token in tokens]
    except ValueError:
        raise ValueError(f"line {line_number}: non-integer token in proof") from None
    if not lits or lits[-1] != 0 or 0 in lits[:-1]:
        raise ValueError(f"line {line_number}: proof line must end with a single 0")
    return deletion, tuple(lits[:-1])


def check_proof(formula: Formula, proof: str) -> ProofCheckResult:
    """Forward-check a DRAT proof using reverse unit propagation only.

    Every learn line must make unit propagation on its negation conflict with
    the accumulated clauses. Delete lines remove one copy of a matching
    clause; deleting an absent clause is ignored. The proof is accepted once
    the empty clause is derived.
    """
    database = UnitPropagator()
    by_key: defaultdict[frozenset[int], list[int]] = defaultdict(list)

    def add(lits: tuple[int, ...]) -> None:
        by_key[frozenset(lits)].append(database.add(lits))

    for lit in formula.units:
        add((lit,))
    for clause in formula.clauses:
        add(clause.literals)
    if formula.unsat:
        add(())

    for line_number, raw_line in enumerate(proof.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("c"):
            continue
        try:
            deletion, lits = _parse_proof_line(line, line_number)
        except ValueError as e:
            return ProofCheckResult(valid=False, line=line_number, reason=str(e))
        if deletion:
            copies = by_key.get(frozenset(lits))
            if copies:
                database.remove(copies.pop())
            continue
        outcome = database.propagate(-lit for lit in lits)
        if not outcome.conflict:
            return ProofCheckResult(
                valid=False,
                line=line_number,
                reason=f"lemma {list(lits)} is not RUP",
            )
        if not lits:
            return ProofCheckResult(valid=True)
        add(lits)
    return ProofCheckResult(valid=False, reason="proof never derives the empty clause")
