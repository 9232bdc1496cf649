"""DIMACS CNF reading and writing plus solver model I/O.

Parsing is lenient in the ways real benchmark files need: a header whose
clause count disagrees with the body only warns, literals beyond the declared
variable count grow ``num_vars`` with a warning, and a SATLIB-style ``%`` line
ends the input.
"""

from __future__ import annotations

import logging
import re
from collections.abc import Iterable, Mapping
from pathlib import Path

from .domain import Clause, Formula, variable
from .exceptions import DimacsParseError, ModelError

logger = logging.getLogger(__name__)
_HEADER_PATTERN = re.compile(r"^p\s+cnf\s+(\d+)\s+(\d+)\s*$")
_MODEL_LINE_WIDTH = 20


def parse_dimacs(text: bytes | str) -> Formula:
    """Parse DIMACS CNF text into a Formula.

    Clauses are split on ``0`` regardless of line breaks. Tautologies are kept
    and flagged (see ``Formula.tautologies``); duplicate literals inside a
    clause are dropped.

    Args:
        text: Raw DIMACS content as bytes or str.

    Returns:
        Formula with the declared variable count (grown if a literal exceeds
        it).

    Raises:
        DimacsParseError: On a malformed or missing header, a non-integer
            literal token, or a final clause without its terminating 0.
    """
    if isinstance(text, bytes):
        text = text.decode("utf-8", errors="replace")

    declared: tuple[int, int] | None = None
    clauses: list[Clause] = []
    current: list[int] = []
    max_var = 0
    last_line = 0

    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("%"):
            break
        last_line = line_number
        if line.startswith("p"):
            if declared is not None:
                raise DimacsParseError("duplicate problem header", line_number)
            match = _HEADER_PATTERN.match(line)
            if match is None:
                raise DimacsParseError(f"malformed header {line!r}", line_number)
            declared = (int(match.group(1)), int(match.group(2)))
            continue
        if declared is None:
            raise DimacsParseError("clause data before 'p cnf' header", line_number)
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise DimacsParseError(
                    f"literal token {token!r} is not an integer", line_number
                ) from None
            if lit == 0:
                clauses.append(Clause.from_literals(current))
                current = []
            else:
                current.append(lit)
                max_var = max(max_var, variable(lit))

    if current:
        raise DimacsParseError("last clause is missing its terminating 0", last_line)
    if declared is None:
        raise DimacsParseError("missing 'p cnf' header", max(last_line, 1))

    num_vars, num_clauses = declared
    if max_var > num_vars:
        logger.warning(
            "Header declares %d variables but literals reach %d; growing",
            num_vars,
            max_var,
        )
        num_vars = max_var
    if num_clauses != len(clauses):
        logger.warning(
            "Header declares %d clauses but %d were read", num_clauses, len(clauses)
        )

    formula = Formula(num_vars=num_vars, clauses=tuple(clauses))
    if formula.tautologies:
        logger.debug("Input contains %d tautological clauses", len(formula.tautologies))
    return formula


def read_dimacs(file_path: str | Path) -> Formula:
    """Read and parse a DIMACS CNF file.

    Raises:
        FileNotFoundError: If the file does not exist.
        DimacsParseError: If the content is malformed.
    """
    file_path = Path(file_path)
    if not file_path.exists():
        raise FileNotFoundError(f"Input file not found: {file_path}")
    logger.debug("Reading DIMACS file: %s", file_path)
    return parse_dimacs(file_path.read_bytes())


def write_dimacs(formula: Formula) -> bytes:
    """Serialize a Formula to DIMACS CNF bytes.

    Root units are written as unit clauses ahead of the clause database, and a
    formula already marked UNSAT gets an explicit empty clause, so the output
    is equisatisfiable with the input in every case.
    """
    body: list[str] = [f"{lit} 0" for lit in formula.units]
    body.extend(
        " ".join([*map(str, clause.literals), "0"]) for clause in formula.clauses
    )
    if formula.unsat:
        body.append("0")
    lines = [f"p cnf {formula.num_vars} {len(body)}", *body]
    return ("\n".join(lines) + "\n").encode("ascii")


def write_dimacs_file(formula: Formula, file_path: str | Path) -> None:
    """Write a Formula to a DIMACS file, creating parent directories."""
    file_path = Path(file_path)
    file_path.parent.mkdir(parents=True, exist_ok=True)
    file_path.write_bytes(write_dimacs(formula))
    logger.debug("Wrote DIMACS file: %s", file_path)


def format_model_lines(model: Iterable[bool]) -> list[str]:
    """Format a model as DIMACS ``v`` lines terminated by 0."""
    literals = [
        str(index if value else -index) for index, value in enumerate(model, start=1)
    ]
    literals.append("0")
    return [
        "v " + " ".join(literals[start : start + _MODEL_LINE_WIDTH])
        for start in range(0, len(literals), _MODEL_LINE_WIDTH)
    ]


def parse_model(text: str) -> dict[int, bool]:
    """Parse a model from ``v`` lines or from bare literal lines.

    Lines starting with ``c`` or ``s`` are skipped, so full solver output can
    be passed straight through. Parsing stops at the first 0.

    Raises:
        ModelError: On a non-integer token or a variable assigned twice with
            different values.
    """
    model: dict[int, bool] = {}
    for line_number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line[0] in "cs":
            continue
        tokens = line[1:].split() if line.startswith("v") else line.split()
        for token in tokens:
            try:
                lit = int(token)
            except ValueError:
                raise ModelError(
                    f"line {line_number}: model token {token!r} is not an integer"
                ) from None
            if lit == 0:
                return model
            var = variable(lit)
            if model.get(var, lit > 0) != (lit > 0):
                raise ModelError(
                    f"line {line_number}: variable {var} assigned both ways"
                )
            model[var] = lit > 0
    return model


def model_to_mapping(model: Iterable[bool]) -> Mapping[int, bool]:
    """Index a positional model by variable number."""
    return {index: value for index, value in enumerate(model, start=1)}
