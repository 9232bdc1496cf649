"""Textual DRAT proof logging."""

from __future__ import annotations

from collections.abc import Sequence
from enum import StrEnum
from typing import TextIO

from ..exceptions import ProofWriteError


class ProofEvent(StrEnum):
    """Kinds of DRAT proof lines."""

    LEARN = "learn"
    DELETE = "delete"


def format_drat(event: ProofEvent, literals: Sequence[int]) -> str:
    """Return one DRAT line (without newline) for a learn or delete event."""
    body = " ".join([*map(str, literals), "0"])
    return f"d {body}" if event is ProofEvent.DELETE else body


def emit_drat(event: ProofEvent, literals: Sequence[int], sink: TextIO) -> None:
    """Write one DRAT line to sink.

    Raises:
        ProofWriteError: If the sink cannot be written.
    """
    try:
        sink.write(format_drat(event, literals) + "\n")
    except (OSError, ValueError) as e:
        raise ProofWriteError(f"Cannot write DRAT proof: {e}") from e


class DratProof:
    """DRAT proof stream owned by one solver run."""

    def __init__(self, sink: TextIO):
        self.sink = sink
        self.lines = 0

    def learn(self, literals: Sequence[int]) -> None:
        emit_drat(ProofEvent.LEARN, literals, self.sink)
        self.lines += 1

    def delete(self, literals: Sequence[int]) -> None:
        emit_drat(ProofEvent.DELETE, literals, self.sink)
        self.lines += 1

    def conclude_unsat(self) -> None:
        """Log the empty clause that ends an UNSAT proof."""
        self.learn(())
