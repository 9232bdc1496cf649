"""Tests for DRAT proof formatting and the proof stream."""

from __future__ import annotations

import io

import pytest

from bcdsat.exceptions import ProofWriteError
from bcdsat.solver import DratProof, ProofEvent, emit_drat, format_drat


@pytest.mark.parametrize(
    ("event", "literals", "expected"),
    [
        (ProofEvent.LEARN, [1, -2], "1 -2 0"),
        (ProofEvent.DELETE, [1, 2], "d 1 2 0"),
        (ProofEvent.LEARN, [-1], "-1 0"),
        (ProofEvent.LEARN, [], "0"),
    ],
)
def test_format_drat(event, literals, expected):
    assert format_drat(event, literals) == expected


def test_proof_stream_writes_lines_in_order():
    sink = io.StringIO()
    proof = DratProof(sink)

    proof.learn([1, -2])
    proof.delete([1, -2])
    proof.conclude_unsat()

    assert sink.getvalue() == "1 -2 0\nd 1 -2 0\n0\n"
    assert proof.lines == 3


def test_closed_sink_raises_proof_write_error():
    sink = io.StringIO()
    sink.close()

    with pytest.raises(ProofWriteError, match="Cannot write DRAT proof"):
        emit_drat(ProofEvent.LEARN, [1], sink)


def test_proof_write_error_is_an_os_error():
    sink = io.StringIO()
    sink.close()

    with pytest.raises(OSError):
        DratProof(sink).learn([1])
