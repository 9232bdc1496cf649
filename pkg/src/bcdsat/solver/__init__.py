"""CDCL engine: search loop, branching scores and proof logging."""

from __future__ import annotations

from .activity import VariableActivity, luby
from .engine import (
    Analysis,
    CDCLSolver,
    DecisionHook,
    SolveResult,
    SolveStats,
    WatchedClause,
    evsids_decision,
    solve,
)
from .proof import DratProof, ProofEvent, emit_drat, format_drat

__all__ = [
    "Analysis",
    "CDCLSolver",
    "DecisionHook",
    "DratProof",
    "ProofEvent",
    "SolveResult",
    "SolveStats",
    "VariableActivity",
    "WatchedClause",
    "emit_drat",
    "evsids_decision",
    "format_drat",
    "luby",
    "solve",
]
