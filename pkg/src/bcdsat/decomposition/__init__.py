"""Blocked clause elimination and blocked clause decomposition."""

from .blocked import (
    BceResult,
    EliminationStep,
    OccurrenceIndex,
    bce_fixpoint,
    is_blocked,
    resolvent,
)
from .decompose import (
    BlockedDecomposition,
    decompose,
    improve_decomposition,
    pure_decompose,
    verify_decomposition,
)

__all__ = [
    "BceResult",
    "BlockedDecomposition",
    "EliminationStep",
    "OccurrenceIndex",
    "bce_fixpoint",
    "decompose",
    "improve_decomposition",
    "is_blocked",
    "pure_decompose",
    "resolvent",
    "verify_decomposition",
]
