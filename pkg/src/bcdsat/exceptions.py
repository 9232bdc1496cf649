"""Custom exceptions for the BCD SAT solver."""

from __future__ import annotations


class BcdSatError(Exception):
    """Base exception for bcd-sat errors."""

    pass


class DimacsParseError(BcdSatError, ValueError):
    """Raised when DIMACS CNF input is malformed."""

    def __init__(self, message: str, line_number: int):
        super().__init__(f"line {line_number}: {message}")
        self.line_number = line_number


class ContractError(BcdSatError, ValueError):
    """Raised when an operation is called outside its precondition."""

    pass


class ConfigurationError(BcdSatError):
    """Raised when solver or policy configuration is invalid."""

    pass


class ProofWriteError(BcdSatError, OSError):
    """Raised when the DRAT proof sink cannot be written."""

    pass


class ModelError(BcdSatError, ValueError):
    """Raised when a model file is malformed or names an unknown variable."""

    pass


class OracleLimitError(BcdSatError):
    """Raised when a brute-force oracle is asked for too large an instance."""

    pass


class SolverInvariantError(BcdSatError, RuntimeError):
    """Raised by debug checks when an engine invariant does not hold."""

    pass
