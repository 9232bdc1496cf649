"""Domain models for CNF formulas, verdicts and benchmark records."""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Iterator
from dataclasses import dataclass, field
from enum import StrEnum

from pydantic import BaseModel, ConfigDict, Field, field_validator


def negate(lit: int) -> int:
    """Return the complementary literal."""
    return -lit


def variable(lit: int) -> int:
    """Return the variable index of a literal."""
    return lit if lit > 0 else -lit


class Verdict(StrEnum):
    """Outcome of a solver run or an oracle query."""

    SAT = "SAT"
    UNSAT = "UNSAT"
    UNKNOWN = "UNKNOWN"

    @property
    def exit_code(self) -> int:
        """Return the SAT-competition exit code for this verdict."""
        return {Verdict.SAT: 10, Verdict.UNSAT: 20, Verdict.UNKNOWN: 0}[self]

    @property
    def status_line(self) -> str:
        """Return the ``s`` line printed by the solver."""
        return {
            Verdict.SAT: "s SATISFIABLE",
            Verdict.UNSAT: "s UNSATISFIABLE",
            Verdict.UNKNOWN: "s UNKNOWN",
        }[self]


class BranchMode(StrEnum):
    """Branching modes: plain EVSIDS or one of the BCD theta tables."""

    NONE = "none"
    BCD1 = "bcd1"
    BCD2 = "bcd2"
    BCD3 = "bcd3"


@dataclass(frozen=True, slots=True)
class Clause:
    """A disjunction of integer-encoded literals.

    Literals keep their first-seen order; duplicates are dropped by
    ``from_literals``. ``lbd`` is only meaningful for learnt clauses.
    """

    literals: tuple[int, ...]
    learnt: bool = False
    lbd: int = 0

    @classmethod
    def from_literals(
        cls, literals: Iterable[int], *, learnt: bool = False, lbd: int = 0
    ) -> Clause:
        """Build a normalized clause (duplicate literals removed).

        Raises:
            ValueError: If a literal is 0 or lbd is negative.
        """
        normalized = tuple(dict.fromkeys(literals))
        if 0 in normalized:
            raise ValueError("0 is not a literal")
        if lbd < 0:
            raise ValueError("lbd must be non-negative")
        return cls(normalized, learnt=learnt, lbd=lbd)

    @property
    def is_tautology(self) -> bool:
        """Return True when the clause contains a literal and its negation."""
        lits = set(self.literals)
        return any(-lit in lits for lit in lits)

    @property
    def is_empty(self) -> bool:
        return not self.literals

    @property
    def variables(self) -> frozenset[int]:
        return frozenset(variable(lit) for lit in self.literals)

    @property
    def key(self) -> frozenset[int]:
        """Order-insensitive identity used for duplicate detection."""
        return frozenset(self.literals)

    def __len__(self) -> int:
        return len(self.literals)

    def __iter__(self) -> Iterator[int]:
        return iter(self.literals)

    def __contains__(self, lit: object) -> bool:
        return lit in self.literals


@dataclass(frozen=True, slots=True)
class Formula:
    """A CNF formula: clause database plus literals fixed at the root.

    ``units`` is filled by root simplification; a parsed formula keeps its unit
    clauses as ordinary clauses. ``unsat`` marks a formula where the empty
    clause has already been derived.
    """

    num_vars: int
    clauses: tuple[Clause, ...] = ()
    units: tuple[int, ...] = ()
    unsat: bool = False
    _tautologies: tuple[int, ...] = field(
        default=(), init=False, repr=False, compare=False
    )

    def __post_init__(self) -> None:
        if self.num_vars < 0:
            raise ValueError("num_vars must be non-negative")
        for lit in self.units:
            if not 1 <= variable(lit) <= self.num_vars:
                raise ValueError(f"unit literal {lit} outside 1..{self.num_vars}")
        tautologies = []
        for index, clause in enumerate(self.clauses):
            for lit in clause.literals:
                if not 1 <= variable(lit) <= self.num_vars:
                    raise ValueError(
                        f"literal {lit} in clause {index} outside 1..{self.num_vars}"
                    )
            if clause.is_tautology:
                tautologies.append(index)
        object.__setattr__(self, "_tautologies", tuple(tautologies))

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    @property
    def tautologies(self) -> tuple[int, ...]:
        """Indices of clauses flagged as tautologies."""
        return self._tautologies

    def clause_multiset(self) -> Counter[frozenset[int]]:
        """Return the clauses as an order-insensitive multiset."""
        return Counter(clause.key for clause in self.clauses)

    def occurring_variables(self) -> set[int]:
        """Return the variables that appear in some clause or unit."""
        seen = {variable(lit) for lit in self.units}
        for clause in self.clauses:
            seen.update(variable(lit) for lit in clause.literals)
        return seen

    @classmethod
    def from_lists(
        cls, clauses: Iterable[Iterable[int]], num_vars: int | None = None
    ) -> Formula:
        """Build a formula from plain literal lists, inferring num_vars."""
        built = tuple(Clause.from_literals(lits) for lits in clauses)
        if num_vars is None:
            num_vars = max(
                (variable(lit) for clause in built for lit in clause.literals),
                default=0,
            )
        return cls(num_vars=num_vars, clauses=built)


class RunRecord(BaseModel):
    """One (instance, mode) row of a benchmark run."""

    model_config = ConfigDict(frozen=True)

    instance: str = Field(description="Instance file name")
    mode: BranchMode = Field(description="Branching mode used for the run")
    verdict: Verdict = Field(description="SAT, UNSAT or UNKNOWN")
    time_s: float = Field(ge=0.0, description="Wall time in seconds")
    conflicts: int = Field(default=0, ge=0)
    decisions: int = Field(default=0, ge=0)
    quality: float | None = Field(
        default=None, ge=0.0, le=1.0, description="Decomposition quality |L|/|F|"
    )
    theta: int = Field(default=0, ge=0, description="Resolved conflict budget")

    @field_validator("quality", mode="before")
    @classmethod
    def blank_quality(cls, v: object) -> object:
        """Treat blank or NaN CSV cells as missing quality."""
        if v is None or v == "":
            return None
        if isinstance(v, float) and v != v:
            return None
        return v

    @property
    def solved(self) -> bool:
        return self.verdict is not Verdict.UNKNOWN

    def to_row(self) -> dict[str, object]:
        """Convert this record to a CSV row keyed by the bench column names."""
        return {
            "instance": self.instance,
            "mode": self.mode.value,
            "verdict": self.verdict.value,
            "time_s": self.time_s,
            "conflicts": self.conflicts,
            "decisions": self.decisions,
            "quality": "" if self.quality is None else self.quality,
            "theta": self.theta,
        }
