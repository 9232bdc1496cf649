"""Conflict-driven clause learning search.

The engine is a minisat-style loop: two watched literals per clause, first-UIP
conflict analysis, EVSIDS decisions with phase saving, Luby restarts and
periodic reduction of the learnt clause database. Branching is delegated to a
decision hook so alternative policies can be plugged in without touching the
search loop.
"""

from __future__ import annotations

import logging
import time
from collections.abc import Callable, Iterable, Sequence
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from ..domain import Formula, Verdict
from ..exceptions import SolverInvariantError
from ..models import SolverOptions
from ..simplify import UnitPropagator
from .activity import VariableActivity, luby
from .proof import DratProof

logger = logging.getLogger(__name__)

DecisionHook = Callable[["CDCLSolver"], int | None]


class WatchedClause:
    """A clause attached to the watch lists.

    ``lits[0]`` and ``lits[1]`` are the watched literals. Once ``removed`` is
    set the clause is skipped and dropped lazily from the watch lists.
    """

    __slots__ = ("activity", "lbd", "learnt", "lits", "removed")

    def __init__(self, lits: list[int], learnt: bool = False, lbd: int = 0):
        self.lits = lits
        self.learnt = learnt
        self.lbd = lbd
        self.activity = 0.0
        self.removed = False

    def __repr__(self) -> str:
        kind = "learnt" if self.learnt else "original"
        return f"WatchedClause({self.lits!r}, {kind}, lbd={self.lbd})"


@dataclass
class SolveStats:
    """Counters collected during one run."""

    conflicts: int = 0
    decisions: int = 0
    propagations: int = 0
    restarts: int = 0
    reductions: int = 0
    deleted_learnts: int = 0
    wall_time: float = 0.0


@dataclass(frozen=True)
class SolveResult:
    """Verdict, model (index v-1 holds variable v) and statistics."""

    verdict: Verdict
    model: tuple[bool, ...] | None
    stats: SolveStats

    def model_literals(self) -> list[int]:
        if self.model is None:
            return []
        return [var if value else -var for var, value in enumerate(self.model, 1)]


class Analysis(NamedTuple):
    """Outcome of conflict analysis.

    ``learnt`` is empty when the conflict is at decision level 0. Otherwise
    ``learnt[0]`` is the asserting literal and, when there is more than one
    literal, ``learnt[1]`` sits at ``backtrack_level``.
    """

    learnt: tuple[int, ...]
    backtrack_level: int
    lbd: int = 0


class CDCLSolver:
    """Search state and operations for one formula.

    Values are stored per variable as +1 (true), -1 (false) or 0. The watch
    list of literal ``p`` holds the clauses that must be visited when ``p``
    becomes true, i.e. clauses watching ``-p``.
    """

    def __init__(
        self,
        formula: Formula,
        options: SolverOptions | None = None,
        proof: DratProof | None = None,
        decide: DecisionHook | None = None,
    ):
        self.options = options or SolverOptions()
        self.proof = proof
        self.decide: DecisionHook = decide or evsids_decision
        self.num_vars = n = formula.num_vars

        self.value = [0] * (n + 1)
        self.level = [0] * (n + 1)
        self.reason: list[WatchedClause | None] = [None] * (n + 1)
        self.phase = [False] * (n + 1)
        self._seen = [False] * (n + 1)
        self.trail: list[int] = []
        self.trail_lim: list[int] = []
        self.qhead = 0
        self.watches: dict[int, list[WatchedClause]] = {}
        for var in range(1, n + 1):
            self.watches[var] = []
            self.watches[-var] = []

        self.clauses: list[WatchedClause] = []
        self.learnts: list[WatchedClause] = []
        self.vsids = VariableActivity(
            n, self.options.var_decay, self.options.rescale_limit
        )
        self.cla_inc = 1.0
        self.stats = SolveStats()
        self.ok = not formula.unsat
        self.rng = np.random.default_rng(self.options.seed)
        self.decision_vars = sorted(formula.occurring_variables())

        self._root_units_logged: set[int] = set()
        self._simplified_trail_size = -1

        pending_units: list[int] = list(formula.units)
        for clause in formula.clauses:
            if clause.is_tautology:
                continue
            if clause.is_empty:
                self.ok = False
            elif len(clause) == 1:
                pending_units.append(clause.literals[0])
            else:
                self._attach(WatchedClause(list(clause.literals)))
        for lit in pending_units:
            current = self.lit_value(lit)
            if current < 0:
                self.ok = False
            elif current == 0:
                self.enqueue(lit, None)
        for var in self.decision_vars:
            self.vsids.insert(var)

    @property
    def activity(self) -> list[float]:
        return self.vsids.activity

    @property
    def decision_level(self) -> int:
        return len(self.trail_lim)

    def lit_value(self, lit: int) -> int:
        """Return +1, -1 or 0 for a literal under the current assignment."""
        value = self.value[abs(lit)]
        return value if lit > 0 else -value

    def root_decision_var(self) -> int | None:
        """Variable decided at level 1, if the search is below the root."""
        if not self.trail_lim:
            return None
        return abs(self.trail[self.trail_lim[0]])

    def polarity(self, var: int) -> int:
        """Literal for var following the saved phase."""
        return var if self.phase[var] else -var

    def pick_branch_var(self) -> int | None:
        """Highest-activity unassigned variable (random with random_var_freq)."""
        freq = self.options.random_var_freq
        if freq > 0 and self.decision_vars and self.rng.random() < freq:
            var = self.decision_vars[int(self.rng.integers(len(self.decision_vars)))]
            if self.value[var] == 0:
                return var
        return self.vsids.pop_max(lambda v: self.value[v] == 0)

    def bump_and_decay(self, variables: Iterable[int]) -> None:
        self.vsids.bump_and_decay(variables)

    def enqueue(self, lit: int, reason: WatchedClause | None) -> None:
        var = abs(lit)
        self.value[var] = 1 if lit > 0 else -1
        self.level[var] = len(self.trail_lim)
        self.reason[var] = reason
        self.trail.append(lit)

    def _attach(self, clause: WatchedClause) -> None:
        self.watches[-clause.lits[0]].append(clause)
        self.watches[-clause.lits[1]].append(clause)
        if clause.learnt:
            self.learnts.append(clause)
        else:
            self.clauses.append(clause)

    def propagate(self) -> WatchedClause | None:
        """Propagate the queued trail literals; return a conflicting clause."""
        value = self.value
        trail = self.trail
        watches = self.watches
        conflict: WatchedClause | None = None

        while self.qhead < len(trail) and conflict is None:
            p = trail[self.qhead]
            self.qhead += 1
            self.stats.propagations += 1
            false_lit = -p
            watchers = watches[p]
            kept: list[WatchedClause] = []
            i = 0
            count = len(watchers)
            while i < count:
                clause = watchers[i]
                i += 1
                if clause.removed:
                    continue
                lits = clause.lits
                if lits[0] == false_lit:
                    lits[0], lits[1] = lits[1], false_lit
                first = lits[0]
                first_value = value[abs(first)]
                if first < 0:
                    first_value = -first_value
                if first_value > 0:
                    kept.append(clause)
                    continue

                for k in range(2, len(lits)):
                    candidate = lits[k]
                    candidate_value = value[abs(candidate)]
                    if candidate < 0:
                        candidate_value = -candidate_value
                    if candidate_value >= 0:
                        lits[1], lits[k] = candidate, false_lit
                        watches[-candidate].append(clause)
                        break
                else:
                    kept.append(clause)
                    if first_value < 0:
                        conflict = clause
                        kept.extend(watchers[i:count])
                        self.qhead = len(trail)
                        break
                    self.enqueue(first, clause)
            # Clauses appended during this scan only ever land in other lists.
            watches[p] = kept
        return conflict

    def conflict_analyze(self, conflict: WatchedClause) -> Analysis:
        """Derive the first-UIP clause for a conflict and bump its variables."""
        if self.decision_level == 0:
            return Analysis((), 0)

        seen = self._seen
        level = self.level
        current = self.decision_level
        learnt: list[int] = [0]
        bumped: list[int] = []
        pending = 0
        p = 0
        index = len(self.trail) - 1
        clause: WatchedClause | None = conflict

        while True:
            if clause is None:
                raise SolverInvariantError("reached a decision without a UIP")
            if clause.learnt:
                self._bump_clause(clause)
            for q in clause.lits if p == 0 else clause.lits[1:]:
                var = abs(q)
                if seen[var] or level[var] == 0:
                    continue
                seen[var] = True
                bumped.append(var)
                if level[var] >= current:
                    pending += 1
                else:
                    learnt.append(q)
            while not seen[abs(self.trail[index])]:
                index -= 1
            p = self.trail[index]
            index -= 1
            var = abs(p)
            clause = self.reason[var]
            seen[var] = False
            pending -= 1
            if pending == 0:
                break

        learnt[0] = -p
        for lit in learnt[1:]:
            seen[abs(lit)] = False
        self.bump_and_decay(bumped)

        if len(learnt) == 1:
            backtrack_level = 0
        else:
            best = max(range(1, len(learnt)), key=lambda k: level[abs(learnt[k])])
            learnt[1], learnt[best] = learnt[best], learnt[1]
            backtrack_level = level[abs(learnt[1])]
        lbd = len({level[abs(lit)] for lit in learnt})
        return Analysis(tuple(learnt), backtrack_level, lbd)

    def backtrack(self, target_level: int) -> None:
        """Undo assignments above target_level, saving their phases."""
        if self.decision_level <= target_level:
            return
        start = self.trail_lim[target_level]
        for lit in reversed(self.trail[start:]):
            var = abs(lit)
            self.phase[var] = lit > 0
            self.value[var] = 0
            self.reason[var] = None
            self.vsids.insert(var)
        del self.trail[start:]
        del self.trail_lim[target_level:]
        self.qhead = len(self.trail)

    def new_decision(self, lit: int) -> None:
        self.trail_lim.append(len(self.trail))
        self.enqueue(lit, None)

    def learn(self, analysis: Analysis) -> None:
        """Record a learnt clause after backtracking and assert its first literal."""
        lits = analysis.learnt
        if self.options.debug_checks:
            self.check_rup(lits)
        if self.proof is not None:
            self.proof.learn(lits)
        if len(lits) == 1:
            self._root_units_logged.add(lits[0])
            self.enqueue(lits[0], None)
            return
        clause = WatchedClause(list(lits), learnt=True, lbd=analysis.lbd)
        self._attach(clause)
        self._bump_clause(clause)
        self.enqueue(lits[0], clause)

    def _bump_clause(self, clause: WatchedClause) -> None:
        clause.activity += self.cla_inc
        if clause.activity > 1e20:
            for learnt in self.learnts:
                learnt.activity *= 1e-20
            self.cla_inc *= 1e-20

    def _decay_clauses(self) -> None:
        self.cla_inc /= self.options.clause_decay

    def _locked(self, clause: WatchedClause) -> bool:
        first = clause.lits[0]
        return self.reason[abs(first)] is clause and self.lit_value(first) > 0

    def reduce_db(self) -> None:
        """Delete the worse half of the learnt clauses.

        Clauses rank by LBD ascending then activity descending. Clauses that
        are the reason of a current assignment or have LBD <= 2 are kept.
        """
        ranked = sorted(self.learnts, key=lambda c: (c.lbd, -c.activity))
        deleted = 0
        for clause in ranked[len(ranked) // 2 :]:
            if clause.lbd <= 2 or self._locked(clause):
                continue
            self._remove(clause)
            deleted += 1
        self.learnts = [c for c in self.learnts if not c.removed]
        self.stats.reductions += 1
        self.stats.deleted_learnts += deleted
        logger.debug(
            "Reduced learnt database: deleted %d, kept %d", deleted, len(self.learnts)
        )

    def _remove(self, clause: WatchedClause) -> None:
        clause.removed = True
        if self.proof is not None:
            self.proof.delete(clause.lits)

    def simplify_db(self) -> None:
        """Remove clauses satisfied at the root after new root assignments."""
        if self.decision_level != 0 or len(self.trail) == self._simplified_trail_size:
            return
        if self.proof is not None:
            for lit in self.trail:
                if lit not in self._root_units_logged:
                    self.proof.learn((lit,))
                    self._root_units_logged.add(lit)
        for database in (self.clauses, self.learnts):
            for clause in database:
                if any(self.lit_value(lit) > 0 for lit in clause.lits):
                    self._remove(clause)
        self.clauses = [c for c in self.clauses if not c.removed]
        self.learnts = [c for c in self.learnts if not c.removed]
        self._simplified_trail_size = len(self.trail)

    def check_watches(self) -> None:
        """Raise if a clause is watched wrongly after complete propagation."""
        for clause in (*self.clauses, *self.learnts):
            if clause.removed:
                continue
            lits = clause.lits
            for watched in lits[:2]:
                if not any(w is clause for w in self.watches[-watched]):
                    raise SolverInvariantError(f"{clause!r} missing from watch list")
            watched_false = any(self.lit_value(lit) < 0 for lit in lits[:2])
            if watched_false and not any(self.lit_value(lit) > 0 for lit in lits):
                raise SolverInvariantError(f"{clause!r} has a false watch")

    def check_rup(self, lits: Sequence[int]) -> None:
        """Raise unless lits follow by unit propagation from the database."""
        database = UnitPropagator(
            c.lits for c in (*self.clauses, *self.learnts) if not c.removed
        )
        root = self.trail[: self.trail_lim[0]] if self.trail_lim else self.trail
        for lit in root:
            database.add((lit,))
        outcome = database.propagate([-lit for lit in lits])
        if not outcome.conflict:
            raise SolverInvariantError(f"learnt clause {list(lits)} is not RUP")

    def model(self) -> tuple[bool, ...]:
        return tuple(self.value[var] > 0 for var in range(1, self.num_vars + 1))

    def _out_of_time(self, started: float) -> bool:
        limit = self.options.time_limit
        return limit is not None and time.perf_counter() - started >= limit

    def solve(self) -> SolveResult:
        """Run the search until a verdict or a budget is reached."""
        started = time.perf_counter()
        options = self.options
        verdict = self._search(started, options)
        self.stats.wall_time = time.perf_counter() - started
        model = self.model() if verdict is Verdict.SAT else None
        logger.debug(
            "Search finished: %s after %d conflicts, %d decisions",
            verdict,
            self.stats.conflicts,
            self.stats.decisions,
        )
        return SolveResult(verdict=verdict, model=model, stats=self.stats)

    def _search(self, started: float, options: SolverOptions) -> Verdict:
        if not self.ok:
            self._conclude_unsat()
            return Verdict.UNSAT

        restart_limit = luby(2, 0) * options.luby_unit
        conflicts_since_restart = 0
        next_reduce = options.first_reduce
        reduce_interval = options.first_reduce

        while True:
            conflict = self.propagate()
            if conflict is not None:
                self.stats.conflicts += 1
                conflicts_since_restart += 1
                if self.decision_level == 0:
                    self._conclude_unsat()
                    return Verdict.UNSAT
                analysis = self.conflict_analyze(conflict)
                self.backtrack(analysis.backtrack_level)
                self.learn(analysis)
                self._decay_clauses()

                conflicts = self.stats.conflicts
                if options.max_conflicts is not None and (
                    conflicts >= options.max_conflicts
                ):
                    return Verdict.UNKNOWN
                if conflicts % options.time_check_interval == 0 and self._out_of_time(
                    started
                ):
                    return Verdict.UNKNOWN
                continue

            if options.debug_checks:
                self.check_watches()
            if self.decision_level == 0:
                self.simplify_db()

            if conflicts_since_restart >= restart_limit:
                self.backtrack(0)
                self.stats.restarts += 1
                conflicts_since_restart = 0
                restart_limit = luby(2, self.stats.restarts) * options.luby_unit
                logger.debug(
                    "Restart %d after %d conflicts; next after %d more",
                    self.stats.restarts,
                    self.stats.conflicts,
                    restart_limit,
                )
                continue

            if self.stats.conflicts >= next_reduce:
                reduce_interval += options.reduce_increment
                next_reduce = self.stats.conflicts + reduce_interval
                self.reduce_db()

            lit = self.decide(self)
            if lit is None:
                return Verdict.SAT
            self.stats.decisions += 1
            self.new_decision(lit)

    def _conclude_unsat(self) -> None:
        if self.proof is not None:
            self.proof.conclude_unsat()


def evsids_decision(solver: CDCLSolver) -> int | None:
    """Default decision hook: EVSIDS variable, saved phase."""
    var = solver.pick_branch_var()
    return None if var is None else solver.polarity(var)


def solve(
    formula: Formula,
    decide: DecisionHook | None = None,
    options: SolverOptions | None = None,
    proof: DratProof | None = None,
) -> SolveResult:
    """Solve formula with an optional decision hook and DRAT proof sink."""
    return CDCLSolver(formula, options=options, proof=proof, decide=decide).solve()
