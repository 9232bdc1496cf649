"""Option objects and fixed output layouts for the solver and harness.

Heuristic constants (EVSIDS decay, Luby unit, reduction schedule) live on
``SolverOptions`` so tests and the CLI can override them per run. Output
column orders are fixed here so the bench CSV and cactus CSV stay loss-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .config import DEFAULT_DECOMPOSE_BUDGET
from .domain import BranchMode


@dataclass(frozen=True)
class SolverOptions:
    """Tuning knobs and budgets for one CDCL run."""

    var_decay: float = 0.95
    clause_decay: float = 0.999
    rescale_limit: float = 1e100
    luby_unit: int = 100
    first_reduce: int = 2000
    reduce_increment: int = 300
    random_var_freq: float = 0.0
    seed: int = 0
    max_conflicts: int | None = None
    time_limit: float | None = None
    time_check_interval: int = 1024
    debug_checks: bool = False


@dataclass(frozen=True)
class RunOptions:
    """Per-instance pipeline options: mode, theta override and budgets.

    ``theta`` is either None (use the mode table), an integer, or ``"auto"``
    for the large/small rule of thumb.
    """

    mode: BranchMode = BranchMode.NONE
    theta: int | str | None = None
    timeout: float | None = None
    decompose_budget: float = DEFAULT_DECOMPOSE_BUDGET
    proof_path: Path | None = None
    seed: int = 0
    debug_checks: bool = False


# Fraction of the timeout a run may overshoot before its verdict is dropped.
TIMEOUT_GRACE = 0.05

# Bench CSV column order (one row per instance and mode)
BENCH_COLUMNS = [
    "instance",
    "mode",
    "verdict",
    "time_s",
    "conflicts",
    "decisions",
    "quality",
    "theta",
]

# Cactus CSV column order (long format, one row per solved instance)
CACTUS_COLUMNS = ["mode", "solved", "time_s"]
