"""bcd-sat - A CDCL SAT solver with blocked-clause-decomposition-guided branching."""

from .cli import main
from .decomposition import BlockedDecomposition, decompose
from .domain import BranchMode, Clause, Formula, RunRecord, Verdict
from .io import parse_dimacs, read_dimacs, write_dimacs
from .models import RunOptions, SolverOptions
from .policy import ModeConfig, attach_policy, resolve_theta
from .runner import InstanceOutcome, solve_instance
from .simplify import simplify_root
from .solver import CDCLSolver, SolveResult, solve

__version__ = "0.1.0"
__all__ = [
    "BlockedDecomposition",
    "BranchMode",
    "CDCLSolver",
    "Clause",
    "Formula",
    "InstanceOutcome",
    "ModeConfig",
    "RunOptions",
    "RunRecord",
    "SolveResult",
    "SolverOptions",
    "Verdict",
    "attach_policy",
    "decompose",
    "main",
    "parse_dimacs",
    "read_dimacs",
    "resolve_theta",
    "simplify_root",
    "solve",
    "solve_instance",
    "write_dimacs",
]
