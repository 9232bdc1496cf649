"""Environment-driven defaults shared by the CLI and the benchmark runner."""

from __future__ import annotations

import os
import warnings
from collections.abc import Mapping

BASE_DEFAULT_DECOMPOSE_BUDGET = 200.0
BASE_DEFAULT_BENCH_WORKERS = 1
DECOMPOSE_BUDGET_ENV_VAR = "BCDSAT_DECOMPOSE_BUDGET"
BENCH_WORKERS_ENV_VAR = "BCDSAT_BENCH_WORKERS"


def get_default_decompose_budget(environ: Mapping[str, str] | None = None) -> float:
    """Return the configured decomposition time budget in seconds.

    Reads ``BCDSAT_DECOMPOSE_BUDGET`` when present. Invalid or non-positive
    values fall back to the built-in default and emit a warning rather than
    breaking import-time initialization.
    """
    env = os.environ if environ is None else environ
    raw_value = env.get(DECOMPOSE_BUDGET_ENV_VAR)
    if raw_value is None or not raw_value.strip():
        return BASE_DEFAULT_DECOMPOSE_BUDGET

    try:
        budget = float(raw_value)
    except ValueError:
        warnings.warn(
            f"Ignoring invalid {DECOMPOSE_BUDGET_ENV_VAR} value {raw_value!r}; "
            f"using {BASE_DEFAULT_DECOMPOSE_BUDGET:.1f}.",
            stacklevel=2,
        )
        return BASE_DEFAULT_DECOMPOSE_BUDGET

    if budget <= 0.0:
        warnings.warn(
            f"Ignoring non-positive {DECOMPOSE_BUDGET_ENV_VAR} value {raw_value!r}; "
            f"using {BASE_DEFAULT_DECOMPOSE_BUDGET:.1f}.",
            stacklevel=2,
        )
        return BASE_DEFAULT_DECOMPOSE_BUDGET

    return budget


def get_default_bench_workers(environ: Mapping[str, str] | None = None) -> int:
    """Return the configured number of benchmark worker processes.

    Reads ``BCDSAT_BENCH_WORKERS`` when present. Accepts any positive integer;
    invalid values fall back to the built-in default and emit a warning.
    """
    env = os.environ if environ is None else environ
    raw_value = env.get(BENCH_WORKERS_ENV_VAR)
    if raw_value is None or not raw_value.strip():
        return BASE_DEFAULT_BENCH_WORKERS

    try:
        workers = int(raw_value.strip())
    except ValueError:
        warnings.warn(
            f"Ignoring invalid {BENCH_WORKERS_ENV_VAR} value {raw_value!r}; "
            f"using {BASE_DEFAULT_BENCH_WORKERS}.",
            stacklevel=2,
        )
        return BASE_DEFAULT_BENCH_WORKERS

    if workers < 1:
        warnings.warn(
            f"Ignoring out-of-range {BENCH_WORKERS_ENV_VAR} value {raw_value!r}; "
            f"using {BASE_DEFAULT_BENCH_WORKERS}.",
            stacklevel=2,
        )
        return BASE_DEFAULT_BENCH_WORKERS

    return workers


DEFAULT_DECOMPOSE_BUDGET = get_default_decompose_budget()
DEFAULT_BENCH_WORKERS = get_default_bench_workers()
