"""Tests for environment-driven defaults."""

from __future__ import annotations

import pytest

from bcdsat.config import (
    BASE_DEFAULT_BENCH_WORKERS,
    BASE_DEFAULT_DECOMPOSE_BUDGET,
    BENCH_WORKERS_ENV_VAR,
    DECOMPOSE_BUDGET_ENV_VAR,
    get_default_bench_workers,
    get_default_decompose_budget,
)


def test_decompose_budget_defaults_when_unset():
    assert get_default_decompose_budget({}) == BASE_DEFAULT_DECOMPOSE_BUDGET


def test_decompose_budget_reads_environment():
    assert get_default_decompose_budget({DECOMPOSE_BUDGET_ENV_VAR: "12.5"}) == 12.5


@pytest.mark.parametrize("raw", ["soon", "0", "-3"])
def test_bad_decompose_budget_warns(raw):
    with pytest.warns(UserWarning, match=DECOMPOSE_BUDGET_ENV_VAR):
        budget = get_default_decompose_budget({DECOMPOSE_BUDGET_ENV_VAR: raw})

    assert budget == BASE_DEFAULT_DECOMPOSE_BUDGET


def test_bench_workers_reads_environment():
    assert get_default_bench_workers({BENCH_WORKERS_ENV_VAR: " 4 "}) == 4


def test_blank_bench_workers_uses_default():
    assert get_default_bench_workers({BENCH_WORKERS_ENV_VAR: "  "}) == (
        BASE_DEFAULT_BENCH_WORKERS
    )


@pytest.mark.parametrize("raw", ["many", "0"])
def test_bad_bench_workers_warns(raw):
    with pytest.warns(UserWarning, match=BENCH_WORKERS_ENV_VAR):
        workers = get_default_bench_workers({BENCH_WORKERS_ENV_VAR: raw})

    assert workers == BASE_DEFAULT_BENCH_WORKERS
