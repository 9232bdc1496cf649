"""Benchmark runner: every instance under every mode, CSV rows and cactus data."""

from __future__ import annotations

import logging
import time
from collections import defaultdict
from collections.abc import Iterable, Sequence
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, replace
from pathlib import Path

import pandas as pd
from rich.console import Console
from rich.progress import (
    BarColumn,
    Progress,
    SpinnerColumn,
    TextColumn,
    TimeElapsedColumn,
)

from .config import DEFAULT_BENCH_WORKERS
from .domain import BranchMode, RunRecord, Verdict
from .models import BENCH_COLUMNS, CACTUS_COLUMNS, TIMEOUT_GRACE, RunOptions
from .runner import solve_file

logger = logging.getLogger(__name__)

CactusSeries = dict[BranchMode, tuple[float, ...]]

INSTANCE_PATTERNS = ("*.cnf", "*.dimacs")


@dataclass(frozen=True)
class BenchResult:
    """Records of a benchmark run with the derived cactus series."""

    records: tuple[RunRecord, ...]
    cactus: CactusSeries

    @property
    def contradictions(self) -> list[str]:
        return find_contradictions(self.records)


def discover_instances(directory: Path) -> list[Path]:
    """Return the DIMACS files directly inside directory, sorted by name.

    Raises:
        FileNotFoundError: If directory does not exist.
    """
    if not directory.is_dir():
        raise FileNotFoundError(f"Benchmark directory not found: {directory}")
    found = {path for pattern in INSTANCE_PATTERNS for path in directory.glob(pattern)}
    return sorted(found, key=lambda path: path.name)


def run_one(path: Path, mode: BranchMode, options: RunOptions) -> RunRecord:
    """Solve one instance under one mode; failures become UNKNOWN records."""
    started = time.perf_counter()
    try:
        outcome = solve_file(path, replace(options, mode=mode, proof_path=None))
    except Exception:
        logger.exception("Failed solving %s under mode %s", path.name, mode)
        return RunRecord(
            instance=path.name,
            mode=mode,
            verdict=Verdict.UNKNOWN,
            time_s=time.perf_counter() - started,
        )
    return outcome.to_record(path.name)


def _sort_key(record: RunRecord) -> tuple[str, int]:
    return record.instance, list(BranchMode).index(record.mode)


def bench_run(
    directory: Path,
    modes: Sequence[BranchMode],
    timeout: float | None,
    workers: int = DEFAULT_BENCH_WORKERS,
    csv_path: Path | None = None,
    options: RunOptions | None = None,
    console: Console | None = None,
) -> BenchResult:
    """Run every instance of directory under every mode.

    Runs are independent; with ``workers > 1`` they go to a process pool and
    only this process writes output. Rows are sorted by instance then mode so
    the CSV does not depend on completion order.
    """
    instances = discover_instances(directory)
    base = replace(options or RunOptions(), timeout=timeout)
    jobs = [(path, mode) for path in instances for mode in modes]
    records: list[RunRecord] = []

    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        TextColumn("[progress.percentage]{task.percentage:>3.0f}%"),
        TextColumn("{task.completed}/{task.total}"),
        TimeElapsedColumn(),
        console=console or Console(stderr=True),
    ) as progress:
        task = progress.add_task("Solving instances", total=len(jobs))
        if workers <= 1:
            for path, mode in jobs:
                records.append(run_one(path, mode, base))
                progress.advance(task)
        else:
            with ProcessPoolExecutor(max_workers=workers) as executor:
                futures = {
                    executor.submit(run_one, path, mode, base): (path, mode)
                    for path, mode in jobs
                }
                for future in as_completed(futures):
                    path, mode = futures[future]
                    try:
                        records.append(future.result())
                    except Exception:
                        logger.exception("Worker failed on %s (%s)", path.name, mode)
                        records.append(
                            RunRecord(
                                instance=path.name,
                                mode=mode,
                                verdict=Verdict.UNKNOWN,
                                time_s=0.0,
                            )
                        )
                    progress.advance(task)

    records.sort(key=_sort_key)
    if timeout is not None:
        for record in records:
            if record.time_s > timeout * (1 + TIMEOUT_GRACE):
                logger.warning(
                    "%s under %s overran the %.1fs timeout: %.2fs",
                    record.instance,
                    record.mode,
                    timeout,
                    record.time_s,
                )
    result = BenchResult(records=tuple(records), cactus=cactus_series(records))
    if csv_path is not None:
        write_bench_csv(result.records, csv_path)
    return result


def records_to_frame(records: Iterable[RunRecord]) -> pd.DataFrame:
    return pd.DataFrame([record.to_row() for record in records], columns=BENCH_COLUMNS)


def write_bench_csv(records: Iterable[RunRecord], csv_path: Path) -> None:
    """Write records as UTF-8 CSV in the fixed bench column order."""
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    records_to_frame(records).to_csv(csv_path, index=False, encoding="utf-8")
    logger.info("Wrote bench CSV: %s", csv_path)


def read_bench_csv(csv_path: Path) -> list[RunRecord]:
    """Read a bench CSV back into records without losing float precision.

    Raises:
        ValueError: If a bench column is missing.
    """
    frame = pd.read_csv(
        csv_path,
        float_precision="round_trip",
        dtype={"instance": str, "mode": str, "verdict": str},
        keep_default_na=False,
    )
    missing = [column for column in BENCH_COLUMNS if column not in frame.columns]
    if missing:
        raise ValueError(f"Bench CSV {csv_path} is missing columns: {missing}")
    return [RunRecord.model_validate(row) for row in frame.to_dict("records")]


def cactus_series(records: Iterable[RunRecord]) -> CactusSeries:
    """Sorted solve times of the solved runs, per mode."""
    times: defaultdict[BranchMode, list[float]] = defaultdict(list)
    for record in records:
        bucket = times[record.mode]
        if record.solved:
            bucket.append(record.time_s)
    return {mode: tuple(sorted(values)) for mode, values in times.items()}


def cactus_frame(series: CactusSeries) -> pd.DataFrame:
    """Long-format cactus data: the k-th fastest solve of each mode."""
    rows = [
        {"mode": mode.value, "solved": rank, "time_s": seconds}
        for mode, values in series.items()
        for rank, seconds in enumerate(values, start=1)
    ]
    return pd.DataFrame(rows, columns=CACTUS_COLUMNS)


def write_cactus_csv(series: CactusSeries, csv_path: Path) -> None:
    csv_path.parent.mkdir(parents=True, exist_ok=True)
    cactus_frame(series).to_csv(csv_path, index=False, encoding="utf-8")
    logger.info("Wrote cactus CSV: %s", csv_path)


def cactus_from_csv(csv_path: Path) -> CactusSeries:
    """Re-derive the cactus series from a bench CSV."""
    return cactus_series(read_bench_csv(csv_path))


def find_contradictions(records: Iterable[RunRecord]) -> list[str]:
    """Instances where one mode answered SAT and another UNSAT."""
    verdicts: defaultdict[str, set[Verdict]] = defaultdict(set)
    for record in records:
        verdicts[record.instance].add(record.verdict)
    return sorted(
        instance
        for instance, seen in verdicts.items()
        if {Verdict.SAT, Verdict.UNSAT} <= seen
    )
