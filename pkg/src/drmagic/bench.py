"""Multi-start experiments: seeded trials, success accounting, CSV output.

Each trial draws a start uniformly from the open unit cube with its own
seed, lifts it onto the diagonal and runs the solver until the stop test
passes or a cap fires.  Trials are independent, so a cell of trials can be
spread over worker processes; records always come back in seed order.
"""

from __future__ import annotations

import csv
import hashlib
import io
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .core import DomainError, Status, StopRule
from .formulations import Formulation, build

__all__ = [
    "TrialRecord",
    "ExperimentPlan",
    "SummaryRow",
    "random_start",
    "run_trial",
    "run_cell",
    "run_plan",
    "summarize",
    "cumulative_frequency",
    "default_time_grid",
    "write_trials",
    "write_summary",
    "write_cumulative",
    "determinism_hash",
]

log = logging.getLogger(__name__)

TRIAL_FIELDS = ["formulation", "n", "seed", "status", "iterations", "wall_time_s"]
SUMMARY_FIELDS = ["formulation", "n", "trials", "solved", "success_pct",
                  "mean_time_s", "max_time_s"]
CUMULATIVE_FIELDS = ["formulation", "n", "t_seconds", "fraction"]


@dataclass
class TrialRecord:
    formulation: str
    n: int
    seed: int
    status: Status
    iterations: int
    wall_time: float
    solution: Optional[np.ndarray] = field(default=None, repr=False)

    @property
    def solved(self) -> bool:
        return self.status is Status.SOLVED


@dataclass(frozen=True)
class ExperimentPlan:
    orders: Sequence[int]
    formulations: Sequence[str]
    trials_per_cell: int = 100
    time_cap: float = 1800.0
    base_seed: int = 0
    iter_cap: Optional[int] = None
    tolerance: float = 0.05

    def __post_init__(self):
        if self.trials_per_cell < 1:
            raise DomainError("trials_per_cell must be at least 1")


def random_start(shape, seed: int) -> np.ndarray:
    """I.i.d. uniform entries strictly inside (0, 1), reproducible per seed.

    Uses PCG64; each entry is ``(k + 1/2) / 2**52`` for a uniform 52-bit
    integer ``k``, so neither endpoint can occur.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    k = rng.integers(0, 2**52, size=shape, dtype=np.int64)
    return (k + 0.5) * 2.0**-52


def _solve_one(form: Formulation, seed, rule) -> TrialRecord:
    result, grid = form.solve(random_start(form.shape, seed), rule)
    status = result.status
    if status is Status.SOLVED and grid is None:
        status = Status.UNVERIFIED
        log.error("%s n=%d seed=%d passed the stop test but failed verification",
                  form.name, form.n, seed)
    return TrialRecord(form.name, form.n, seed, status, result.iterations,
                       result.wall_time, grid)


def run_trial(formulation: str, n: int, seed: int, time_cap: float = 1800.0,
              iter_cap: Optional[int] = None, tolerance: float = 0.05,
              prefill=None) -> TrialRecord:
    """Build the formulation and run one seeded trial."""
    form = build(formulation, n, prefill)
    return _solve_one(form, seed, StopRule(tolerance, time_cap, iter_cap))


def _trial_star(args):
    return run_trial(*args)


def run_cell(formulation: str, n: int, trials: int, time_cap: float = 1800.0,
             base_seed: int = 0, iter_cap: Optional[int] = None,
             tolerance: float = 0.05, workers: Optional[int] = None,
             prefill=None) -> List[TrialRecord]:
    """Run ``trials`` trials with seeds ``base_seed + 0 .. trials - 1``.

    Construction errors (e.g. order 2) are raised before any trial starts.
    ``workers`` defaults to the CPU count; ``1`` runs in-process.
    """
    form = build(formulation, n, prefill)
    rule = StopRule(tolerance, time_cap, iter_cap)
    seeds = [base_seed + t for t in range(trials)]
    workers = workers or os.cpu_count() or 1
    if workers == 1 or trials == 1:
        return [_solve_one(form, s, rule) for s in seeds]
    args = [(formulation, n, s, time_cap, iter_cap, tolerance, prefill) for s in seeds]
    with ProcessPoolExecutor(max_workers=min(workers, trials)) as pool:
        return list(pool.map(_trial_star, args))


def run_plan(plan: ExperimentPlan, workers: Optional[int] = None
             ) -> Tuple[List[TrialRecord], Dict[Tuple[str, int], str]]:
    """Run every (formulation, order) cell of the plan.

    A cell whose formulation cannot be built is skipped; its error message is
    returned in the second element keyed by ``(formulation, n)``.
    """
    records: List[TrialRecord] = []
    errors: Dict[Tuple[str, int], str] = {}
    for name in plan.formulations:
        for n in plan.orders:
            try:
                cell = run_cell(name, n, plan.trials_per_cell, plan.time_cap,
                                plan.base_seed, plan.iter_cap, plan.tolerance, workers)
            except DomainError as exc:
                log.warning("skipping %s n=%d: %s", name, n, exc)
                errors[(name, n)] = str(exc)
                continue
            records.extend(cell)
    return records, errors


@dataclass(frozen=True)
class SummaryRow:
    formulation: str
    n: int
    trials: int
    solved: int
    success_pct: float
    mean_time_s: Optional[float]
    max_time_s: Optional[float]


def _cells(records):
    cells: Dict[Tuple[str, int], List[TrialRecord]] = {}
    for r in records:
        cells.setdefault((r.formulation, r.n), []).append(r)
    return cells


def summarize(records: Sequence[TrialRecord]) -> List[SummaryRow]:
    """Success count and mean/max time of solved trials, per cell.

    Unsolved trials do not enter the timing columns; a cell with no solved
    trial has ``None`` there.
    """
    if not records:
        raise DomainError("no records to summarize")
    rows = []
    for (name, n), cell in _cells(records).items():
        times = [r.wall_time for r in cell if r.solved]
        rows.append(SummaryRow(
            name, n, len(cell), len(times), 100.0 * len(times) / len(cell),
            float(np.mean(times)) if times else None,
            float(np.max(times)) if times else None,
        ))
    return rows


def cumulative_frequency(records: Sequence[TrialRecord], time_grid
                         ) -> List[Tuple[float, float]]:
    """Fraction of all trials solved within each time of ``time_grid``."""
    grid = np.asarray(time_grid, dtype=np.float64)
    if grid.ndim != 1 or np.any(np.diff(grid) <= 0):
        raise DomainError("time grid must be strictly increasing")
    if not records:
        return [(float(t), 0.0) for t in grid]
    times = np.sort([r.wall_time for r in records if r.solved])
    counts = np.searchsorted(times, grid, side="right")
    return [(float(t), c / len(records)) for t, c in zip(grid, counts)]


def default_time_grid(t_max: float, points: int = 60) -> np.ndarray:
    """Log-spaced times from 0.1 ms up to ``t_max`` (at least 1 ms)."""
    return np.logspace(-4, np.log10(max(t_max, 1e-3)), points)


def _fmt(v):
    return "" if v is None else f"{v:.6f}"


def _open(target):
    if isinstance(target, (str, os.PathLike)):
        return open(target, "w", newline=""), True
    return target, False


def write_trials(records, target, wall_time=True) -> None:
    fh, close = _open(target)
    try:
        fields = TRIAL_FIELDS if wall_time else TRIAL_FIELDS[:-1]
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(fields)
        for r in records:
            row = [r.formulation, r.n, r.seed, r.status.value, r.iterations]
            if wall_time:
                row.append(_fmt(r.wall_time))
            w.writerow(row)
    finally:
        if close:
            fh.close()


def write_summary(records, target) -> None:
    fh, close = _open(target)
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(SUMMARY_FIELDS)
        for s in summarize(records):
            w.writerow([s.formulation, s.n, s.trials, s.solved, f"{s.success_pct:.1f}",
                        _fmt(s.mean_time_s), _fmt(s.max_time_s)])
    finally:
        if close:
            fh.close()


def write_cumulative(records, target, time_grid=None) -> None:
    fh, close = _open(target)
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CUMULATIVE_FIELDS)
        for (name, n), cell in _cells(records).items():
            grid = time_grid
            if grid is None:
                grid = default_time_grid(max(r.wall_time for r in cell))
            for t, frac in cumulative_frequency(cell, grid):
                w.writerow([name, n, f"{t:.6g}", f"{frac:.4f}"])
    finally:
        if close:
            fh.close()


def determinism_hash(records) -> str:
    """SHA-256 of the trial CSV without the wall-time column."""
    buf = io.StringIO()
    write_trials(records, buf, wall_time=False)
    return hashlib.sha256(buf.getvalue().encode()).hexdigest()
