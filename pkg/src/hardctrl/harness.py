"""Seeded benchmark protocol: R independent runs per algorithm, success
threshold on the final log-infidelity, summary statistics and
convergence-curve export.

Run r of a suite uses seed base_seed + r, so results are reproducible
and independent of execution order and worker count.  Wall time is
recorded per run for reporting but never enters any success criterion.
"""

from __future__ import annotations

import copy
import csv
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .model import ControlProblem, log_infidelity
from .optimizers import OptimizerConfig, OptimizerTrace, control_objective, run as run_optimizer

DEFAULT_THRESHOLD = -4.0
DEFAULT_R_GREEDY = 80
DEFAULT_R_EVOLUTIONARY = 40


@dataclass
class RunRecord:
    """One optimizer run: identity, trace, final log-infidelity, outcome."""

    run: int
    seed: int
    problem: str
    algorithm: str
    trace: OptimizerTrace
    final_L: float
    success: bool
    wall_time: float

    def curve(self) -> np.ndarray:
        """Per-iteration log-infidelity series (index 0 = initial best)."""
        return np.array([log_infidelity(f) for f in self.trace.best_fitness])


@dataclass
class BenchmarkReport:
    """Suite statistics row: median/best/worst final L and success rate."""

    problem: str
    algorithm: str
    runs: int
    threshold: float
    median: float
    best: float
    worst: float
    success_pct: float
    wall_time_s: float = 0.0


def _execute_run(problem: ControlProblem, problem_id: str, algorithm: str,
                 config: OptimizerConfig | None, seed: int, run_index: int,
                 threshold: float) -> RunRecord:
    objective = control_objective(problem)
    t0 = time.perf_counter()
    trace = run_optimizer(algorithm, objective, config, seed)
    wall = time.perf_counter() - t0
    final_l = log_infidelity(trace.final_fitness)
    return RunRecord(
        run=run_index,
        seed=seed,
        problem=problem_id,
        algorithm=algorithm,
        trace=trace,
        final_L=final_l,
        success=final_l <= threshold,
        wall_time=wall,
    )


def run_suite(problem: ControlProblem, algorithm: str, R: int, base_seed: int,
              config: OptimizerConfig | None = None,
              threshold: float = DEFAULT_THRESHOLD,
              problem_id: str = "problem",
              workers: int = 1) -> list[RunRecord]:
    """R independent seeded runs; run r uses seed base_seed + r."""
    if R < 1:
        raise ValueError(f"R must be >= 1, got {R}")
    args = [(problem, problem_id, algorithm, config, base_seed + r, r, threshold)
            for r in range(R)]
    if workers > 1 and R > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_execute_run_star, args))
    else:
        records = [_execute_run(*a) for a in args]
    return records


def _execute_run_star(args):
    return _execute_run(*args)


def summarize(records: list[RunRecord], threshold: float = DEFAULT_THRESHOLD) -> BenchmarkReport:
    """Statistics over final L values.

    Median is the lower median for even run counts; best is the minimum
    (L is a loss); success percentage counts runs with L <= threshold.
    """
    if not records:
        raise ValueError("cannot summarize an empty record list")
    finals = np.sort(np.array([rec.final_L for rec in records]))
    n = len(finals)
    return BenchmarkReport(
        problem=records[0].problem,
        algorithm=records[0].algorithm,
        runs=n,
        threshold=threshold,
        median=float(finals[(n - 1) // 2]),
        best=float(finals[0]),
        worst=float(finals[-1]),
        success_pct=100.0 * float(np.sum(finals <= threshold)) / n,
        wall_time_s=float(sum(rec.wall_time for rec in records)),
    )


def repeated_short_runs(problem: ControlProblem, algorithm: str, repetitions: int,
                        iterations_cap: int, base_seed: int,
                        config: OptimizerConfig | None = None,
                        threshold: float = DEFAULT_THRESHOLD,
                        problem_id: str = "problem",
                        workers: int = 1) -> BenchmarkReport:
    """Many cheap restarts: every run capped at iterations_cap iterations."""
    if config is None:
        config = OptimizerConfig(algorithm=algorithm)
    else:
        config = copy.copy(config)
        config.params = dict(config.params)
    config.max_iterations = iterations_cap
    records = run_suite(problem, algorithm, repetitions, base_seed, config=config,
                        threshold=threshold, problem_id=problem_id, workers=workers)
    return summarize(records, threshold)


# ---------------------------------------------------------------------------
# convergence-curve and report export


def export_convergence(records: list[RunRecord], path, fmt: str = "csv") -> None:
    """Write per-run (run, iteration, L) series; csv or json."""
    if not records:
        raise ValueError("no records to export")
    if fmt == "csv":
        with open(path, "w", newline="") as fh:
            writer = csv.writer(fh)
            writer.writerow(["run", "iteration", "L"])
            for rec in records:
                for it, l_val in enumerate(rec.curve()):
                    writer.writerow([rec.run, it, f"{l_val:.17g}"])
    elif fmt == "json":
        payload = [
            {"run": rec.run, "seed": rec.seed, "L": [float(v) for v in rec.curve()]}
            for rec in records
        ]
        with open(path, "w") as fh:
            json.dump(payload, fh, indent=1)
    else:
        raise ValueError(f"unknown convergence format {fmt!r} (csv or json)")


def read_convergence_csv(path) -> dict[int, list[tuple[int, float]]]:
    """Inverse of export_convergence(..., fmt="csv"); exact round-trip."""
    out: dict[int, list[tuple[int, float]]] = {}
    with open(path, newline="") as fh:
        for row in csv.DictReader(fh):
            out.setdefault(int(row["run"]), []).append(
                (int(row["iteration"]), float(row["L"]))
            )
    return out


REPORT_COLUMNS = ("problem", "algorithm", "R", "L_t", "median", "best", "worst",
                  "success_pct", "wall_time_s")


def write_report_csv(reports: list[BenchmarkReport], path) -> None:
    """Stable-format report table; wall_time_s is the only nondeterministic column."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(REPORT_COLUMNS)
        for rep in reports:
            writer.writerow([
                rep.problem, rep.algorithm, rep.runs, f"{rep.threshold:.6g}",
                f"{rep.median:.6g}", f"{rep.best:.6g}", f"{rep.worst:.6g}",
                f"{rep.success_pct:.6g}", f"{rep.wall_time_s:.3f}",
            ])


def write_report_json(reports: list[BenchmarkReport], path) -> None:
    payload = [
        {
            "problem": rep.problem, "algorithm": rep.algorithm, "R": rep.runs,
            "L_t": rep.threshold, "median": rep.median, "best": rep.best,
            "worst": rep.worst, "success_pct": rep.success_pct,
            "wall_time_s": rep.wall_time_s,
        }
        for rep in reports
    ]
    with open(path, "w") as fh:
        json.dump(payload, fh, indent=1)
