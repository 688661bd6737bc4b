"""Configuration-driven benchmark entry point.

    hardctrl run CONFIG.json [--workers N] [--output DIR] [--seed S]
    hardctrl list-algorithms

A config names one problem (with horizon T and bin count K), a list of
algorithms with optional per-entry overrides, run counts per algorithm
class, the success threshold and the base seed.  Running it produces a
report table (CSV + JSON), one convergence file per algorithm entry and
a manifest recording the config hash and seeds.  Exit codes: 0 success,
1 runtime failure, 2 invalid configuration.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import os
import sys
from pathlib import Path

from . import __version__
from .harness import (
    DEFAULT_R_EVOLUTIONARY,
    DEFAULT_R_GREEDY,
    DEFAULT_THRESHOLD,
    export_convergence,
    run_suite,
    summarize,
    write_report_csv,
    write_report_json,
)
from .optimizers import ALGORITHM_DEFAULTS, ALGORITHM_IDS, GREEDY_ALGORITHMS, default_config
from .problems import PROBLEM_IDS, problem_by_name

EXIT_OK = 0
EXIT_RUNTIME = 1
EXIT_CONFIG = 2


class ConfigError(Exception):
    """Invalid experiment configuration; message carries the location."""


@dataclasses.dataclass
class AlgorithmEntry:
    algorithm: str
    label: str
    T: float
    K: int
    runs: int
    overrides: dict


@dataclasses.dataclass
class ExperimentConfig:
    problem: str
    T: float
    K: int
    entries: list[AlgorithmEntry]
    threshold: float
    base_seed: int
    workers: int
    output_dir: str
    problem_params: dict


def _require(cond: bool, where: str, message: str):
    if not cond:
        raise ConfigError(f"{where}: {message}")


def parse_config(raw: dict, path: str = "config") -> ExperimentConfig:
    _require(isinstance(raw, dict), path, "top level must be a JSON object")
    problem = raw.get("problem")
    _require(problem in PROBLEM_IDS, f"{path}: problem",
             f"must be one of {PROBLEM_IDS}, got {problem!r}")
    t_val = raw.get("T")
    _require(isinstance(t_val, (int, float)) and t_val > 0, f"{path}: T",
             f"must be a positive number, got {t_val!r}")
    k_val = raw.get("K")
    _require(isinstance(k_val, int) and k_val >= 1, f"{path}: K",
             f"must be an integer >= 1, got {k_val!r}")

    r_greedy = raw.get("R_greedy", DEFAULT_R_GREEDY)
    r_evo = raw.get("R_evolutionary", DEFAULT_R_EVOLUTIONARY)
    for name, val in (("R_greedy", r_greedy), ("R_evolutionary", r_evo)):
        _require(isinstance(val, int) and val >= 1, f"{path}: {name}",
                 f"must be an integer >= 1, got {val!r}")
    threshold = raw.get("L_t", DEFAULT_THRESHOLD)
    _require(isinstance(threshold, (int, float)), f"{path}: L_t",
             f"must be a number, got {threshold!r}")
    base_seed = raw.get("base_seed", 0)
    _require(isinstance(base_seed, int), f"{path}: base_seed",
             f"must be an integer, got {base_seed!r}")
    workers = raw.get("workers", 1)
    _require(isinstance(workers, int) and workers >= 1, f"{path}: workers",
             f"must be an integer >= 1, got {workers!r}")

    algos = raw.get("algorithms")
    _require(isinstance(algos, list) and len(algos) > 0, f"{path}: algorithms",
             "must be a non-empty list")

    entries: list[AlgorithmEntry] = []
    labels: set[str] = set()
    for idx, item in enumerate(algos):
        where = f"{path}: algorithms[{idx}]"
        if isinstance(item, str):
            item = {"id": item}
        _require(isinstance(item, dict), where, "must be an algorithm id or an object")
        algorithm = item.get("id")
        _require(algorithm in ALGORITHM_IDS, where,
                 f"unknown algorithm {algorithm!r}; known: {', '.join(ALGORITHM_IDS)}")
        entry_t = item.get("T", t_val)
        entry_k = item.get("K", k_val)
        _require(isinstance(entry_t, (int, float)) and entry_t > 0, where,
                 f"T must be a positive number, got {entry_t!r}")
        _require(isinstance(entry_k, int) and entry_k >= 1, where,
                 f"K must be an integer >= 1, got {entry_k!r}")
        default_runs = r_greedy if algorithm in GREEDY_ALGORITHMS else r_evo
        runs = item.get("runs", default_runs)
        _require(isinstance(runs, int) and runs >= 1, where,
                 f"runs must be an integer >= 1, got {runs!r}")
        label = item.get("label", algorithm)
        _require(isinstance(label, str) and label, where, "label must be a non-empty string")
        _require(label not in labels, where, f"duplicate label {label!r}")
        labels.add(label)
        overrides = {k: v for k, v in item.items()
                     if k not in ("id", "label", "T", "K", "runs")}
        entries.append(AlgorithmEntry(algorithm=algorithm, label=label, T=float(entry_t),
                                      K=entry_k, runs=runs, overrides=overrides))

    problem_params = raw.get("problem_params", {})
    _require(isinstance(problem_params, dict), f"{path}: problem_params", "must be an object")

    return ExperimentConfig(
        problem=problem,
        T=float(t_val),
        K=k_val,
        entries=entries,
        threshold=float(threshold),
        base_seed=base_seed,
        workers=workers,
        output_dir=raw.get("output_dir", "hardctrl-out"),
        problem_params=problem_params,
    )


def run_experiment(config_path: str, output: str | None = None,
                   seed: int | None = None, workers: int | None = None) -> int:
    """Execute a config file; returns a process exit code."""
    path = Path(config_path)
    try:
        text = path.read_text()
    except OSError as exc:
        print(f"error: cannot read {config_path}: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        print(f"error: {config_path}:{exc.lineno}:{exc.colno}: {exc.msg}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        config = parse_config(raw, path=str(config_path))
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG

    if seed is not None:
        config.base_seed = seed
    if workers is not None:
        config.workers = workers
    if output is not None:
        config.output_dir = output

    try:
        outdir = Path(config.output_dir)
        outdir.mkdir(parents=True, exist_ok=True)
        reports = []
        manifest_entries = []
        for entry in config.entries:
            problem = problem_by_name(config.problem, entry.T, entry.K,
                                      **config.problem_params)
            opt_config = default_config(entry.algorithm, dim=problem.dimension,
                                        overrides=entry.overrides)
            records = run_suite(
                problem, entry.algorithm, entry.runs, config.base_seed,
                config=opt_config, threshold=config.threshold,
                problem_id=config.problem, workers=config.workers,
            )
            report = summarize(records, config.threshold)
            reports.append(report)
            export_convergence(records, outdir / f"convergence_{entry.label}.csv", "csv")
            export_convergence(records, outdir / f"convergence_{entry.label}.json", "json")
            manifest_entries.append({
                "label": entry.label, "algorithm": entry.algorithm,
                "T": entry.T, "K": entry.K, "runs": entry.runs,
                "seeds": [config.base_seed, config.base_seed + entry.runs - 1],
            })
            print(f"[{config.problem}] {entry.label}: R={report.runs} "
                  f"median={report.median:.3f} best={report.best:.3f} "
                  f"worst={report.worst:.3f} success={report.success_pct:.1f}%")

        write_report_csv(reports, outdir / "report.csv")
        write_report_json(reports, outdir / "report.json")
        manifest = {
            "artifact_version": __version__,
            "config_path": str(config_path),
            "config_sha256": hashlib.sha256(text.encode()).hexdigest(),
            "problem": config.problem,
            "L_t": config.threshold,
            "base_seed": config.base_seed,
            "workers": config.workers,
            "entries": manifest_entries,
        }
        with open(outdir / "manifest.json", "w") as fh:
            json.dump(manifest, fh, indent=1)
        print(f"wrote report.csv, report.json, manifest.json to {outdir}")
        return EXIT_OK
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


def list_algorithms() -> str:
    """Formatted table of the nine algorithm ids and their defaults."""
    lines = []
    for algo in ALGORITHM_IDS:
        spec = ALGORITHM_DEFAULTS[algo]
        parts = [f"max_iterations={spec['max_iterations']}"]
        pop = spec.get("population")
        if pop is not None:
            parts.append(f"population={pop}")
        for key, val in spec["params"].items():
            parts.append(f"{key}={val}")
        lines.append(f"{algo:<12} {', '.join(parts)}")
    return "\n".join(lines)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hardctrl",
        description="Benchmark greedy and evolutionary optimizers on "
                    "trap-laden gate-synthesis problems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    runp = sub.add_parser("run", help="execute an experiment config")
    runp.add_argument("config", help="path to a JSON experiment config")
    runp.add_argument("--workers", type=int, default=None,
                      help="concurrent runs (default: config value, "
                           "HARDCTRL_WORKERS, or 1)")
    runp.add_argument("--output", default=None, help="output directory override")
    runp.add_argument("--seed", type=int, default=None, help="base seed override")
    sub.add_parser("list-algorithms", help="print algorithm ids and default parameters")
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "list-algorithms":
        print(list_algorithms())
        return EXIT_OK
    workers = args.workers
    if workers is None and "HARDCTRL_WORKERS" in os.environ:
        try:
            workers = int(os.environ["HARDCTRL_WORKERS"])
        except ValueError:
            print("error: HARDCTRL_WORKERS must be an integer", file=sys.stderr)
            return EXIT_CONFIG
    return run_experiment(args.config, output=args.output, seed=args.seed,
                          workers=workers)


if __name__ == "__main__":
    sys.exit(main())
