"""Shared optimizer interface: objectives, configs, traces, termination.

All nine algorithms consume an Objective and an OptimizerConfig, draw
every random number from one seeded generator, and emit an
OptimizerTrace whose best-fitness history includes the initial best at
index 0.  Runs are deterministic given (seed, config, objective).
"""

from __future__ import annotations

import copy
from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from ..model import ControlProblem, fitness_many, gradient, ControlField

TERMINATION_REASONS = ("max_iter", "stalled", "machine_precision")

# Abort rule shared by every algorithm: stop when the best fitness has
# improved by less than stall_epsilon over stall_window iterations, or
# when the infidelity 1-F is below double precision.
DEFAULT_STALL_WINDOW = 50
DEFAULT_STALL_EPSILON = 1e-15
MACHINE_INFIDELITY = 1e-16


@dataclass
class Objective:
    """Black-box objective: dimension, scalar evaluate, optional extras.

    evaluate_batch, when present, maps an (n, D) array to n fitness
    values and is used by population algorithms.  problem is set for
    objectives backed by a ControlProblem, which the sequential
    bin-update algorithm requires.
    """

    dim: int
    evaluate: Callable[[np.ndarray], float]
    gradient: Callable[[np.ndarray], np.ndarray] | None = None
    evaluate_batch: Callable[[np.ndarray], np.ndarray] | None = None
    problem: ControlProblem | None = None

    def batch(self, xs: np.ndarray) -> np.ndarray:
        if self.evaluate_batch is not None:
            return np.asarray(self.evaluate_batch(xs), dtype=np.float64)
        return np.array([self.evaluate(x) for x in xs], dtype=np.float64)


def control_objective(problem: ControlProblem) -> Objective:
    """Wrap a ControlProblem as a maximization Objective over flat fields."""

    def _evaluate(x: np.ndarray) -> float:
        return float(fitness_many(problem, x[None, :])[0])

    def _evaluate_batch(xs: np.ndarray) -> np.ndarray:
        return fitness_many(problem, xs)

    def _gradient(x: np.ndarray) -> np.ndarray:
        return gradient(problem, ControlField.from_flat(x, problem.bins, problem.n_controls))

    return Objective(
        dim=problem.dimension,
        evaluate=_evaluate,
        gradient=_gradient,
        evaluate_batch=_evaluate_batch,
        problem=problem,
    )


@dataclass
class OptimizerConfig:
    """Run budget, abort rule, init range and per-algorithm parameters.

    max_iterations and population default per algorithm (see
    ALGORITHM_DEFAULTS); params carries algorithm-specific knobs such as
    mu/xi for differential evolution or c1/c2/chi for the swarms.
    """

    algorithm: str = ""
    max_iterations: int | None = None
    stall_window: int | None = None
    stall_epsilon: float = DEFAULT_STALL_EPSILON
    init_low: float = -1.0
    init_high: float = 1.0
    population: int | None = None
    params: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        if not self.init_low < self.init_high:
            raise ValueError(f"init_low must be < init_high, got [{self.init_low}, {self.init_high}]")
        if self.stall_epsilon < 0:
            raise ValueError("stall_epsilon must be >= 0")
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError("max_iterations must be >= 1")
        if self.stall_window is not None and self.stall_window < 1:
            raise ValueError("stall_window must be >= 1")

    def param(self, name: str, default):
        return self.params.get(name, default)


@dataclass
class OptimizerTrace:
    """Per-iteration best fitness (index 0 = initial best), final best point."""

    best_fitness: np.ndarray
    best_vector: np.ndarray
    termination: str

    def __post_init__(self):
        assert self.termination in TERMINATION_REASONS
        self.best_fitness = np.asarray(self.best_fitness, dtype=np.float64)
        self.best_vector = np.asarray(self.best_vector, dtype=np.float64)

    @property
    def iterations(self) -> int:
        return len(self.best_fitness) - 1

    @property
    def final_fitness(self) -> float:
        return float(self.best_fitness[-1])


class StallMonitor:
    """Tracks the best-fitness history and applies the abort rule."""

    def __init__(self, window: int, epsilon: float):
        self.window = window
        self.epsilon = epsilon
        self.history: list[float] = []

    def push(self, best: float) -> str | None:
        """Record this iteration's best; return a termination reason or None."""
        self.history.append(float(best))
        if 1.0 - best < MACHINE_INFIDELITY:
            return "machine_precision"
        if len(self.history) > self.window:
            if self.history[-1] - self.history[-1 - self.window] < self.epsilon:
                return "stalled"
        return None


def uniform_population(rng: np.random.Generator, size: int, dim: int,
                       low: float, high: float) -> np.ndarray:
    """(size, dim) i.i.d. uniform draws from the shared run generator."""
    return rng.uniform(low, high, (size, dim))


def initialize_population(dim: int, size: int, seed: int,
                          low: float = -1.0, high: float = 1.0) -> np.ndarray:
    """Seeded i.i.d. uniform population in [low, high]^dim."""
    if size < 1:
        raise ValueError(f"population size must be >= 1, got {size}")
    if low >= high:
        raise ValueError(f"need low < high, got [{low}, {high}]")
    return uniform_population(np.random.default_rng(seed), size, dim, low, high)


GREEDY_ALGORITHMS = ("nelder-mead", "bfgs", "krotov")
EVOLUTIONARY_ALGORITHMS = ("ga", "de", "pso-common", "pso1", "pso2", "pso3")
ALGORITHM_IDS = GREEDY_ALGORITHMS + EVOLUTIONARY_ALGORITHMS

# Default budgets: greedy iterations are cheap, populations are not.
# Population sizes marked "15*D" scale with the objective dimension.
ALGORITHM_DEFAULTS: dict[str, dict] = {
    "nelder-mead": {"max_iterations": 5000, "params": {"initial_step": 0.1}},
    "bfgs": {"max_iterations": 5000, "params": {"armijo_c": 1e-4, "backtrack": 0.5}},
    "krotov": {"max_iterations": 5000, "params": {"alpha": 1.0}},
    "ga": {"max_iterations": 1000, "population": 70, "params": {"mutation_rate": 0.001}},
    "de": {"max_iterations": 1000, "population": "15*D", "params": {"mu": 0.5, "xi": 0.9}},
    "pso-common": {
        "max_iterations": 1000,
        "population": "15*D",
        # chi=1 with c1+c2=4 needs the classic velocity clamp and the full
        # annealing schedule to converge; hence the longer stall window.
        "stall_window": 200,
        "params": {"c1": 2.0, "c2": 2.0, "chi": 1.0, "w_max": 0.9, "w_min": 0.4,
                   "v_max": "0.25*range", "r_low": 0.0},
    },
    "pso1": {
        "max_iterations": 1000,
        "population": "15*D",
        "params": {"w": 1.0, "c1": 2.05, "c2": 2.05, "chi": 0.7298,
                   "v_max": "0.25*range", "r_low": 0.0},
    },
    "pso2": {
        "max_iterations": 1000,
        "population": "15*D",
        "params": {"w": 0.6, "c1": 1.7, "c2": 1.7, "chi": 1.0,
                   "v_max": "0.25*range", "r_low": 0.0},
    },
    "pso3": {
        "max_iterations": 1000,
        "population": "15*D",
        "params": {"w": 0.729, "c1": 1.492, "c2": 1.492, "chi": 1.0,
                   "v_max": "0.25*range", "r_low": 0.0},
    },
}


def default_config(algorithm: str, dim: int | None = None,
                   overrides: dict | None = None) -> OptimizerConfig:
    """Config with per-algorithm defaults applied, then explicit overrides."""
    if algorithm not in ALGORITHM_DEFAULTS:
        raise ValueError(f"unknown algorithm {algorithm!r}; known: {', '.join(ALGORITHM_IDS)}")
    spec = ALGORITHM_DEFAULTS[algorithm]
    cfg = OptimizerConfig(algorithm=algorithm)
    cfg.max_iterations = spec["max_iterations"]
    cfg.stall_window = spec.get("stall_window", DEFAULT_STALL_WINDOW)
    pop = spec.get("population")
    if pop == "15*D":
        cfg.population = 15 * dim if dim is not None else None
    else:
        cfg.population = pop
    cfg.params = {k: v for k, v in spec["params"].items() if not isinstance(v, str)}
    if overrides:
        ov = dict(overrides)
        for key in ("max_iterations", "stall_window", "stall_epsilon",
                    "init_low", "init_high", "population"):
            if key in ov:
                setattr(cfg, key, ov.pop(key))
        cfg.params.update(ov)
    return cfg


def resolve(config: OptimizerConfig, objective: Objective) -> OptimizerConfig:
    """Copy of config with unset budget/population fields filled from defaults."""
    cfg = copy.copy(config)
    cfg.params = dict(config.params)
    spec = ALGORITHM_DEFAULTS.get(cfg.algorithm, {})
    if cfg.max_iterations is None:
        cfg.max_iterations = spec.get("max_iterations", 1000)
    if cfg.stall_window is None:
        cfg.stall_window = spec.get("stall_window", DEFAULT_STALL_WINDOW)
    if cfg.population is None:
        pop = spec.get("population")
        cfg.population = 15 * objective.dim if pop == "15*D" else pop
    return cfg


def monitor_for(config: OptimizerConfig) -> StallMonitor:
    window = config.stall_window if config.stall_window is not None else DEFAULT_STALL_WINDOW
    return StallMonitor(window, config.stall_epsilon)


def v_max_for(config: OptimizerConfig) -> float:
    """Velocity clamp: a quarter of the initialization range width."""
    vm = config.param("v_max", None)
    if vm is None:
        return 0.25 * (config.init_high - config.init_low)
    return float(vm)
