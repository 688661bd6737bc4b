"""Optimizer suite: three greedy local methods and six population methods
behind one run(algorithm, objective, config, seed) dispatcher."""

from __future__ import annotations

import numpy as np

from .base import (
    ALGORITHM_DEFAULTS,
    ALGORITHM_IDS,
    EVOLUTIONARY_ALGORITHMS,
    GREEDY_ALGORITHMS,
    Objective,
    OptimizerConfig,
    OptimizerTrace,
    control_objective,
    default_config,
    initialize_population,
)
from .bfgs import bfgs
from .de import differential_evolution
from .genetic import genetic_algorithm
from .krotov import krotov
from .nelder_mead import nelder_mead
from .pso import particle_swarm

__all__ = [
    "ALGORITHM_DEFAULTS",
    "ALGORITHM_IDS",
    "EVOLUTIONARY_ALGORITHMS",
    "GREEDY_ALGORITHMS",
    "Objective",
    "OptimizerConfig",
    "OptimizerTrace",
    "bfgs",
    "control_objective",
    "default_config",
    "differential_evolution",
    "genetic_algorithm",
    "initialize_population",
    "krotov",
    "nelder_mead",
    "particle_swarm",
    "run",
]

_PSO_VARIANT = {"pso-common": "common", "pso1": "pso1", "pso2": "pso2", "pso3": "pso3"}


def run(algorithm: str, objective: Objective, config: OptimizerConfig | None,
        seed: int, initial: np.ndarray | None = None) -> OptimizerTrace:
    """Run one seeded optimization; deterministic for fixed arguments."""
    if config is None:
        config = default_config(algorithm, dim=objective.dim)
    if config.algorithm and config.algorithm != algorithm:
        raise ValueError(f"config is tagged {config.algorithm!r}, asked to run {algorithm!r}")
    config.algorithm = algorithm
    if algorithm == "nelder-mead":
        return nelder_mead(objective, config, seed, initial=initial)
    if algorithm == "bfgs":
        return bfgs(objective, config, seed, initial=initial)
    if algorithm == "krotov":
        return krotov(objective, config, seed, initial=initial)
    if algorithm == "ga":
        return genetic_algorithm(objective, config, seed, initial=initial)
    if algorithm == "de":
        return differential_evolution(objective, config, seed, initial=initial)
    if algorithm in _PSO_VARIANT:
        return particle_swarm(objective, config, seed, variant=_PSO_VARIANT[algorithm],
                              initial=initial)
    raise ValueError(f"unknown algorithm {algorithm!r}; known: {', '.join(ALGORITHM_IDS)}")
