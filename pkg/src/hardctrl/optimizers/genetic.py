"""Real-coded genetic algorithm: roulette selection, two-point crossover,
value-swap mutation, single-elite carry-over."""

from __future__ import annotations

import numpy as np

from .base import (
    Objective,
    OptimizerConfig,
    OptimizerTrace,
    monitor_for,
    resolve,
    uniform_population,
)

_ROULETTE_SHIFT = 1e-12


def genetic_algorithm(objective: Objective, config: OptimizerConfig, seed: int,
                      initial: np.ndarray | None = None) -> OptimizerTrace:
    """One generation: fitness-proportional parent choice on weights
    shifted nonnegative (f - min(f) + 1e-12), two-point crossover between
    random cut indices, then per-element mutation at the configured rate
    where a mutated element takes the value of a uniformly chosen element
    of the same offspring vector.  The single best individual survives
    unchanged, so the best fitness never decreases.
    """
    config = resolve(config, objective)
    d = objective.dim
    n = config.population or 70
    rate = config.param("mutation_rate", 0.001)
    rng = np.random.default_rng(seed)

    pop = (np.array(initial, dtype=np.float64, copy=True) if initial is not None
           else uniform_population(rng, n, d, config.init_low, config.init_high))
    n = pop.shape[0]
    fit = objective.batch(pop)

    monitor = monitor_for(config)
    best_hist = [float(fit.max())]
    reason = "max_iter"

    for _ in range(config.max_iterations):
        shifted = fit - fit.min() + _ROULETTE_SHIFT
        probs = shifted / shifted.sum()
        elite_idx = int(np.argmax(fit))
        elite, elite_fit = pop[elite_idx].copy(), float(fit[elite_idx])

        children = np.empty_like(pop)
        children[0] = elite
        for c in range(1, n):
            i, j = rng.choice(n, size=2, p=probs)
            lo, hi = sorted(rng.integers(0, d, size=2))
            child = pop[i].copy()
            child[lo:hi + 1] = pop[j][lo:hi + 1]
            mutate = np.nonzero(rng.random(d) < rate)[0]
            for t in mutate:
                child[t] = child[rng.integers(d)]
            children[c] = child

        pop = children
        fit = objective.batch(pop)
        fit[0] = elite_fit  # elite is untouched; skip re-evaluation noise

        best_hist.append(float(fit.max()))
        stop = monitor.push(best_hist[-1])
        if stop:
            reason = stop
            break

    best_idx = int(np.argmax(fit))
    return OptimizerTrace(np.array(best_hist), pop[best_idx].copy(), reason)
