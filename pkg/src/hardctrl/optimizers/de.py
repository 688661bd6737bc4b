"""Differential evolution, rand/1/bin with greedy one-to-one selection."""

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


def differential_evolution(objective: Objective, config: OptimizerConfig, seed: int,
                           initial: np.ndarray | None = None) -> OptimizerTrace:
    """Per generation and target i: donor V = X_i1 + mu*(X_i2 - X_i3) from
    three distinct non-target members of the current generation; binomial
    crossover at rate xi with one forced donor component so the trial
    always differs from its target; the trial replaces the target only if
    it is at least as fit.  mu defaults to 0.5, xi to 0.9, population to
    15 * dimension.
    """
    config = resolve(config, objective)
    d = objective.dim
    np_size = config.population if config.population is not None else 15 * d
    mu = config.param("mu", 0.5)
    xi = config.param("xi", 0.9)
    if not 0.0 <= mu <= 2.0:
        raise ValueError(f"mutation factor mu must be in [0, 2], got {mu}")
    if not 0.0 < xi < 1.0:
        raise ValueError(f"crossover rate xi must be in (0, 1), got {xi}")
    rng = np.random.default_rng(seed)

    pop = (np.array(initial, dtype=np.float64, copy=True) if initial is not None
           else uniform_population(rng, np_size, d, config.init_low, config.init_high))
    np_size = pop.shape[0]
    if np_size < 4:
        raise ValueError(f"population must be >= 4 for donor construction, got {np_size}")
    fit = objective.batch(pop)

    monitor = monitor_for(config)
    best_hist = [float(fit.max())]
    reason = "max_iter"
    indices = np.arange(np_size)

    for _ in range(config.max_iterations):
        trials = np.empty_like(pop)
        for i in range(np_size):
            pool = np.delete(indices, i)
            i1, i2, i3 = rng.choice(pool, size=3, replace=False)
            donor = pop[i1] + mu * (pop[i2] - pop[i3])
            cross = rng.random(d) < xi
            cross[rng.integers(d)] = True
            trials[i] = np.where(cross, donor, pop[i])
        trial_fit = objective.batch(trials)
        upgrade = trial_fit >= fit
        pop[upgrade] = trials[upgrade]
        fit[upgrade] = trial_fit[upgrade]

        best_hist.append(float(fit.max()))
        stop = monitor.push(best_hist[-1])
        if stop:
            reason = stop
            break

    best_idx = int(np.argmax(fit))
    return OptimizerTrace(np.array(best_hist), pop[best_idx].copy(), reason)
