"""Particle swarm optimization: inertia-annealed common form plus three
constant-parameter variants, all with global-best topology."""

from __future__ import annotations

import numpy as np

from .base import (
    Objective,
    OptimizerConfig,
    OptimizerTrace,
    monitor_for,
    resolve,
    uniform_population,
    v_max_for,
)

PSO_VARIANTS = ("common", "pso1", "pso2", "pso3")


def particle_swarm(objective: Objective, config: OptimizerConfig, seed: int,
                   variant: str = "common",
                   initial: np.ndarray | None = None) -> OptimizerTrace:
    """v <- chi*(w*v + c1*r1*(pbest - x) + c2*r2*(gbest - x)); x <- x + v.

    r1, r2 are drawn per component from [r_low, 1] with r_low = 0 by
    default (set r_low = -1 in params for the sign-symmetric variant,
    which turns the attraction terms into zero-mean noise and is kept
    only as a sensitivity switch).  Velocities start at zero and are
    clamped to +-v_max, a quarter of the init range.  Variants:

      common: w annealed 0.9 -> 0.4 linearly over max_iterations, c1=c2=2, chi=1
      pso1:   constriction, w=1, c1=c2=2.05, chi=0.7298
      pso2:   w=0.6, c1=c2=1.7, chi=1
      pso3:   w=0.729, c1=c2=1.492, chi=1
    """
    if variant not in PSO_VARIANTS:
        raise ValueError(f"unknown swarm variant {variant!r}; known: {PSO_VARIANTS}")
    config = resolve(config, objective)
    d = objective.dim
    size = config.population if config.population is not None else 15 * d
    c1 = config.param("c1", 2.0)
    c2 = config.param("c2", 2.0)
    chi = config.param("chi", 1.0)
    w_fixed = config.param("w", None)
    w_max = config.param("w_max", 0.9)
    w_min = config.param("w_min", 0.4)
    r_low = config.param("r_low", 0.0)
    v_max = v_max_for(config)
    rng = np.random.default_rng(seed)

    pos = (np.array(initial, dtype=np.float64, copy=True) if initial is not None
           else uniform_population(rng, size, d, config.init_low, config.init_high))
    size = pos.shape[0]
    vel = np.zeros_like(pos)
    fit = objective.batch(pos)
    pbest, pbest_fit = pos.copy(), fit.copy()
    g_idx = int(np.argmax(fit))
    gbest, gbest_fit = pos[g_idx].copy(), float(fit[g_idx])

    monitor = monitor_for(config)
    best_hist = [gbest_fit]
    reason = "max_iter"

    for it in range(1, config.max_iterations + 1):
        if variant == "common":
            w = w_max - (it - 1) * (w_max - w_min) / config.max_iterations
        else:
            w = w_fixed
        r1 = rng.uniform(r_low, 1.0, (size, d))
        r2 = rng.uniform(r_low, 1.0, (size, d))
        vel = chi * (w * vel + c1 * r1 * (pbest - pos) + c2 * r2 * (gbest - pos))
        np.clip(vel, -v_max, v_max, out=vel)
        pos = pos + vel
        fit = objective.batch(pos)

        improved = fit > pbest_fit
        pbest[improved] = pos[improved]
        pbest_fit[improved] = fit[improved]
        if pbest_fit.max() > gbest_fit:
            g_idx = int(np.argmax(pbest_fit))
            gbest, gbest_fit = pbest[g_idx].copy(), float(pbest_fit[g_idx])

        best_hist.append(gbest_fit)
        stop = monitor.push(gbest_fit)
        if stop:
            reason = stop
            break

    return OptimizerTrace(np.array(best_hist), gbest.copy(), reason)
