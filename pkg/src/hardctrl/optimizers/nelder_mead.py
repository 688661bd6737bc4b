"""Nelder-Mead simplex search (derivative-free, maximizing)."""

from __future__ import annotations

import numpy as np

from .base import Objective, OptimizerConfig, OptimizerTrace, monitor_for, resolve

REFLECT, EXPAND, CONTRACT, SHRINK = 1.0, 2.0, 0.5, 0.5
_DEGENERATE_DIAMETER = 1e-12


def nelder_mead(objective: Objective, config: OptimizerConfig, seed: int,
                initial: np.ndarray | None = None) -> OptimizerTrace:
    """Classic simplex iteration on -F with restart on degeneracy.

    The initial simplex is a seeded random point plus one vertex per
    coordinate, displaced by the configured step (default 0.1).  When
    the simplex collapses below diameter 1e-12 it is rebuilt around the
    best vertex instead of erroring out.
    """
    config = resolve(config, objective)
    d = objective.dim
    rng = np.random.default_rng(seed)
    step = config.param("initial_step", 0.1)

    def build_simplex(x0):
        verts = np.empty((d + 1, d))
        verts[0] = x0
        for i in range(d):
            verts[i + 1] = x0
            verts[i + 1, i] += step
        return verts

    if initial is None:
        initial = rng.uniform(config.init_low, config.init_high, d)
    simplex = build_simplex(np.asarray(initial, dtype=np.float64))
    # minimize m = -F internally
    fv = -objective.batch(simplex)

    monitor = monitor_for(config)
    best_hist = [float(-fv.min())]
    reason = "max_iter"

    for _ in range(config.max_iterations):
        order = np.argsort(fv, kind="stable")
        simplex, fv = simplex[order], fv[order]

        if np.max(np.abs(simplex[1:] - simplex[0])) < _DEGENERATE_DIAMETER:
            simplex = build_simplex(simplex[0])
            fv = np.concatenate([fv[:1], -objective.batch(simplex[1:])])
            order = np.argsort(fv, kind="stable")
            simplex, fv = simplex[order], fv[order]

        centroid = simplex[:-1].mean(axis=0)
        xr = centroid + REFLECT * (centroid - simplex[-1])
        fr = -objective.evaluate(xr)
        if fr < fv[0]:
            xe = centroid + EXPAND * (centroid - simplex[-1])
            fe = -objective.evaluate(xe)
            if fe < fr:
                simplex[-1], fv[-1] = xe, fe
            else:
                simplex[-1], fv[-1] = xr, fr
        elif fr < fv[-2]:
            simplex[-1], fv[-1] = xr, fr
        else:
            if fr < fv[-1]:  # outside contraction
                xc = centroid + CONTRACT * (xr - centroid)
                fc = -objective.evaluate(xc)
                accept, xa, fa = fc <= fr, xc, fc
            else:  # inside contraction
                xc = centroid + CONTRACT * (simplex[-1] - centroid)
                fc = -objective.evaluate(xc)
                accept, xa, fa = fc < fv[-1], xc, fc
            if accept:
                simplex[-1], fv[-1] = xa, fa
            else:
                simplex[1:] = simplex[0] + SHRINK * (simplex[1:] - simplex[0])
                fv[1:] = -objective.batch(simplex[1:])

        best_hist.append(float(-fv.min()))
        stop = monitor.push(best_hist[-1])
        if stop:
            reason = stop
            break

    best_idx = int(np.argmin(fv))
    return OptimizerTrace(np.array(best_hist), simplex[best_idx].copy(), reason)
