"""BFGS quasi-Newton ascent with backtracking Armijo line search."""

from __future__ import annotations

import numpy as np

from .base import Objective, OptimizerConfig, OptimizerTrace, monitor_for, resolve

_CURVATURE_MIN = 1e-12
_MAX_BACKTRACKS = 60


def bfgs(objective: Objective, config: OptimizerConfig, seed: int,
         initial: np.ndarray | None = None) -> OptimizerTrace:
    """Maximize F by BFGS on -F: identity initial inverse Hessian,
    Armijo backtracking (c = 1e-4, step shrink 0.5), inverse-Hessian
    update skipped whenever s.y <= 1e-12 so the estimate stays SPD.
    Line-search failure terminates the run with reason "stalled".
    """
    if objective.gradient is None:
        raise ValueError("bfgs requires an objective with a gradient")
    config = resolve(config, objective)
    d = objective.dim
    rng = np.random.default_rng(seed)
    c1 = config.param("armijo_c", 1e-4)
    shrink = config.param("backtrack", 0.5)

    x = (np.asarray(initial, dtype=np.float64) if initial is not None
         else rng.uniform(config.init_low, config.init_high, d))
    fx = objective.evaluate(x)
    g = -np.asarray(objective.gradient(x))  # gradient of -F
    h_inv = np.eye(d)

    monitor = monitor_for(config)
    best_hist = [float(fx)]
    reason = "max_iter"

    for _ in range(config.max_iterations):
        p = -h_inv @ g
        slope = g @ p
        if slope >= 0:  # not a descent direction for -F; g is (near) zero
            reason = "stalled"
            break
        alpha, ok = 1.0, False
        for _ in range(_MAX_BACKTRACKS):
            x_new = x + alpha * p
            f_new = objective.evaluate(x_new)
            if -f_new <= -fx + c1 * alpha * slope:
                ok = True
                break
            alpha *= shrink
        if not ok:
            reason = "stalled"
            break

        g_new = -np.asarray(objective.gradient(x_new))
        s = x_new - x
        y = g_new - g
        sy = s @ y
        if sy > _CURVATURE_MIN:
            rho = 1.0 / sy
            v = np.eye(d) - rho * np.outer(s, y)
            h_inv = v @ h_inv @ v.T + rho * np.outer(s, s)
        x, fx, g = x_new, f_new, g_new

        best_hist.append(float(fx))
        stop = monitor.push(best_hist[-1])
        if stop:
            reason = stop
            break

    return OptimizerTrace(np.array(best_hist), x.copy(), reason)
