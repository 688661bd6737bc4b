"""Sequential bin-wise first-order update for control objectives.

A lightweight stand-in for monotonically convergent pulse updates: one
iteration sweeps the bins k = 1..K in order and nudges every amplitude
along the first-order ascent direction

    eps[k,l] += (1/alpha) * (dt/N) * Im Tr(target^dag B_k H_c[l] P_k)

where P_k is the forward product up to and including bin k (bins before
k already updated this sweep) and B_k the backward product of the
not-yet-updated tail.  A sweep that fails to improve the fidelity is
reverted and the step weight 1/alpha is halved.
"""

from __future__ import annotations

import numpy as np

from ..model import fitness_many
from .base import Objective, OptimizerConfig, OptimizerTrace, monitor_for, resolve


def krotov(objective: Objective, config: OptimizerConfig, seed: int,
           initial: np.ndarray | None = None) -> OptimizerTrace:
    problem = objective.problem
    if problem is None:
        raise ValueError("krotov requires a ControlProblem-backed objective")
    config = resolve(config, objective)
    rng = np.random.default_rng(seed)
    k, nctrl, nn = problem.bins, problem.n_controls, problem.dim
    dt = problem.dt
    alpha = config.param("alpha", 1.0)

    ctrl = problem.control_stack()
    drift = problem.drift.array
    tgt_dag = problem.target.array.conj().T

    def bin_u(amp_row: np.ndarray) -> np.ndarray:
        h = drift + np.einsum("l,lij->ij", amp_row, ctrl)
        w, v = np.linalg.eigh(h)
        return (v * np.exp(-1j * dt * w)[None, :]) @ v.conj().T

    def fitness(amps: np.ndarray) -> float:
        return float(fitness_many(problem, amps.reshape(1, -1))[0])

    if initial is None:
        amps = rng.uniform(config.init_low, config.init_high, (k, nctrl))
    else:
        amps = np.asarray(initial, dtype=np.float64).reshape(k, nctrl).copy()

    best_f = fitness(amps)
    best_amps = amps.copy()
    monitor = monitor_for(config)
    best_hist = [best_f]
    reason = "max_iter"

    for _ in range(config.max_iterations):
        u = np.stack([bin_u(amps[i]) for i in range(k)])
        back = np.empty((k + 1, nn, nn), dtype=np.complex128)
        back[k] = np.eye(nn)
        for i in range(k - 1, -1, -1):
            back[i] = back[i + 1] @ u[i]

        new = amps.copy()
        fwd = np.eye(nn, dtype=np.complex128)
        for i in range(k):
            p_k = u[i] @ fwd  # bin i at its pre-update amplitude
            head = tgt_dag @ back[i + 1]
            for l in range(nctrl):
                step = (dt / nn) * np.imag(np.trace(head @ ctrl[l] @ p_k))
                new[i, l] = amps[i, l] + step / alpha
            fwd = bin_u(new[i]) @ fwd

        f_new = fitness(new)
        if f_new > best_f:
            amps, best_f, best_amps = new, f_new, new.copy()
        else:
            alpha *= 2.0  # halve the effective step, keep the old field

        best_hist.append(best_f)
        stop = monitor.push(best_f)
        if stop:
            reason = stop
            break

    return OptimizerTrace(np.array(best_hist), best_amps.reshape(-1), reason)
