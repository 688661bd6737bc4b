"""Piecewise-constant control model: propagation, fidelity, derivatives.

A control problem is a drift Hamiltonian H_dr, a list of control
Hamiltonians H_c[l], a target unitary, a horizon T and a bin count K.
A control field assigns a real amplitude to every (bin, control) pair;
the realized evolution is the ordered product of per-bin exponentials

    U = U_K ... U_2 U_1,   U_k = exp(-i (H_dr + sum_l eps[k,l] H_c[l]) T/K)

and its quality against the target is the phase-sensitive fidelity
F = Re Tr(target^dag U) / N, reported also as log10(1 - F) clamped at
the double-precision floor of -16.

Derivatives of F are exact: each bin exponential is differentiated in
its eigenbasis through the divided-difference kernel, then chained
through the bin product with cached forward/backward partial products.
This matters because the bins are long (T/K up to ~0.8), so the usual
first-order -i*dt*H_c approximation would be far too crude for
quasi-Newton line searches.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .linalg import (
    HermitianMatrix,
    UnitaryMatrix,
    hermitian_eig,
    phase_divided_difference,
)

LOG_INFIDELITY_FLOOR = -16.0
_MACHINE_INFIDELITY = 1e-16


@dataclass(frozen=True)
class ControlProblem:
    """Immutable bundle: drift, controls, target, horizon T, bin count K."""

    drift: HermitianMatrix
    controls: tuple[HermitianMatrix, ...]
    target: UnitaryMatrix
    horizon: float
    bins: int

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(self.controls))
        if not self.controls:
            raise ValueError("need at least one control Hamiltonian")
        dims = {self.drift.dim, self.target.dim} | {c.dim for c in self.controls}
        if len(dims) != 1:
            raise ValueError(f"inconsistent matrix dimensions: {sorted(dims)}")
        if not (self.horizon > 0 and np.isfinite(self.horizon)):
            raise ValueError(f"horizon must be positive and finite, got {self.horizon}")
        if self.bins < 1:
            raise ValueError(f"bin count must be >= 1, got {self.bins}")

    @property
    def dim(self) -> int:
        return self.drift.dim

    @property
    def n_controls(self) -> int:
        return len(self.controls)

    @property
    def dimension(self) -> int:
        """Number of real optimization parameters D = K * L."""
        return self.bins * self.n_controls

    @property
    def dt(self) -> float:
        return self.horizon / self.bins

    def control_stack(self) -> np.ndarray:
        """(L, N, N) array of the control Hamiltonians."""
        return np.stack([c.array for c in self.controls])


@dataclass(frozen=True)
class ControlField:
    """K x L real amplitude table.

    Flattening is bin-major: the D = K*L vector lists all L control
    amplitudes of bin 1, then bin 2 and so on (C-order reshape).
    """

    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.array(self.amplitudes, dtype=np.float64, copy=True)
        if a.ndim != 2:
            raise ValueError(f"amplitudes must be 2-d (bins x controls), got ndim={a.ndim}")
        if not np.all(np.isfinite(a)):
            raise ValueError("amplitudes must be finite")
        a.setflags(write=False)
        object.__setattr__(self, "amplitudes", a)

    @classmethod
    def from_flat(cls, vec: np.ndarray, bins: int, n_controls: int) -> "ControlField":
        v = np.asarray(vec, dtype=np.float64)
        if v.size != bins * n_controls:
            raise ValueError(f"expected {bins * n_controls} amplitudes, got {v.size}")
        return cls(v.reshape(bins, n_controls))

    @classmethod
    def zero(cls, problem: ControlProblem) -> "ControlField":
        return cls(np.zeros((problem.bins, problem.n_controls)))

    @property
    def flat(self) -> np.ndarray:
        return self.amplitudes.reshape(-1)


@dataclass(frozen=True)
class ObjectiveEvaluation:
    """Fidelity F, its log-infidelity L = log10(1-F), and the realized unitary."""

    fitness: float
    log_infidelity: float
    propagated: UnitaryMatrix


def log_infidelity(fitness: float) -> float:
    """log10(1 - F), clamped to the double-precision floor of -16."""
    infid = 1.0 - fitness
    if infid <= _MACHINE_INFIDELITY:
        return LOG_INFIDELITY_FLOOR
    return max(float(np.log10(infid)), LOG_INFIDELITY_FLOOR)


def _amps_table(problem: ControlProblem, field_or_vec) -> np.ndarray:
    if isinstance(field_or_vec, ControlField):
        a = field_or_vec.amplitudes
        if a.shape != (problem.bins, problem.n_controls):
            raise ValueError(
                f"field shape {a.shape} does not match problem "
                f"({problem.bins} bins x {problem.n_controls} controls)"
            )
        return a
    return ControlField.from_flat(field_or_vec, problem.bins, problem.n_controls).amplitudes


def propagate_many(problem: ControlProblem, flat_fields: np.ndarray) -> np.ndarray:
    """Propagate a batch of flattened fields; returns (n, N, N) unitaries.

    One batched eigendecomposition covers all bins of all fields, which
    keeps population-based optimizers cheap.
    """
    x = np.atleast_2d(np.asarray(flat_fields, dtype=np.float64))
    n = x.shape[0]
    k, nn = problem.bins, problem.dim
    amps = x.reshape(n, k, problem.n_controls)
    h = problem.drift.array[None, None] + np.einsum(
        "nkl,lij->nkij", amps, problem.control_stack()
    )
    w, v = np.linalg.eigh(h.reshape(n * k, nn, nn))
    phases = np.exp(-1j * problem.dt * w)
    u = (v * phases[:, None, :]) @ v.conj().transpose(0, 2, 1)
    u = u.reshape(n, k, nn, nn)
    total = u[:, 0]
    for kk in range(1, k):
        total = u[:, kk] @ total
    return total


def fitness_many(problem: ControlProblem, flat_fields: np.ndarray) -> np.ndarray:
    """Batch fidelity F = Re Tr(target^dag U) / N for (n, D) flattened fields."""
    u = propagate_many(problem, flat_fields)
    f = np.einsum("ij,nij->n", problem.target.array.conj(), u).real / problem.dim
    return np.clip(f, -1.0, 1.0)


def propagate(problem: ControlProblem, field: ControlField) -> UnitaryMatrix:
    """Realized evolution U_K ... U_1 for one field."""
    amps = _amps_table(problem, field)
    return UnitaryMatrix(propagate_many(problem, amps.reshape(1, -1))[0])


def fidelity(problem: ControlProblem, field: ControlField) -> ObjectiveEvaluation:
    u = propagate(problem, field)
    f = float(
        np.sum(problem.target.array.conj() * u.array).real / problem.dim
    )
    f = min(max(f, -1.0), 1.0)
    return ObjectiveEvaluation(fitness=f, log_infidelity=log_infidelity(f), propagated=u)


def _bin_eigs(problem: ControlProblem, amps: np.ndarray):
    """Per-bin eigendecompositions and propagators for one field."""
    h = problem.drift.array[None] + np.einsum("kl,lij->kij", amps, problem.control_stack())
    w, v = np.linalg.eigh(h)
    u = (v * np.exp(-1j * problem.dt * w)[:, None, :]) @ v.conj().transpose(0, 2, 1)
    return w, v, u


def bin_propagators(problem: ControlProblem, field: ControlField) -> np.ndarray:
    """(K, N, N) per-bin propagators U_k = exp(-i H_k dt)."""
    return _bin_eigs(problem, _amps_table(problem, field))[2]


def gradient(problem: ControlProblem, field: ControlField) -> np.ndarray:
    """Exact dF/d eps[k,l] as a flat D-vector (bin-major).

    For bin k with H_k = V diag(w) V^dag, the derivative of the bin
    exponential along H_c is V (Gamma * (V^dag H_c V)) V^dag with Gamma
    the divided-difference kernel; the chain rule through the ordered
    product uses forward products F_k = U_k..U_1 and backward products
    B_k = U_K..U_{k+1}.
    """
    amps = _amps_table(problem, field)
    k, nn, nctrl = problem.bins, problem.dim, problem.n_controls
    w, v, u = _bin_eigs(problem, amps)

    fwd = np.empty((k + 1, nn, nn), dtype=np.complex128)
    fwd[0] = np.eye(nn)
    for i in range(k):
        fwd[i + 1] = u[i] @ fwd[i]
    bwd = np.empty((k + 1, nn, nn), dtype=np.complex128)
    bwd[k] = np.eye(nn)
    for i in range(k - 1, -1, -1):
        bwd[i] = bwd[i + 1] @ u[i]

    ctrl = problem.control_stack()
    tgt_dag = problem.target.array.conj().T
    grad = np.empty(k * nctrl)
    for i in range(k):
        gamma = phase_divided_difference(w[i], problem.dt)
        # Tr(T^dag B_{i+1} D F_i) = Tr((V^dag F_i T^dag B_{i+1} V) (Gamma * C))
        z = v[i].conj().T @ (fwd[i] @ tgt_dag @ bwd[i + 1]) @ v[i]
        zg = z.T * gamma
        for l in range(nctrl):
            c = v[i].conj().T @ ctrl[l] @ v[i]
            grad[i * nctrl + l] = np.sum(zg * c).real / nn
    return grad


def fd_hessian_of(fn: Callable[[np.ndarray], float], x: np.ndarray, h: float) -> np.ndarray:
    """Symmetrized central second differences of a scalar function."""
    if not h > 0:
        raise ValueError(f"step h must be positive, got {h}")
    x = np.asarray(x, dtype=np.float64)
    d = x.size
    hess = np.empty((d, d))
    f0 = fn(x)
    for i in range(d):
        ei = np.zeros(d)
        ei[i] = h
        hess[i, i] = (fn(x + ei) - 2.0 * f0 + fn(x - ei)) / h**2
        for j in range(i + 1, d):
            ej = np.zeros(d)
            ej[j] = h
            v = (
                fn(x + ei + ej) - fn(x + ei - ej) - fn(x - ei + ej) + fn(x - ei - ej)
            ) / (4.0 * h**2)
            hess[i, j] = hess[j, i] = v
    return 0.5 * (hess + hess.T)


def fd_hessian(problem: ControlProblem, field: ControlField, h: float = 1e-4) -> np.ndarray:
    """Finite-difference Hessian of the fidelity at the given field."""
    x0 = _amps_table(problem, field).reshape(-1)
    return fd_hessian_of(lambda x: float(fitness_many(problem, x[None, :])[0]), x0, h)
