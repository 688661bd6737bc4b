"""The two benchmark problems, with every constant baked in.

Qutrit phase gate
    A three-level system with diagonal drift diag(1 + pi/T, 1, 2) and a
    single real symmetric control.  The target phases (phi, gamma) are
    chosen so that the zero field is a certified trap of the fidelity
    landscape: exactly critical for every T and K, with a negative
    definite Hessian.  The arcsin branch of phi and the relative phase
    orientation of the gate are fixed by that certification; flipping
    either turns the critical point into an escapable saddle.

Controlled-NOT
    Two qubits with an Ising-type drift (J/2) Z(x)Z and the four local
    controls X(x)1, 1(x)X, Y(x)1, 1(x)Y, using the standard Pauli
    matrices.  All five generators are traceless, so the realized
    evolution has unit determinant while det(CNOT) = -1; the benchmark
    target is therefore the determinant-one representative
    exp(i pi/4) * CNOT, without which no control could ever close the
    gap (the phase-sensitive fidelity would cap at sqrt(2)/2).
"""

from __future__ import annotations

from dataclasses import dataclass
import math

import numpy as np

from .linalg import ComplexMatrix, HermitianMatrix, UnitaryMatrix, kron
from .model import ControlProblem

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY_2 = np.eye(2, dtype=complex)

# The plain permutation gate; real, orthogonal, squares to identity.
CNOT_GATE = np.array(
    [[1, 0, 0, 0],
     [0, 1, 0, 0],
     [0, 0, 0, 1],
     [0, 0, 1, 0]], dtype=complex)

# det(CNOT_GATE) = -1; this phase moves it into the unit-determinant
# group reachable by traceless Hamiltonians.
CNOT_SU_PHASE = np.exp(1j * np.pi / 4)


@dataclass(frozen=True)
class QutritSpec:
    """Qutrit phase-gate problem parameters.

    phi defaults to arcsin(-(b+c)*cos(gamma)/a) on the principal branch,
    the value that makes the zero field critical.
    """

    T: float
    K: int
    a: float = 2.0
    b: float = 2.0
    c: float = 1.0
    gamma: float = 5.0 * math.pi / 3.0
    phi: float | None = None

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError(f"T must be positive, got {self.T}")
        if self.K < 1:
            raise ValueError(f"K must be >= 1, got {self.K}")
        s = -(self.b + self.c) * math.cos(self.gamma) / self.a
        if abs(s) > 1.0:
            raise ValueError(
                f"|(b+c)*cos(gamma)/a| = {abs(s):.4f} > 1: no real phi satisfies "
                "the zero-field criticality condition"
            )
        if self.phi is None:
            object.__setattr__(self, "phi", math.asin(s))

    @property
    def sin_phi(self) -> float:
        return math.sin(self.phi)


@dataclass(frozen=True)
class CnotSpec:
    """CNOT problem parameters; J is the ZZ coupling (time units set by J=1)."""

    T: float
    K: int
    J: float = 1.0

    def __post_init__(self):
        if not self.T > 0:
            raise ValueError(f"T must be positive, got {self.T}")
        if self.K < 1:
            raise ValueError(f"K must be >= 1, got {self.K}")


def make_qutrit_problem(spec: QutritSpec) -> ControlProblem:
    """Three-level phase-gate problem with the trap-certified target.

    target = exp(-i T H_dr) * diag(e^{i phi}, i e^{i gamma}, i e^{-i gamma})
    """
    drift_diag = np.array([1.0 + math.pi / spec.T, 1.0, 2.0])
    drift = HermitianMatrix(np.diag(drift_diag).astype(complex))
    control = HermitianMatrix(np.array(
        [[spec.a, 1.0, 0.0],
         [1.0, spec.b, 1.0],
         [0.0, 1.0, spec.c]], dtype=complex))
    drift_prefactor = np.diag(np.exp(-1j * spec.T * drift_diag))
    phase_gate = np.diag([
        np.exp(1j * spec.phi),
        1j * np.exp(1j * spec.gamma),
        1j * np.exp(-1j * spec.gamma),
    ])
    target = UnitaryMatrix(drift_prefactor @ phase_gate)
    return ControlProblem(drift=drift, controls=(control,), target=target,
                          horizon=spec.T, bins=spec.K)


def make_cnot_problem(spec: CnotSpec) -> ControlProblem:
    """Ising-drift CNOT problem; control order X(x)1, 1(x)X, Y(x)1, 1(x)Y."""
    zz = kron(ComplexMatrix(PAULI_Z), ComplexMatrix(PAULI_Z)).array
    drift = HermitianMatrix(0.5 * spec.J * zz)
    controls = tuple(
        HermitianMatrix(kron(ComplexMatrix(a), ComplexMatrix(b)).array)
        for a, b in (
            (PAULI_X, IDENTITY_2),
            (IDENTITY_2, PAULI_X),
            (PAULI_Y, IDENTITY_2),
            (IDENTITY_2, PAULI_Y),
        )
    )
    target = UnitaryMatrix(CNOT_SU_PHASE * CNOT_GATE)
    return ControlProblem(drift=drift, controls=controls, target=target,
                          horizon=spec.T, bins=spec.K)


PROBLEM_IDS = ("qutrit", "cnot")


def problem_by_name(name: str, T: float, K: int, **kwargs) -> ControlProblem:
    """Factory addressable from config files: "qutrit" or "cnot"."""
    if name == "qutrit":
        return make_qutrit_problem(QutritSpec(T=T, K=K, **kwargs))
    if name == "cnot":
        return make_cnot_problem(CnotSpec(T=T, K=K, **kwargs))
    raise ValueError(f"unknown problem {name!r}; known: {', '.join(PROBLEM_IDS)}")
