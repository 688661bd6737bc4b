"""Shared builders and hypothesis profile for the test suite."""

from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

import hardctrl as hc
from hardctrl.optimizers import Objective

settings.register_profile(
    "numeric",
    deadline=None,
    max_examples=25,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("numeric")


QUTRIT_HARD = dict(T=2.5 * math.pi, K=10)
QUTRIT_EASY = dict(T=10.0 * math.pi, K=50)
CNOT_HARD = dict(T=3.2, K=4)


def qutrit_problem(**kwargs) -> hc.ControlProblem:
    return hc.make_qutrit_problem(hc.QutritSpec(**{**QUTRIT_HARD, **kwargs}))


def cnot_problem(**kwargs) -> hc.ControlProblem:
    return hc.make_cnot_problem(hc.CnotSpec(**{**CNOT_HARD, **kwargs}))


def sphere_objective(dim: int = 10) -> Objective:
    """Maximize -||x||^2; optimum 0 at the origin."""
    return Objective(
        dim=dim,
        evaluate=lambda x: float(-np.sum(np.square(x))),
        gradient=lambda x: -2.0 * np.asarray(x),
        evaluate_batch=lambda xs: -np.sum(np.square(xs), axis=1),
    )


def toy_qubit_problem(K: int = 4, T: float = 2.0) -> hc.ControlProblem:
    """Single qubit, drift Z, control X; target reachable at amplitude 1/2."""
    drift = hc.HermitianMatrix(np.array([[1, 0], [0, -1]], dtype=complex))
    control = hc.HermitianMatrix(np.array([[0, 1], [1, 0]], dtype=complex))
    h = drift.array + 0.5 * control.array
    target = hc.expm_hermitian(hc.HermitianMatrix(h), T)
    return hc.ControlProblem(drift=drift, controls=(control,), target=target,
                             horizon=T, bins=K)


def random_hermitian(rng: np.random.Generator, dim: int, scale: float = 2.0):
    a = rng.uniform(-scale, scale, (dim, dim)) + 1j * rng.uniform(-scale, scale, (dim, dim))
    return hc.HermitianMatrix(0.5 * (a + a.conj().T))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240817)
