"""Control model: propagation, fidelity, exact gradient, FD Hessian."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import hardctrl as hc
from hardctrl.model import fd_hessian_of, fitness_many

from conftest import cnot_problem, qutrit_problem, random_hermitian, toy_qubit_problem


def fd_gradient(problem, x, h=1e-6):
    x = np.asarray(x, dtype=float)
    out = np.empty_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        out[i] = (fitness_many(problem, (x + e)[None])[0]
                  - fitness_many(problem, (x - e)[None])[0]) / (2 * h)
    return out


class TestPropagate:
    def test_zero_field_is_drift_evolution(self, rng):
        p = qutrit_problem()
        u = hc.propagate(p, hc.ControlField.zero(p))
        ref = hc.expm_hermitian(p.drift, p.horizon)
        assert np.max(np.abs(u.array - ref.array)) <= 1e-12

    def test_cnot_drift_only_phases(self):
        p = cnot_problem()  # T = 3.2, drift (J/2) Z(x)Z with eigenvalues +-1/2
        u = hc.propagate(p, hc.ControlField.zero(p))
        phases = np.exp(-1j * 3.2 * 0.5 * np.array([1, -1, -1, 1]))
        assert np.max(np.abs(u.array - np.diag(phases))) <= 1e-12

    def test_constant_field_is_bin_refinement_invariant(self):
        f1 = hc.ControlField(np.full((1, 1), 0.37))
        f2 = hc.ControlField(np.full((2, 1), 0.37))
        u1 = hc.propagate(qutrit_problem(K=1), f1)
        u2 = hc.propagate(qutrit_problem(K=2), f2)
        assert np.max(np.abs(u1.array - u2.array)) <= 1e-12

    def test_dimension_mismatch_rejected(self):
        p = qutrit_problem()
        with pytest.raises(ValueError):
            hc.propagate(p, hc.ControlField(np.zeros((3, 2))))

    @given(seed=st.integers(0, 2**32 - 1))
    def test_output_unitary_for_any_finite_field(self, seed):
        p = qutrit_problem(K=6)
        x = np.random.default_rng(seed).uniform(-8, 8, p.dimension)
        u = hc.propagate(p, hc.ControlField.from_flat(x, p.bins, p.n_controls))
        dev = np.max(np.abs(u.array.conj().T @ u.array - np.eye(p.dim)))
        assert dev <= 1e-10


class TestFidelity:
    def test_self_fidelity_hits_clamp(self):
        # zero drift and zero field propagate to the exact identity, so
        # the identity target realizes F = 1.0 and the clamped L = -16
        zero = hc.HermitianMatrix(np.zeros((2, 2), dtype=complex))
        p = hc.ControlProblem(drift=zero, controls=(zero,),
                              target=hc.UnitaryMatrix(np.eye(2, dtype=complex)),
                              horizon=1.0, bins=2)
        ev = hc.fidelity(p, hc.ControlField.zero(p))
        assert ev.fitness == 1.0
        assert ev.log_infidelity == -16.0

    def test_self_fidelity_through_roundoff(self):
        # a target equal to the propagated matrix is self-matched only to
        # propagation roundoff; F stays within 1e-14 of exact unity
        base = qutrit_problem()
        drift_only = hc.propagate(base, hc.ControlField.zero(base))
        p = hc.ControlProblem(drift=base.drift, controls=base.controls,
                              target=drift_only, horizon=base.horizon, bins=base.bins)
        ev = hc.fidelity(p, hc.ControlField.zero(p))
        assert ev.fitness == pytest.approx(1.0, abs=1e-14)
        assert ev.log_infidelity <= -14.0

    def test_qutrit_zero_field_value(self):
        # target and drift evolution differ only by the diagonal phase
        # gate, so F(0) is the 3-term sum Re(e^{-i phi} - 2i cos gamma)/3
        ev = hc.fidelity(qutrit_problem(), hc.ControlField.zero(qutrit_problem()))
        phi = math.asin(-0.75)
        gamma = 5 * math.pi / 3
        oracle = (np.exp(-1j * phi) - 2j * math.cos(gamma)).real / 3.0
        assert ev.fitness == pytest.approx(oracle, abs=1e-12)
        assert ev.fitness == pytest.approx(math.cos(math.asin(-0.75)) / 3.0, abs=1e-10)
        assert ev.log_infidelity == pytest.approx(-0.10817, abs=5e-5)

    def test_cnot_zero_field_value(self):
        p = cnot_problem()
        ev = hc.fidelity(p, hc.ControlField.zero(p))
        drift_phases = np.exp(-1j * 3.2 * 0.5 * np.array([1, -1, -1, 1]))
        oracle = sum(np.conj(p.target.array[j, j]) * drift_phases[j] for j in range(4)).real / 4
        assert ev.fitness == pytest.approx(oracle, abs=1e-12)

    @given(seed=st.integers(0, 2**32 - 1))
    def test_fitness_bounded(self, seed):
        p = cnot_problem(K=2)
        x = np.random.default_rng(seed).uniform(-6, 6, p.dimension)
        f = float(fitness_many(p, x[None])[0])
        assert -1.0 <= f <= 1.0

    @given(seed=st.integers(0, 2**32 - 1))
    def test_bin_doubling_with_duplicated_amplitudes(self, seed):
        rng = np.random.default_rng(seed)
        k = 5
        amps = rng.uniform(-1, 1, (k, 1))
        f_coarse = hc.fidelity(qutrit_problem(K=k), hc.ControlField(amps))
        f_fine = hc.fidelity(qutrit_problem(K=2 * k),
                             hc.ControlField(np.repeat(amps, 2, axis=0)))
        assert f_coarse.fitness == pytest.approx(f_fine.fitness, abs=1e-12)

    def test_log_infidelity_monotone_and_clamped(self):
        fs = np.linspace(-1, 1 - 1e-12, 50)
        ls = [hc.log_infidelity(f) for f in fs]
        assert all(a >= b for a, b in zip(ls, ls[1:]))
        assert hc.log_infidelity(1.0) == -16.0
        assert hc.log_infidelity(1.0 - 1e-17) == -16.0


class TestGradient:
    def test_zero_field_is_critical_point(self):
        p = qutrit_problem()
        g = hc.gradient(p, hc.ControlField.zero(p))
        assert np.max(np.abs(g)) <= 1e-10

    def test_matches_finite_differences_qutrit(self, rng):
        p = qutrit_problem(K=6)
        for _ in range(10):
            x = rng.uniform(-1, 1, p.dimension)
            g = hc.gradient(p, hc.ControlField.from_flat(x, p.bins, p.n_controls))
            g_fd = fd_gradient(p, x)
            err = np.abs(g - g_fd)
            assert np.all(err <= 1e-6 * np.abs(g_fd) + 1e-10)

    def test_matches_finite_differences_cnot(self, rng):
        p = cnot_problem()
        for _ in range(10):
            x = rng.uniform(-1, 1, p.dimension)
            g = hc.gradient(p, hc.ControlField.from_flat(x, p.bins, p.n_controls))
            g_fd = fd_gradient(p, x)
            err = np.abs(g - g_fd)
            assert np.all(err <= 1e-6 * np.abs(g_fd) + 1e-10)

    def test_zero_at_exact_optimum(self, rng):
        # build a problem whose target is exactly reachable, then stand there
        base = toy_qubit_problem()
        x = np.full(base.dimension, 0.5)
        g = hc.gradient(base, hc.ControlField.from_flat(x, base.bins, base.n_controls))
        assert np.max(np.abs(g)) <= 1e-8


class TestFdHessian:
    def test_quadratic_oracle(self, rng):
        a = rng.uniform(-1, 1, (4, 4))
        a = 0.5 * (a + a.T)
        hess = fd_hessian_of(lambda x: float(x @ a @ x), rng.uniform(-1, 1, 4), h=1e-4)
        assert np.max(np.abs(hess - 2 * a)) <= 1e-6

    def test_single_parameter_consistency(self):
        p = qutrit_problem(K=1)
        h = 1e-4
        hess = hc.fd_hessian(p, hc.ControlField(np.full((1, 1), 0.3)), h=h)

        def f(val):
            return float(fitness_many(p, np.array([[val]]))[0])

        scalar = (f(0.3 + h) - 2 * f(0.3) + f(0.3 - h)) / h**2
        assert hess.shape == (1, 1)
        assert hess[0, 0] == pytest.approx(scalar, rel=1e-10)

    def test_requires_positive_step(self):
        p = qutrit_problem(K=1)
        with pytest.raises(ValueError):
            hc.fd_hessian(p, hc.ControlField.zero(p), h=0.0)

    def test_trap_certification(self):
        p = qutrit_problem()
        hess = hc.fd_hessian(p, hc.ControlField.zero(p))
        assert np.max(np.linalg.eigvalsh(hess)) <= 1e-6


class TestControlField:
    def test_flattening_is_bin_major(self):
        f = hc.ControlField(np.array([[1.0, 2.0], [3.0, 4.0]]))
        assert np.array_equal(f.flat, [1.0, 2.0, 3.0, 4.0])
        back = hc.ControlField.from_flat(f.flat, 2, 2)
        assert np.array_equal(back.amplitudes, f.amplitudes)

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError):
            hc.ControlField(np.array([[np.inf]]))

    def test_rejects_wrong_size(self):
        with pytest.raises(ValueError):
            hc.ControlField.from_flat(np.zeros(5), 2, 2)
