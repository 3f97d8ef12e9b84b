import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from bigspin.cat import initial_composite
from bigspin.dynamics import (
    TimeGrid,
    attractor_time,
    evolve,
    fidelity,
    linear_entropy,
    rabi_period,
    reduce_bigspin,
    reduce_qubit,
    sliding_envelope,
    state_at,
)
from bigspin.hamiltonians import CompositeState, ModelParams, composite_from_parts


def random_composite(n, seed):
    rng = np.random.default_rng(seed)
    amps = rng.normal(size=2 * (n + 1)) + 1j * rng.normal(size=2 * (n + 1))
    amps /= np.linalg.norm(amps)
    return CompositeState(n, amps)


class TestEvolve:
    def test_identity_at_t0(self):
        psi0 = initial_composite(6, 1.5)
        params = ModelParams(omega=1.0, Omega=1.0, lam=1.0, N=6)
        out = state_at(params, psi0, 0.0)
        assert np.allclose(out, psi0.amplitudes, atol=1e-14)

    def test_single_block_rabi(self):
        # N=1, qubit |0>, big spin all-down: <sigma_z(t)> = cos(2 lam t)
        lam = 0.7
        params = ModelParams(omega=1.0, Omega=1.0, lam=lam, N=1)
        psi0 = composite_from_parts(np.array([1.0, 0.0]), np.array([1.0, 0.0]))
        grid = TimeGrid(0.0, 8.0, 400)
        traj = evolve(params, psi0, grid)
        assert np.max(np.abs(traj.sigma_z - np.cos(2 * lam * grid.times))) < 1e-12

    @given(seed=st.integers(0, 1000))
    def test_norm_and_energy_conserved(self, seed):
        n = 12
        params = ModelParams(omega=1.1, Omega=0.9, lam=0.8, N=n)
        psi0 = random_composite(n, seed)
        traj = evolve(params, psi0, TimeGrid(0.0, 20.0, 64))
        norms = np.linalg.norm(traj.states, axis=1)
        assert np.max(np.abs(norms - 1.0)) < 1e-10
        assert np.ptp(traj.energy) < 1e-10 * max(1.0, abs(traj.energy[0]))

    def test_block_matches_dense(self):
        n = 17
        params = ModelParams(omega=0.9, Omega=1.3, lam=0.6, N=n)
        psi0 = random_composite(n, 5)
        grid = TimeGrid(0.0, 15.0, 40)
        a = evolve(params, psi0, grid).states
        b = evolve(params, psi0, grid, method="dense").states
        assert np.max(np.linalg.norm(a - b, axis=1)) < 1e-10

    def test_dense_matrix_input(self):
        from bigspin.hamiltonians import build_spin_hamiltonian

        n = 5
        params = ModelParams(omega=1.0, Omega=1.0, lam=1.0, N=n)
        h = build_spin_hamiltonian(params)
        psi0 = random_composite(n, 3)
        a = state_at(params, psi0, 2.5)
        b = state_at(h, psi0, 2.5)
        assert np.allclose(a, b, atol=1e-12)

    def test_lean_mode_matches(self):
        n = 8
        params = ModelParams(omega=1.0, Omega=1.0, lam=1.0, N=n)
        psi0 = initial_composite(n, 1.0)
        grid = TimeGrid(0.0, 10.0, 50)
        full = evolve(params, psi0, grid)
        lean = evolve(params, psi0, grid, lean=True)
        assert lean.states is None
        assert np.array_equal(full.sigma_z, lean.sigma_z)
        assert np.array_equal(full.qubit_linear_entropy, lean.qubit_linear_entropy)

    def test_dimension_mismatch(self):
        params = ModelParams(omega=1.0, Omega=1.0, lam=1.0, N=4)
        with pytest.raises(ValueError):
            evolve(params, random_composite(5, 0), TimeGrid(0.0, 1.0, 4))

    def test_grid_validation(self):
        with pytest.raises(ValueError):
            TimeGrid(0.0, 1.0, 1)
        with pytest.raises(ValueError):
            TimeGrid(1.0, 1.0, 10)


class TestReductions:
    def test_product_state_pure_qubit(self):
        psi = composite_from_parts(np.array([1.0, 0.0]), np.array([0.0, 0.6, 0.8]))
        assert np.allclose(reduce_qubit(psi), np.diag([1.0, 0.0]))

    def test_maximally_entangled(self):
        amps = np.zeros(4, dtype=complex)
        amps[0] = amps[3] = 1 / np.sqrt(2)  # (|0>|n=0> + |1>|n=1>)/sqrt2
        psi = CompositeState(1, amps)
        assert np.allclose(reduce_qubit(psi), np.eye(2) / 2)

    @given(seed=st.integers(0, 1000), n=st.integers(1, 20))
    def test_trace_and_hermiticity(self, seed, n):
        psi = random_composite(n, seed)
        for rho in (reduce_qubit(psi), reduce_bigspin(psi)):
            assert np.trace(rho).real == pytest.approx(1.0, abs=1e-12)
            assert np.max(np.abs(rho - rho.conj().T)) < 1e-12
            assert np.min(np.linalg.eigvalsh(rho)) > -1e-12

    @given(seed=st.integers(0, 1000))
    def test_purity_complementarity(self, seed):
        # the two reduced states of a pure composite state share their spectrum
        psi = random_composite(9, seed)
        eq = np.sort(np.linalg.eigvalsh(reduce_qubit(psi)))[::-1]
        es = np.sort(np.linalg.eigvalsh(reduce_bigspin(psi)))[::-1]
        assert np.max(np.abs(eq - es[:2])) < 1e-10


class TestScalarObservables:
    def test_linear_entropy_pure(self):
        assert linear_entropy(np.diag([1.0, 0.0])) == pytest.approx(0.0, abs=1e-14)

    def test_linear_entropy_mixed(self):
        assert linear_entropy(np.eye(2) / 2) == pytest.approx(1.0)

    def test_linear_entropy_value(self):
        assert linear_entropy(np.diag([0.9, 0.1])) == pytest.approx(0.36)

    def test_fidelity_same_state(self):
        v = np.array([0.6, 0.8j])
        assert fidelity(v, np.outer(v, v.conj())) == pytest.approx(1.0)

    def test_fidelity_orthogonal(self):
        v = np.array([1.0, 0.0])
        w = np.array([0.0, 1.0])
        assert fidelity(v, np.outer(w, w.conj())) == pytest.approx(0.0, abs=1e-14)

    def test_fidelity_maximally_mixed(self):
        n = 7
        v = np.zeros(n + 1)
        v[2] = 1.0
        assert fidelity(v, np.eye(n + 1) / (n + 1)) == pytest.approx(1 / np.sqrt(n + 1))

    def test_fidelity_dimension_mismatch(self):
        with pytest.raises(ValueError, match="dimension mismatch"):
            fidelity(np.array([1.0, 0.0]), np.eye(3) / 3)


class TestAttractorTime:
    def test_zero_at_origin(self):
        assert attractor_time(50, 0.0, 1.0) == 0.0

    def test_finite_n_value(self):
        assert attractor_time(170, 4.0, 1.0) == pytest.approx(12.013729594452281, abs=1e-12)

    def test_infinite_n(self):
        assert attractor_time(float("inf"), 4.0, 1.0) == pytest.approx(4 * np.pi)

    def test_matches_entropy_structure(self):
        # the closed form sits inside the broad entropy dip of the exact dynamics
        n, zeta = 170, 4.0
        t0 = attractor_time(n, zeta, 1.0)
        params = ModelParams(omega=1.0, Omega=1.0, lam=1.0, N=n)
        grid = TimeGrid(0.3 * t0, 1.7 * t0, 600)
        traj = evolve(params, initial_composite(n, zeta), grid, lean=True)
        s_t0 = traj.qubit_linear_entropy[np.argmin(np.abs(grid.times - t0))]
        assert s_t0 < 0.2 * traj.qubit_linear_entropy.max()

    def test_lambda_validation(self):
        with pytest.raises(ValueError):
            attractor_time(10, 1.0, 0.0)


class TestEnvelope:
    def test_sliding_envelope_bounds(self):
        times = np.linspace(0, 10, 1000)
        vals = np.cos(7 * times) * np.exp(-times / 5)
        env = sliding_envelope(vals, times, 2 * np.pi / 7)
        assert np.all(env >= np.abs(vals) - 1e-12)
        assert env.max() <= 1.0

    def test_rabi_period_value(self):
        nbar = 16 / (1 + 16 / 170)
        assert rabi_period(170, 4.0, 1.0) == pytest.approx(np.pi / np.sqrt(nbar))
