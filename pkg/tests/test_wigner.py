import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bigspin.cat import reduced_bigspin_at
from bigspin.dicke import SpinCoherentParams, spin_coherent
from bigspin.dynamics import attractor_time
from bigspin.metrology import rotate_about_y
from bigspin.wigner import (
    SphereGrid,
    clebsch_gordan,
    multipole_decomposition,
    multipole_operator,
    overlap_constant,
    sphere_overlap,
    wigner_at,
    wigner_function,
)
from helpers import count_sign_changes, cat_lobe_structure


def pure_density(amps):
    return np.outer(amps, np.conj(amps))


class TestClebschGordan:
    def test_scalar_coupling(self):
        for j, m in ((0.5, -0.5), (3, 2), (7.5, 0.5)):
            assert clebsch_gordan(j, m, 0, 0, j, m) == pytest.approx(1.0, abs=1e-14)

    def test_singlet_values(self):
        val = clebsch_gordan(0.5, 0.5, 0.5, -0.5, 0, 0)
        assert val == pytest.approx(1 / np.sqrt(2), abs=1e-14)
        val2 = clebsch_gordan(0.5, -0.5, 0.5, 0.5, 0, 0)
        assert val2 == pytest.approx(-1 / np.sqrt(2), abs=1e-14)

    def test_selection_rules(self):
        assert clebsch_gordan(1, 1, 1, 1, 2, 1) == 0.0  # M != m1+m2
        assert clebsch_gordan(1, 0, 1, 0, 3, 0) == 0.0  # triangle violated

    @pytest.mark.parametrize("bad", [(0.3, 0, 1, 0, 1, 0), (1, 0.5, 1, 0, 2, 0.5),
                                     (1, 2, 1, 0, 2, 2), (-1, 0, 1, 0, 1, 0)])
    def test_invalid_arguments(self, bad):
        with pytest.raises(ValueError):
            clebsch_gordan(*bad)

    def test_orthogonality_j1(self):
        # sum over (m1, m2) of CG(J, M) CG(J', M') = delta for j1 = j2 = 1
        for args in (((2, 1), (2, 1)), ((2, 1), (1, 1)), ((1, 0), (1, 0)),
                     ((2, 0), (0, 0)), ((0, 0), (0, 0))):
            (J, M), (Jp, Mp) = args
            total = sum(
                clebsch_gordan(1, m1, 1, m2, J, M) * clebsch_gordan(1, m1, 1, m2, Jp, Mp)
                for m1 in (-1, 0, 1)
                for m2 in (-1, 0, 1)
            )
            expected = 1.0 if (J, M) == (Jp, Mp) else 0.0
            assert total == pytest.approx(expected, abs=1e-14)

    def test_completeness_brute_force_j2(self):
        # resolution of identity over J for all (m1, m2) pairs up to j = 2
        for j1, j2 in ((1.5, 1), (2, 2)):
            m1, m2 = j1 - 1, -j2 + 1
            total = 0.0
            jmin, jmax = abs(j1 - j2), j1 + j2
            jj = jmin
            while jj <= jmax + 1e-9:
                total += clebsch_gordan(j1, m1, j2, m2, jj, m1 + m2) ** 2
                jj += 1
            assert total == pytest.approx(1.0, abs=1e-12)

    def test_large_j_completeness(self):
        # exact fallback keeps big-j coefficients accurate despite cancellation
        j1, j2, m1, m2 = 200, 150, 3, -2
        total = 0.0
        for jj in range(j1 - j2, j1 + j2 + 1):
            val = clebsch_gordan(j1, m1, j2, m2, jj, m1 + m2)
            assert abs(val) <= 1.0 + 1e-12
            total += val**2
        assert total == pytest.approx(1.0, abs=1e-9)


class TestMultipoleOperators:
    def test_t00_is_normalized_identity(self):
        for j in (0.5, 1, 4.5):
            dim = int(2 * j) + 1
            t = multipole_operator(j, 0, 0)
            assert np.allclose(t, np.eye(dim) / np.sqrt(dim), atol=1e-14)

    def test_orthonormality_j1(self):
        ops = {(l, m): multipole_operator(1, l, m) for l in range(3) for m in range(-l, l + 1)}
        for (l, m), a in ops.items():
            for (lp, mp), b in ops.items():
                val = np.trace(a.conj().T @ b)
                expected = 1.0 if (l, m) == (lp, mp) else 0.0
                assert abs(val - expected) < 1e-13

    def test_t10_proportional_to_jz(self):
        j = 3
        t = multipole_operator(j, 1, 0)
        mu = np.arange(-j, j + 1)
        ratio = t[3, 3].real / mu[3] if mu[3] else None
        diag = np.diag(t).real
        nonzero = mu != 0
        ratios = diag[nonzero] / mu[nonzero]
        assert np.ptp(ratios) < 1e-12
        assert ratios[0] > 0

    def test_out_of_range(self):
        with pytest.raises(ValueError):
            multipole_operator(1, 3, 0)
        with pytest.raises(ValueError):
            multipole_operator(1, 1, 2)


class TestSphereGrid:
    def test_weights_sum_to_sphere(self):
        grid = SphereGrid(14, 17)
        assert grid.weights.sum() == pytest.approx(4 * np.pi, abs=1e-10)

    def test_nodes_interior(self):
        grid = SphereGrid(8, 8)
        assert np.all(grid.theta > 0) and np.all(grid.theta < np.pi)
        assert grid.phi[0] == 0.0 and grid.phi[-1] < 2 * np.pi


class TestWignerFunction:
    def test_maximally_mixed_flat(self):
        n = 9
        grid = SphereGrid(2 * n + 2, 2 * n + 2)
        w = wigner_function(np.eye(n + 1) / (n + 1), grid)
        assert np.max(np.abs(w - 1 / (4 * np.pi))) < 1e-12

    @given(n=st.integers(1, 12), seed=st.integers(0, 200))
    @settings(max_examples=15)
    def test_unit_integral(self, n, seed):
        rng = np.random.default_rng(seed)
        mat = rng.normal(size=(n + 1, n + 1)) + 1j * rng.normal(size=(n + 1, n + 1))
        rho = mat @ mat.conj().T
        rho /= np.trace(rho).real
        grid = SphereGrid(2 * n + 2, 2 * n + 2)
        w = wigner_function(rho, grid)
        assert np.sum(grid.weights * w) == pytest.approx(1.0, abs=1e-6)

    def test_real_for_hermitian(self):
        rng = np.random.default_rng(1)
        mat = rng.normal(size=(7, 7)) + 1j * rng.normal(size=(7, 7))
        rho = mat @ mat.conj().T
        rho /= np.trace(rho).real
        w = wigner_function(rho, SphereGrid(16, 16))
        assert w.dtype == float

    def test_coherent_state_lobe(self):
        n, zeta = 40, np.sqrt(6.0)
        state = spin_coherent(SpinCoherentParams(n, zeta, scaled=True))
        grid = SphereGrid(2 * n + 2, 2 * n + 2)
        w = wigner_function(pure_density(state.amplitudes), grid)
        i, j = np.unravel_index(np.argmax(w), w.shape)
        theta_star = 2 * np.arctan(zeta / np.sqrt(n))
        cell = np.max(np.diff(grid.theta))
        assert abs(grid.theta[i] - theta_star) <= cell
        assert grid.phi[j] == pytest.approx(0.0)

    def test_dicke_state_phi_independent(self):
        n = 8
        amps = np.zeros(n + 1)
        amps[3] = 1.0
        w = wigner_function(pure_density(amps), SphereGrid(2 * n + 2, 2 * n + 2))
        assert np.max(np.ptp(w, axis=1)) < 1e-10

    def test_all_down_peaks_at_north_pole(self):
        n = 10
        amps = np.zeros(n + 1)
        amps[0] = 1.0
        grid = SphereGrid(2 * n + 2, 2 * n + 2)
        w = wigner_function(pure_density(amps), grid)
        assert np.argmax(w[:, 0]) == 0  # theta ascending from the pole

    def test_rotational_covariance(self):
        # physical exp(i theta J_y) acts as the sphere rotation by +theta about Y
        n = 8
        state = spin_coherent(SpinCoherentParams(n, 1.2 + 0.4j))
        theta = np.pi / 2
        rho = pure_density(state.amplitudes)
        rho_rot = pure_density(rotate_about_y(state, theta).amplitudes)
        rng = np.random.default_rng(0)
        tp = np.arccos(rng.uniform(-1, 1, 50))
        pp = rng.uniform(0, 2 * np.pi, 50)
        x = np.sin(tp) * np.cos(pp)
        y = np.sin(tp) * np.sin(pp)
        z = np.cos(tp)
        xr = x * np.cos(theta) + z * np.sin(theta)
        zr = -x * np.sin(theta) + z * np.cos(theta)
        tr = np.arccos(np.clip(zr, -1, 1))
        pr = np.mod(np.arctan2(y, xr), 2 * np.pi)
        assert np.max(np.abs(wigner_at(rho, tp, pp) - wigner_at(rho_rot, tr, pr))) < 1e-6

    def test_validation_errors(self):
        grid = SphereGrid(6, 6)
        bad_trace = np.eye(3)
        with pytest.raises(ValueError, match="trace"):
            wigner_function(bad_trace, grid)
        non_herm = np.eye(3) / 3 + 1e-4 * np.triu(np.ones((3, 3)), 1)
        with pytest.raises(ValueError, match="Hermitian"):
            wigner_function(non_herm, grid)

    def test_cat_state_structure(self):
        n, zeta2 = 40, 6.4
        zeta = np.sqrt(zeta2)
        t0 = attractor_time(n, zeta, 1.0)
        rho = reduced_bigspin_at(n, zeta, 1.0, t0)
        disjoint, changes = cat_lobe_structure(rho, n, zeta)
        assert disjoint, "branch lobes are not disjoint positive regions"
        assert changes >= 3


class TestMultipoleDecomposition:
    @given(n=st.integers(1, 10), seed=st.integers(0, 100))
    @settings(max_examples=15)
    def test_hermitian_symmetry(self, n, seed):
        rng = np.random.default_rng(seed)
        mat = rng.normal(size=(n + 1, n + 1)) + 1j * rng.normal(size=(n + 1, n + 1))
        rho = mat @ mat.conj().T
        rho /= np.trace(rho).real
        dec = multipole_decomposition(rho)
        for l in range(dec.lmax + 1):
            for m in range(0, l + 1):
                lhs = dec.coeff(l, -m)
                rhs = (-1) ** m * np.conj(dec.coeff(l, m))
                assert abs(lhs - rhs) < 1e-12

    def test_trace_fixes_l0(self):
        n = 6
        rho = np.eye(n + 1) / (n + 1)
        dec = multipole_decomposition(rho)
        assert dec.coeff(0, 0) == pytest.approx(1 / np.sqrt(n + 1))


class TestSphereOverlap:
    def test_mixed_with_itself(self):
        n = 5
        grid = SphereGrid(2 * n + 2, 2 * n + 2)
        w = wigner_function(np.eye(n + 1) / (n + 1), grid)
        assert sphere_overlap(w, w, grid) == pytest.approx(1 / (4 * np.pi), abs=1e-12)

    def test_affine_in_state_overlap(self):
        n = 6
        grid = SphereGrid(2 * n + 2, 2 * n + 2)
        rng = np.random.default_rng(42)
        const = overlap_constant(n + 1)
        residuals = []
        for _ in range(20):
            m1 = rng.normal(size=(n + 1, n + 1)) + 1j * rng.normal(size=(n + 1, n + 1))
            m2 = rng.normal(size=(n + 1, n + 1)) + 1j * rng.normal(size=(n + 1, n + 1))
            r1 = m1 @ m1.conj().T
            r1 /= np.trace(r1).real
            r2 = m2 @ m2.conj().T
            r2 /= np.trace(r2).real
            quad = sphere_overlap(wigner_function(r1, grid), wigner_function(r2, grid), grid)
            residuals.append(quad - const * np.trace(r1 @ r2).real)
        assert np.max(np.abs(residuals)) < 1e-8

    def test_orthogonal_dicke_states(self):
        n = 4
        grid = SphereGrid(2 * n + 2, 2 * n + 2)
        a = np.zeros(n + 1)
        a[0] = 1.0
        b = np.zeros(n + 1)
        b[n] = 1.0
        quad = sphere_overlap(
            wigner_function(pure_density(a), grid), wigner_function(pure_density(b), grid), grid
        )
        assert quad == pytest.approx(0.0, abs=1e-10)

    def test_rotated_copy_not_higher(self):
        n = 6
        grid = SphereGrid(2 * n + 2, 2 * n + 2)
        state = spin_coherent(SpinCoherentParams(n, 1.0))
        w = wigner_function(pure_density(state.amplitudes), grid)
        w_rot = wigner_function(
            pure_density(rotate_about_y(state, 0.8).amplitudes), grid
        )
        assert sphere_overlap(w, w_rot, grid) < sphere_overlap(w, w, grid)

    def test_grid_mismatch(self):
        g1, g2 = SphereGrid(6, 6), SphereGrid(8, 8)
        w = wigner_function(np.eye(3) / 3, g1)
        with pytest.raises(ValueError, match="grid mismatch"):
            sphere_overlap(w, w, g2)


class TestSignChanges:
    def test_counter(self):
        assert count_sign_changes(np.array([1.0, -1.0, 2.0, 3.0, -0.5])) == 3
        assert count_sign_changes(np.array([1.0, 0.0, 2.0])) == 0
