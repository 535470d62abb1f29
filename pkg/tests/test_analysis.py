import math

import numpy as np
import pytest
import scipy.linalg

from thermalchain import analysis, dynamics, linalg, model
from thermalchain.errors import DimensionMismatchError

from conftest import random_density_matrix, random_two_bath_spec

EPS, K = 1.5, 1.0


class TestConcurrence:
    def test_bell_state(self):
        psi = np.array([0.0, 1.0, 1.0, 0.0]) / np.sqrt(2.0)
        rho = np.outer(psi, psi)
        assert analysis.concurrence(rho) == pytest.approx(1.0, abs=1e-12)

    def test_product_states(self, rng):
        for _ in range(10):
            rho = np.kron(
                random_density_matrix(rng, 2), random_density_matrix(rng, 2)
            )
            assert analysis.concurrence(rho) <= 1e-8

    def test_w_state_reduction(self):
        reduced = linalg.partial_trace(analysis.w_state(3), [0, 2], 3)
        assert analysis.concurrence(reduced) == pytest.approx(
            2.0 / 3.0, abs=1e-12
        )

    def test_bounds(self, rng):
        for _ in range(20):
            c = analysis.concurrence(random_density_matrix(rng, 4))
            assert 0.0 <= c <= 1.0

    def test_local_unitary_invariance(self, rng):
        for _ in range(10):
            rho = random_density_matrix(rng, 4)
            ua = scipy.linalg.expm(1j * _random_hermitian(rng, 2))
            ub = scipy.linalg.expm(1j * _random_hermitian(rng, 2))
            u = np.kron(ua, ub)
            rotated = u @ rho @ u.conj().T
            assert abs(
                analysis.concurrence(rotated) - analysis.concurrence(rho)
            ) <= 1e-12

    def test_dim_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            analysis.concurrence(np.eye(8) / 8.0)


def _random_hermitian(rng, dim):
    a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return a + a.conj().T


class TestConcurrenceFirstLast:
    def test_two_qubit_passthrough(self, rng):
        rho = random_density_matrix(rng, 4)
        assert analysis.concurrence_first_last(rho, 2) == analysis.concurrence(rho)

    def test_w_state(self):
        assert analysis.concurrence_first_last(
            analysis.w_state(3), 3
        ) == pytest.approx(2.0 / 3.0, abs=1e-12)

    def test_product_state(self):
        rho = np.zeros((8, 8), dtype=complex)
        rho[7, 7] = 1.0  # |111>
        assert analysis.concurrence_first_last(rho, 3) == 0.0


class TestXCoefficients:
    def test_symmetric_baths(self):
        spec = model.two_bath_chain(2, EPS, K, 0.02, 5.0, 0.02, 5.0)
        x = analysis.x_coefficients(spec)
        for i, omega in enumerate(x.frequencies):
            n = model.bose_occupation(5.0, omega)
            assert x.x_minus[i] == pytest.approx(2 * 0.02 * n, rel=1e-12)
            assert x.x_plus[i] == pytest.approx(2 * 0.02 * (n + 1), rel=1e-12)
            assert x.x_total[i] == x.x_plus[i] + x.x_minus[i]

    def test_zero_temperature_limit(self):
        spec = model.two_bath_chain(2, EPS, K, 0.03, 900.0, 0.04, 800.0)
        x = analysis.x_coefficients(spec)
        assert max(x.x_minus) < 1e-50
        for xp in x.x_plus:
            assert xp == pytest.approx(0.07, rel=1e-12)

    def test_fig1_curve_c_value(self):
        spec = model.two_bath_chain(2, EPS, K, 1 / 50, 5.0, 1 / 50, 3.0)
        x = analysis.x_coefficients(spec)
        assert x.frequencies[0] == pytest.approx(0.5, abs=1e-14)
        expected = (1 / 50) * (
            model.bose_occupation(5.0, 0.5) + model.bose_occupation(3.0, 0.5)
        )
        assert x.x_minus[0] == pytest.approx(expected, rel=1e-14)


class TestAnalyticSteadyState2q:
    def test_equilibrium_is_gibbs(self):
        spec = model.two_bath_chain(2, EPS, K, 0.02, 4.0, 0.05, 4.0)
        h = model.build_hamiltonian(spec)
        rho = analysis.analytic_steady_state_2q(spec)
        assert linalg.trace_distance(rho, analysis.gibbs_state(h, 4.0)) <= 1e-12

    def test_matches_nullspace_oracle(self, rng):
        for _ in range(10):
            spec = random_two_bath_spec(rng, 2)
            h = model.build_hamiltonian(spec)
            liou = dynamics.build_liouvillian(h, model.build_channels(spec))
            rho_num, _gap = dynamics.steady_state(liou)
            rho_an = analysis.analytic_steady_state_2q(spec)
            assert linalg.trace_distance(rho_num, rho_an) <= 1e-10

    def test_zero_temperature_ground_state(self):
        spec = model.two_bath_chain(2, EPS, K, 0.02, 500.0, 0.05, 500.0)
        rho = analysis.analytic_steady_state_2q(spec)
        expected = np.zeros((4, 4))
        expected[0, 0] = 1.0
        assert linalg.trace_distance(rho, expected) <= 1e-10

    def test_is_valid_state(self, rng):
        for _ in range(10):
            rho = analysis.analytic_steady_state_2q(
                random_two_bath_spec(rng, 2)
            )
            linalg.validate_density_matrix(rho)


class TestAnalyticConcurrence2q:
    def test_wootters_identity(self, rng):
        for _ in range(50):
            spec = random_two_bath_spec(rng, 2)
            c_formula = analysis.analytic_concurrence_2q(spec)
            c_wootters = analysis.concurrence(
                analysis.analytic_steady_state_2q(spec)
            )
            assert abs(c_formula - c_wootters) <= 1e-12

    def test_equilibrium_thermal_entanglement(self):
        # low equilibrium temperature, small gap: entangled steady state
        spec = model.two_bath_chain(2, EPS, K, 0.02, 5.0, 0.02, 5.0)
        assert analysis.analytic_concurrence_2q(spec) > 0.05

    def test_high_temperature_vanishes(self):
        spec = model.two_bath_chain(2, EPS, K, 0.02, 0.02, 0.02, 0.02)
        assert analysis.analytic_concurrence_2q(spec) == 0.0


class TestAnalyticSteadyState3q:
    def test_populations_sum_to_one(self, rng):
        for _ in range(10):
            rho = analysis.analytic_steady_state_3q(
                random_two_bath_spec(rng, 3)
            )
            assert abs(np.trace(rho).real - 1.0) <= 1e-13

    def test_equilibrium_is_gibbs(self):
        spec = model.two_bath_chain(3, EPS, K, 0.02, 4.0, 0.05, 4.0)
        h = model.build_hamiltonian(spec)
        rho = analysis.analytic_steady_state_3q(spec)
        assert linalg.trace_distance(rho, analysis.gibbs_state(h, 4.0)) <= 1e-12

    def test_matches_nullspace_oracle(self):
        spec = model.two_bath_chain(3, EPS, K, 1 / 50, 5.0, 1 / 50, 3.0)
        h = model.build_hamiltonian(spec)
        liou = dynamics.build_liouvillian(h, model.build_channels(spec))
        rho_num, _gap = dynamics.steady_state(liou)
        rho_an = analysis.analytic_steady_state_3q(spec)
        assert linalg.trace_distance(rho_num, rho_an) <= 1e-10

    def test_diagonal_in_energy_eigenbasis(self):
        spec = model.two_bath_chain(3, EPS, K, 1 / 50, 5.0, 1 / 50, 3.0)
        h = model.build_hamiltonian(spec)
        liou = dynamics.build_liouvillian(h, model.build_channels(spec))
        rho_num, _gap = dynamics.steady_state(liou)
        _w, u = linalg.hermitian_eig(h)
        in_basis = u.conj().T @ rho_num @ u
        off = in_basis - np.diag(np.diag(in_basis))
        assert np.max(np.abs(off)) <= 1e-10


class TestGibbsState:
    def test_infinite_temperature(self):
        spec = model.two_bath_chain(2, EPS, K, 0.02, 5.0, 0.02, 5.0)
        h = model.build_hamiltonian(spec)
        rho = analysis.gibbs_state(h, 1e-12)
        assert linalg.trace_distance(rho, np.eye(4) / 4.0) <= 1e-10

    def test_two_level_boltzmann(self):
        rho = analysis.gibbs_state(np.diag([-EPS, EPS]), 1.0)
        z = math.exp(EPS) + math.exp(-EPS)
        assert rho[0, 0].real == pytest.approx(math.exp(EPS) / z, rel=1e-12)
        assert rho[1, 1].real == pytest.approx(math.exp(-EPS) / z, rel=1e-12)

    def test_two_qubit_populations(self):
        spec = model.two_bath_chain(2, EPS, K, 0.02, 5.0, 0.02, 5.0)
        h = model.build_hamiltonian(spec)
        beta = 5.0
        rho = analysis.gibbs_state(h, beta)
        w, u = linalg.hermitian_eig(h)
        pops = np.real(np.diag(u.conj().T @ rho @ u))
        expected = np.exp(-beta * w)
        expected /= expected.sum()
        assert np.allclose(pops, expected, atol=1e-13)

    def test_large_beta_no_overflow(self):
        rho = analysis.gibbs_state(np.diag([-EPS, EPS]), 1e4)
        assert rho[0, 0].real == pytest.approx(1.0, abs=1e-12)


class TestWState:
    def test_pure_normalized(self):
        rho = analysis.w_state(3)
        assert np.trace(rho).real == pytest.approx(1.0, abs=1e-14)
        assert np.linalg.matrix_rank(rho, tol=1e-12) == 1

    def test_single_excitation_sector(self):
        rho = analysis.w_state(3)
        assert rho[0, 0] == 0.0
        assert rho[7, 7] == 0.0

    def test_unsupported_size(self):
        with pytest.raises(ValueError):
            analysis.w_state(4)
