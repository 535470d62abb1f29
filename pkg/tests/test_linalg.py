import numpy as np
import pytest

from thermalchain import linalg, model
from thermalchain.errors import (
    DimensionMismatchError,
    IndexOutOfRangeError,
    NotHermitianError,
)

from conftest import random_density_matrix


class TestKron:
    def test_identity(self):
        assert np.array_equal(linalg.kron(np.eye(2), np.eye(2)), np.eye(4))

    def test_diagonal(self):
        out = linalg.kron(np.diag([1.0, -1.0]), np.eye(2))
        assert np.array_equal(out, np.diag([1.0, 1.0, -1.0, -1.0]))

    def test_raising_lowering_product(self):
        # sp kron sm maps |01> (index 1) to |10> (index 2) and kills
        # everything else; expanded by hand from the 2x2 definitions.
        expected = np.zeros((4, 4))
        expected[2, 1] = 1.0
        out = linalg.kron(model.SIGMA_PLUS, model.SIGMA_MINUS)
        assert np.allclose(out, expected, atol=0)

    def test_associativity(self, rng):
        for _ in range(10):
            a, b, c = (
                rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3))
                for _ in range(3)
            )
            lhs = linalg.kron(linalg.kron(a, b), c)
            rhs = linalg.kron(a, linalg.kron(b, c))
            assert np.max(np.abs(lhs - rhs)) <= 1e-13


class TestHermitianEig:
    def test_diagonal_permutation(self):
        w, u = linalg.hermitian_eig(np.diag([3.0, 1.0, 2.0]))
        assert np.allclose(w, [1.0, 2.0, 3.0])
        assert np.allclose(np.abs(u), np.eye(3)[:, [1, 2, 0]])

    def test_two_qubit_chain_eigenvalues(self):
        spec = model.two_bath_chain(2, 1.5, 1.0, 0.02, 5.0, 0.02, 5.0)
        w, _u = linalg.hermitian_eig(model.build_hamiltonian(spec))
        assert np.allclose(w, [-1.5, -1.0, 1.0, 1.5], atol=1e-12)

    def test_three_qubit_chain_eigenvalues(self):
        eps, k = 1.5, 1.0
        spec = model.two_bath_chain(3, eps, k, 0.02, 5.0, 0.02, 5.0)
        w, _u = linalg.hermitian_eig(model.build_hamiltonian(spec))
        r2 = np.sqrt(2.0)
        expected = sorted([
            -1.5 * eps, 1.5 * eps, -0.5 * eps, 0.5 * eps,
            -0.5 * eps - r2 * k, 0.5 * eps + r2 * k,
            0.5 * eps - r2 * k, -0.5 * eps + r2 * k,
        ])
        assert np.allclose(w, expected, atol=1e-12)

    def test_rejects_non_hermitian(self):
        with pytest.raises(NotHermitianError):
            linalg.hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))

    @pytest.mark.parametrize("dim", [8, 64, 256])
    def test_reconstruction(self, rng, dim):
        a = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        h = a + a.conj().T
        w, u = linalg.hermitian_eig(h)
        rebuilt = (u * w) @ u.conj().T
        rel = np.linalg.norm(rebuilt - h) / np.linalg.norm(h)
        assert rel <= 1e-12
        assert np.allclose(u.conj().T @ u, np.eye(dim), atol=1e-12)
        assert np.all(np.diff(w) >= 0)


class TestPartialTrace:
    def test_product_state(self, rng):
        rho_a = random_density_matrix(rng, 2)
        rho_b = random_density_matrix(rng, 2)
        out = linalg.partial_trace(np.kron(rho_a, rho_b), [0], 2)
        assert np.allclose(out, rho_a, atol=1e-14)

    def test_w_state_first_last(self):
        psi = np.zeros(8, dtype=complex)
        psi[[4, 2, 1]] = 1.0 / np.sqrt(3.0)
        out = linalg.partial_trace(np.outer(psi, psi.conj()), [0, 2], 3)
        expected = np.zeros((4, 4))
        expected[0, 0] = 1.0
        expected[1, 1] = expected[2, 2] = 1.0
        expected[1, 2] = expected[2, 1] = 1.0
        assert np.allclose(out, expected / 3.0, atol=1e-14)

    def test_maximally_mixed(self):
        out = linalg.partial_trace(np.eye(8) / 8.0, [0, 2], 3)
        assert np.allclose(out, np.eye(4) / 4.0, atol=1e-14)

    def test_keep_all_sites_identity(self, rng):
        rho = random_density_matrix(rng, 8)
        assert np.allclose(linalg.partial_trace(rho, [0, 1, 2], 3), rho)

    def test_keep_order_swap(self, rng):
        rho = random_density_matrix(rng, 4)
        swapped = linalg.partial_trace(rho, [1, 0], 2)
        # swapping tensor factors of a 2-qubit state permutes indices 1,2
        perm = [0, 2, 1, 3]
        assert np.allclose(swapped, rho[np.ix_(perm, perm)], atol=1e-14)

    def test_trace_preserved(self, rng):
        rho = random_density_matrix(rng, 8)
        for keep in ([0], [1], [0, 2], [2, 1]):
            out = linalg.partial_trace(rho, keep, 3)
            assert abs(np.trace(out) - np.trace(rho)) <= 1e-12

    def test_bad_site_rejected(self, rng):
        rho = random_density_matrix(rng, 4)
        with pytest.raises(IndexOutOfRangeError):
            linalg.partial_trace(rho, [2], 2)
        with pytest.raises(IndexOutOfRangeError):
            linalg.partial_trace(rho, [0, 0], 2)


class TestTraceDistance:
    def test_identical_states(self, rng):
        rho = random_density_matrix(rng, 4)
        assert linalg.trace_distance(rho, rho) == 0.0

    def test_orthogonal_pure_states(self):
        assert linalg.trace_distance(
            np.diag([1.0, 0.0]), np.diag([0.0, 1.0])
        ) == pytest.approx(1.0, abs=1e-14)

    def test_quarter(self):
        # eigenvalues of the difference are +/- 1/4
        out = linalg.trace_distance(np.eye(2) / 2, np.diag([0.75, 0.25]))
        assert out == pytest.approx(0.25, abs=1e-14)

    def test_symmetry_and_triangle(self, rng):
        for _ in range(10):
            a = random_density_matrix(rng, 4)
            b = random_density_matrix(rng, 4)
            c = random_density_matrix(rng, 4)
            dab = linalg.trace_distance(a, b)
            assert abs(dab - linalg.trace_distance(b, a)) <= 1e-12
            assert dab <= (linalg.trace_distance(a, c)
                           + linalg.trace_distance(c, b) + 1e-12)

    def test_dim_mismatch(self):
        with pytest.raises(DimensionMismatchError):
            linalg.trace_distance(np.eye(2) / 2, np.eye(4) / 4)


class TestDensityMatrixValidation:
    def test_accepts_valid(self, rng):
        linalg.validate_density_matrix(random_density_matrix(rng, 8))

    def test_rejects_bad_trace(self):
        with pytest.raises(ValueError):
            linalg.validate_density_matrix(np.eye(2))

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            linalg.validate_density_matrix(np.diag([1.5, -0.5]))
