"""
Tests for validated states, eigendecomposition, trace norm and dephasing.
"""

import numpy as np
import pytest

from oracledisc.errors import ValidationError
from oracledisc.linalg import (
    DensityOperator,
    StateVector,
    as_matrix,
    dephase,
    diagonal_part,
    hermitian_eig,
    qubit_count,
    random_density,
    random_hermitian,
    random_state,
    random_unitary,
    trace_norm,
)


class TestValidation:

    def test_as_matrix_rejects_non_square(self):
        with pytest.raises(ValidationError):
            as_matrix(np.zeros((2, 3)))

    def test_as_matrix_is_read_only(self):
        m = as_matrix(np.eye(2))
        with pytest.raises(ValueError):
            m[0, 0] = 2.0

    def test_state_vector_requires_normalization(self):
        with pytest.raises(ValidationError, match="not normalized"):
            StateVector(np.array([1.0, 1.0]))

    def test_normalized_rescales(self):
        psi = StateVector.normalized([3.0, 4.0j])
        assert psi.dim == 2
        assert psi.n_qubits == 1
        np.testing.assert_allclose(psi.amplitudes, [0.6, 0.8j])

    def test_normalized_rejects_zero(self):
        with pytest.raises(ValidationError):
            StateVector.normalized([0.0, 0.0])

    def test_density_rejects_non_hermitian(self):
        with pytest.raises(ValidationError, match="asymmetry"):
            DensityOperator(np.array([[0.5, 0.1], [0.0, 0.5]]))

    def test_density_rejects_bad_trace(self):
        with pytest.raises(ValidationError, match="trace"):
            DensityOperator(np.eye(2))

    def test_density_rejects_negative_eigenvalue(self):
        with pytest.raises(ValidationError, match="negative eigenvalue"):
            DensityOperator(np.array([[1.2, 0.0], [0.0, -0.2]]))

    def test_density_tolerance_override(self):
        m = np.eye(2) / 2.0
        m[0, 0] += 1e-7
        with pytest.raises(ValidationError):
            DensityOperator(m)
        assert DensityOperator(m, tol=1e-6).dim == 2

    def test_qubit_count(self):
        assert qubit_count(1) == 0
        assert qubit_count(8) == 3
        assert qubit_count(6) is None


class TestDensityOperator:

    def test_maximally_mixed(self):
        rho = DensityOperator.maximally_mixed(4)
        np.testing.assert_allclose(rho.eigenvalues(), np.full(4, 0.25))
        assert rho.purity() == pytest.approx(0.25)
        assert rho.rank() == 4

    def test_pure_state_rank_and_purity(self, rng):
        rho = random_state(8, rng).projector()
        assert rho.rank() == 1
        assert rho.purity() == pytest.approx(1.0)

    def test_random_density_rank(self, rng):
        for rank in (1, 2, 3):
            assert random_density(4, rng, rank=rank).rank() == rank

    def test_random_density_rank_range(self, rng):
        with pytest.raises(ValidationError):
            random_density(4, rng, rank=5)


class TestEigendecomposition:

    def test_descending_and_reconstructs(self, rng):
        h = random_hermitian(6, rng)
        decomposition = hermitian_eig(h)
        assert np.all(np.diff(decomposition.values) <= 0)
        basis = decomposition.basis()
        np.testing.assert_allclose(basis @ np.diag(decomposition.values) @ basis.conj().T, h, atol=1e-12)
        np.testing.assert_allclose(basis.conj().T @ basis, np.eye(6), atol=1e-12)

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValidationError, match="not Hermitian"):
            hermitian_eig(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_accepts_density_operator(self):
        decomposition = hermitian_eig(DensityOperator.maximally_mixed(2))
        np.testing.assert_allclose(decomposition.values, [0.5, 0.5])


class TestTraceNorm:

    def test_hermitian_equals_sum_of_absolute_eigenvalues(self):
        assert trace_norm(np.diag([0.5, -0.25, 0.0])) == pytest.approx(0.75)

    def test_non_hermitian_uses_singular_values(self):
        assert trace_norm(np.array([[0.0, 1.0], [0.0, 0.0]])) == pytest.approx(1.0)

    def test_density_operator_has_unit_norm(self, rng):
        assert trace_norm(random_density(8, rng)) == pytest.approx(1.0)

    def test_unitary_invariance(self, rng):
        for _ in range(50):
            h = random_hermitian(8, rng)
            u = random_unitary(8, rng)
            assert abs(trace_norm(u @ h @ u.conj().T) - trace_norm(h)) <= 1e-10


class TestDephasing:

    def test_keeps_only_the_diagonal(self, rng):
        rho = random_density(4, rng)
        lam = dephase(rho)
        np.testing.assert_allclose(np.diag(lam.matrix), np.diag(rho.matrix))
        off = lam.matrix - np.diag(np.diag(lam.matrix))
        assert np.max(np.abs(off)) == 0.0

    def test_contracts_trace_norm(self, rng):
        for _ in range(50):
            h = random_hermitian(4, rng)
            assert trace_norm(diagonal_part(h)) <= trace_norm(h) + 1e-12

    def test_idempotent(self, rng):
        lam = dephase(random_density(4, rng))
        np.testing.assert_array_equal(dephase(lam).matrix, lam.matrix)


class TestRandomEnsembles:

    def test_random_unitary_is_unitary(self, rng):
        u = random_unitary(8, rng)
        np.testing.assert_allclose(u @ u.conj().T, np.eye(8), atol=1e-12)

    def test_seed_reproducibility(self):
        a = random_density(4, np.random.default_rng(7)).matrix
        b = random_density(4, np.random.default_rng(7)).matrix
        np.testing.assert_array_equal(a, b)
