import numpy as np
import pytest

from lagfid import (
    HermitianOperator,
    eig_hermitian,
    loewner_leq,
    sqrt_psd,
    trace_norm,
    unitary_exp,
)


def random_hermitian(rng, dim):
    A = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return (A + A.conj().T) / 2


def random_density(rng, dim):
    A = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    rho = A @ A.conj().T
    return rho / np.trace(rho).real


class TestHermitianOperator:
    def test_symmetrizes_and_records_defect(self):
        A = np.array([[1.0, 1e-14], [0.0, 2.0]])
        op = HermitianOperator(A)
        assert op.herm_defect == pytest.approx(1e-14, rel=1e-6)
        assert np.allclose(op.entries, op.entries.conj().T)

    def test_rejects_large_defect(self):
        with pytest.raises(ValueError, match="not Hermitian"):
            HermitianOperator(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_rejects_non_square(self):
        with pytest.raises(ValueError, match="square"):
            HermitianOperator(np.zeros((2, 3)))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError, match="finite"):
            HermitianOperator(np.array([[np.nan, 0.0], [0.0, 1.0]]))

    def test_entries_read_only(self):
        op = HermitianOperator(np.eye(2))
        with pytest.raises(ValueError):
            op.entries[0, 0] = 5.0

    def test_trace(self):
        op = HermitianOperator(np.diag([1.0, 2.0, 3.0]))
        assert op.trace() == pytest.approx(6.0)


class TestEig:
    def test_reconstruction(self):
        rng = np.random.default_rng(0)
        A = random_hermitian(rng, 7)
        w, V = eig_hermitian(A)
        assert np.allclose((V * w) @ V.conj().T, A, atol=1e-12)
        assert np.all(np.diff(w) >= 0)


class TestSqrtPsd:
    def test_square_recovers(self):
        rng = np.random.default_rng(1)
        B = random_hermitian(rng, 6)
        A = B @ B.conj().T
        R = sqrt_psd(A).entries
        assert np.allclose(R @ R, A, atol=1e-10)

    def test_rejects_negative(self):
        with pytest.raises(ValueError, match="not PSD"):
            sqrt_psd(np.diag([1.0, -0.5]))

    def test_clamps_roundoff(self):
        R = sqrt_psd(np.diag([1.0, -1e-16])).entries
        assert np.all(np.linalg.eigvalsh(R) >= 0)


class TestUnitaryExp:
    def test_unitary(self):
        rng = np.random.default_rng(2)
        A = rng.standard_normal((5, 5))
        G = A - A.T
        U = unitary_exp(G, 0.7)
        assert np.allclose(U @ U.conj().T, np.eye(5), atol=1e-12)

    def test_group_property(self):
        rng = np.random.default_rng(3)
        A = rng.standard_normal((4, 4))
        G = A - A.T
        assert np.allclose(
            unitary_exp(G, 0.3) @ unitary_exp(G, 0.4), unitary_exp(G, 0.7), atol=1e-12
        )

    def test_rejects_non_skew(self):
        with pytest.raises(ValueError, match="skew"):
            unitary_exp(np.eye(3), 1.0)


class TestTraceNorm:
    def test_matches_abs_eigenvalues(self):
        rng = np.random.default_rng(4)
        A = random_hermitian(rng, 6)
        assert trace_norm(A) == pytest.approx(np.abs(np.linalg.eigvalsh(A)).sum())

    def test_density_matrix_is_one(self):
        rng = np.random.default_rng(5)
        assert trace_norm(random_density(rng, 8)) == pytest.approx(1.0)


class TestLoewner:
    def test_ordered_diagonals(self):
        ok, lam = loewner_leq(np.diag([1.0, 2.0]), np.diag([1.5, 2.5]))
        assert ok and lam == pytest.approx(0.5)

    def test_not_ordered(self):
        ok, lam = loewner_leq(np.diag([1.0, 2.0]), np.diag([2.0, 1.0]))
        assert not ok and lam == pytest.approx(-1.0)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError, match="mismatch"):
            loewner_leq(np.eye(2), np.eye(3))
