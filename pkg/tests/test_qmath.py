import numpy as np
import pytest

from qrecycle import qmath

from oracles import rho00_unnormalized


def random_hermitian(rng, dim):
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    return a + a.conj().T


class TestTensor:
    def test_identity(self):
        assert np.allclose(qmath.tensor(np.eye(2), np.eye(2)), np.eye(4))

    def test_scalar_multiple(self):
        a = np.diag([np.sqrt(0.5), np.sqrt(0.5)])
        out = qmath.tensor(a, np.eye(2))
        assert np.allclose(out, np.diag([np.sqrt(0.5)] * 4))

    def test_kraus_product_at_gamma_019(self):
        # E0 x E0 with gamma = 0.19: sqrt(1 - gamma) = 0.9 exactly
        e0 = np.diag([1.0, np.sqrt(0.81)])
        assert np.allclose(qmath.tensor(e0, e0), np.diag([1.0, 0.9, 0.9, 0.81]))

    def test_trace_multiplicative(self):
        rng = np.random.default_rng(7)
        for _ in range(25):
            a = random_hermitian(rng, 2)
            b = random_hermitian(rng, 2)
            assert np.trace(qmath.tensor(a, b)) == pytest.approx(
                np.trace(a) * np.trace(b), abs=1e-10)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            qmath.tensor(np.eye(4), np.eye(2))


class TestPartialTranspose:
    def test_identity(self):
        assert np.allclose(qmath.partial_transpose_b(np.eye(4)), np.eye(4))

    def test_moves_coherence_to_inner_block(self):
        # with alpha = beta = 0.5, gamma = 0 the corner coherence
        # alpha*beta*(1-gamma)/2 = 0.125 moves to the (|01><10|) block
        m = rho00_unnormalized(0.5, 0.5, 0.0)
        pt = qmath.partial_transpose_b(m)
        assert pt[0, 3] == pytest.approx(0.0)
        assert pt[1, 2] == pytest.approx(0.125)
        assert pt[2, 1] == pytest.approx(0.125)
        assert np.allclose(np.diag(pt), np.diag(m))

    def test_involution(self):
        rng = np.random.default_rng(11)
        a = random_hermitian(rng, 4)
        assert np.allclose(qmath.partial_transpose_b(qmath.partial_transpose_b(a)), a)

    def test_preserves_trace_and_hermiticity(self):
        rng = np.random.default_rng(13)
        for _ in range(20):
            a = random_hermitian(rng, 4)
            pt = qmath.partial_transpose_b(a)
            assert np.trace(pt) == pytest.approx(np.trace(a).real, abs=1e-10)
            assert qmath.is_hermitian(pt)

    def test_a_side_spectrum_equal(self):
        # A-side partial transpose is the full transpose of the B-side one
        rng = np.random.default_rng(17)
        for _ in range(10):
            a = random_hermitian(rng, 4)
            pt_b = qmath.partial_transpose_b(a)
            pt_a = pt_b.T
            assert np.allclose(np.linalg.eigvalsh(pt_a), np.linalg.eigvalsh(pt_b),
                               atol=1e-10)


class TestPsdSqrt:
    def test_diagonal(self):
        alpha, beta = 0.3, 0.7
        out = qmath.psd_sqrt(np.diag([alpha, beta]))
        assert np.allclose(out, np.diag([np.sqrt(alpha), np.sqrt(beta)]))

    def test_identity(self):
        assert np.allclose(qmath.psd_sqrt(np.eye(4)), np.eye(4))

    def test_square_recovers_input(self):
        rng = np.random.default_rng(19)
        for _ in range(20):
            a = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
            x = a @ a.conj().T
            x /= np.trace(x).real
            s = qmath.psd_sqrt(x)
            assert np.max(np.abs(s @ s - x)) < 1e-10

    def test_rejects_non_psd(self):
        with pytest.raises(ValueError, match="not PSD"):
            qmath.psd_sqrt(np.diag([1.0, -0.5]))

    def test_clamps_tiny_negative(self):
        out = qmath.psd_sqrt(np.diag([1.0, -1e-12]))
        assert out[1, 1] == pytest.approx(0.0)


class TestEigenvalues:
    def test_diagonal(self):
        assert np.allclose(qmath.hermitian_eigenvalues(np.diag([4.0, 2, 1, 3])),
                           [1, 2, 3, 4])

    def test_rho00_pt_at_half_half(self):
        pt = qmath.partial_transpose_b(rho00_unnormalized(0.5, 0.5, 0.0))
        w = qmath.hermitian_eigenvalues(pt)
        assert np.allclose(w, [-0.125, 0.125, 0.125, 0.125], atol=1e-12)

    def test_rejects_non_hermitian(self):
        m = np.zeros((4, 4), dtype=complex)
        m[0, 1] = 1.0
        with pytest.raises(ValueError, match="Hermitian"):
            qmath.hermitian_eigenvalues(m)

    def test_eigenvalues_sum_to_trace(self):
        rng = np.random.default_rng(23)
        for _ in range(20):
            a = random_hermitian(rng, 4)
            assert qmath.hermitian_eigenvalues(a).sum() == pytest.approx(
                np.trace(a).real, abs=1e-10)

    def test_reconstruction(self):
        rng = np.random.default_rng(29)
        a = random_hermitian(rng, 4)
        w, v = qmath.hermitian_eigensystem(a)
        assert np.max(np.abs((v * w) @ v.conj().T - a)) < 1e-10
