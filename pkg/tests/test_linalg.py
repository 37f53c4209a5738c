import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from corrcoh.linalg import (
    IDENTITY2,
    PAULI,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    NotHermitianError,
    SpectrumTriple,
    hermitian_eigen,
    hermitian_eigvals_batch,
    partial_trace,
    partial_transpose_b,
    singular_values_3x3,
    tensor_product,
)

from conftest import random_hermitian

finite = st.floats(-1e3, 1e3, allow_nan=False, allow_infinity=False)


def test_pauli_algebra():
    for s in PAULI:
        np.testing.assert_array_equal(s, s.conj().T)
        assert np.trace(s) == 0
        np.testing.assert_array_equal(s @ s, IDENTITY2)
    np.testing.assert_array_equal(SIGMA_X @ SIGMA_Y, 1j * SIGMA_Z)
    np.testing.assert_array_equal(SIGMA_Y @ SIGMA_Z, 1j * SIGMA_X)
    np.testing.assert_array_equal(SIGMA_Z @ SIGMA_X, 1j * SIGMA_Y)


class TestHermitianEigen:
    def test_identity(self):
        w, _ = hermitian_eigen(np.eye(2))
        np.testing.assert_allclose(w, [1, 1], atol=1e-15)

    def test_pauli_x(self):
        w, V = hermitian_eigen(SIGMA_X)
        np.testing.assert_allclose(w, [-1, 1], atol=1e-15)
        np.testing.assert_allclose(SIGMA_X @ V, V * w, atol=1e-12)

    def test_trace_identities(self, rng):
        for _ in range(50):
            H = random_hermitian(rng, 4)
            w, _ = hermitian_eigen(H)
            assert abs(w.sum() - np.trace(H).real) < 1e-10
            assert abs(np.sum(w ** 2) - np.trace(H @ H).real) < 1e-10

    def test_matches_lapack(self, rng):
        for n in (2, 3, 4):
            H = random_hermitian(rng, n)
            np.testing.assert_allclose(hermitian_eigen(H)[0], np.linalg.eigvalsh(H), atol=1e-12)

    def test_rejects_non_hermitian(self):
        M = np.array([[1, 2], [0, 1]], dtype=complex)
        with pytest.raises(NotHermitianError) as err:
            hermitian_eigen(M)
        assert err.value.asymmetry == pytest.approx(2.0)

    def test_degenerate_spectrum(self):
        H = np.diag([1.0, 1.0, 2.0, 2.0]).astype(complex)
        w, V = hermitian_eigen(H)
        np.testing.assert_allclose(w, [1, 1, 2, 2])
        np.testing.assert_allclose(V.conj().T @ V, np.eye(4), atol=1e-14)

    def test_reconstruction_ensemble(self, rng):
        H = np.stack([random_hermitian(rng, 4) for _ in range(10_000)])
        w = hermitian_eigvals_batch(H)
        from corrcoh import _kernels

        w2, V = _kernels.jacobi_eigh(H)
        np.testing.assert_array_equal(w, w2)
        R = V @ (w[:, :, None] * np.conj(np.swapaxes(V, 1, 2)))
        assert np.abs(R - H).max() <= 1e-10
        eye = np.conj(np.swapaxes(V, 1, 2)) @ V
        assert np.abs(eye - np.eye(4)).max() <= 1e-10
        resid = H @ V - V * w[:, None, :]
        assert np.abs(resid).max() <= 1e-10


class TestSingularValues:
    def test_orthogonal(self):
        assert singular_values_3x3(np.diag([1.0, -1.0, 1.0])).values == pytest.approx((1, 1, 1))

    def test_zero(self):
        assert singular_values_3x3(np.zeros((3, 3))).values == (0.0, 0.0, 0.0)

    def test_rank_one(self):
        E = np.outer([0, 0, 0.8], [0, 0, 0.6])
        sv = singular_values_3x3(E)
        assert sv[0] == pytest.approx(0.48, abs=1e-14)
        assert sv[1] == sv[2] == 0.0

    def test_against_svd(self, rng):
        for _ in range(100):
            E = rng.uniform(-1, 1, (3, 3))
            np.testing.assert_allclose(singular_values_3x3(E).values,
                                       np.linalg.svd(E, compute_uv=False), atol=1e-7)

    @settings(max_examples=300, deadline=None)
    @given(arrays(float, (3, 3), elements=st.floats(-1, 1)))
    def test_frobenius_identity(self, E):
        sv = singular_values_3x3(E)
        assert list(sv) == sorted(sv, reverse=True)
        assert min(sv) >= 0.0
        assert abs(sum(x * x for x in sv) - np.sum(E ** 2)) <= 1e-10

    def test_frobenius_ensemble(self, rng):
        E = rng.uniform(-1, 1, (10_000, 3, 3))
        w = hermitian_eigvals_batch(np.swapaxes(E, 1, 2) @ E)
        assert np.abs(np.clip(w, 0, None).sum(axis=1) - np.sum(E ** 2, axis=(1, 2))).max() <= 1e-10

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            singular_values_3x3(np.full((3, 3), np.nan))
        with pytest.raises(ValueError):
            singular_values_3x3(np.zeros((2, 2)))

    def test_spectrum_triple_sorts(self):
        assert SpectrumTriple((0.1, 0.5, 0.3)).values == (0.5, 0.3, 0.1)


class TestTensorAndTraces:
    def test_identity(self):
        np.testing.assert_array_equal(tensor_product(IDENTITY2, IDENTITY2), np.eye(4))

    def test_zz(self):
        np.testing.assert_array_equal(tensor_product(SIGMA_Z, SIGMA_Z), np.diag([1, -1, -1, 1]))

    def test_basis_order(self):
        # first factor is qubit A: |0><0| (x) |1><1| is |01><01|
        P0 = np.diag([1, 0]).astype(complex)
        P1 = np.diag([0, 1]).astype(complex)
        np.testing.assert_array_equal(np.diag(tensor_product(P0, P1)), [0, 1, 0, 0])

    def test_trace_multiplicative(self, rng):
        for _ in range(20):
            A = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            B = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
            assert abs(np.trace(tensor_product(A, B)) - np.trace(A) * np.trace(B)) < 1e-12

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            tensor_product(np.eye(4), np.eye(2))

    def test_partial_trace_mixed(self):
        for keep in "AB":
            np.testing.assert_allclose(partial_trace(np.eye(4) / 4, keep), np.eye(2) / 2)

    def test_partial_trace_bell(self):
        # explicit index sum as oracle
        psi = np.array([1, 0, 0, 1]) / np.sqrt(2)
        rho = np.outer(psi, psi)
        t = rho.reshape(2, 2, 2, 2)
        oracle_a = np.array([[sum(t[i, k, j, k] for k in range(2)) for j in range(2)] for i in range(2)])
        np.testing.assert_allclose(partial_trace(rho, "A"), oracle_a)
        np.testing.assert_allclose(partial_trace(rho, "B"), np.eye(2) / 2, atol=1e-15)

    def test_partial_trace_product(self, rng):
        X = random_hermitian(rng, 2)
        Y = random_hermitian(rng, 2)
        np.testing.assert_allclose(partial_trace(np.kron(X, Y), "A"), X * np.trace(Y), atol=1e-12)
        np.testing.assert_allclose(partial_trace(np.kron(X, Y), "B"), Y * np.trace(X), atol=1e-12)
        rho = np.kron(np.diag([0.9, 0.1]), np.diag([0.8, 0.2]))
        np.testing.assert_allclose(partial_trace(rho, "A"), np.diag([0.9, 0.1]), atol=1e-15)

    def test_partial_trace_bad_side(self):
        with pytest.raises(ValueError):
            partial_trace(np.eye(4), "C")

    def test_partial_transpose_diagonal(self):
        D = np.diag([0.1, 0.2, 0.3, 0.4])
        np.testing.assert_array_equal(partial_transpose_b(D), D)

    def test_partial_transpose_bell(self):
        psi = np.array([1, 0, 0, 1]) / np.sqrt(2)
        w = np.linalg.eigvalsh(partial_transpose_b(np.outer(psi, psi)))
        assert w.min() == pytest.approx(-0.5, abs=1e-14)

    def test_partial_transpose_involution(self, rng):
        for _ in range(20):
            H = random_hermitian(rng, 4)
            PT = partial_transpose_b(H)
            np.testing.assert_array_equal(PT, PT.conj().T)
            np.testing.assert_array_equal(partial_transpose_b(PT), H)
