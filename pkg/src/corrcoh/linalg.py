"""Small dense linear algebra for qubits and qubit pairs.

Matrices are plain ``numpy`` arrays.  Two-qubit operators use the basis order
|00>, |01>, |10>, |11> with qubit A first, so ``tensor_product(X, Y)`` acts as
X on A and Y on B.
"""

from dataclasses import dataclass

import numpy as np

from . import _kernels

HERMITIAN_TOL = 1e-12

IDENTITY2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_X, SIGMA_Y, SIGMA_Z)


class NotHermitianError(ValueError):
    """Raised when a matrix that must be Hermitian is not."""

    def __init__(self, asymmetry):
        self.asymmetry = float(asymmetry)
        super().__init__(f"matrix is not Hermitian: max |H - H^dagger| = {self.asymmetry:.3e}")


@dataclass(frozen=True)
class SpectrumTriple:
    """Three real values sorted in decreasing order."""

    values: tuple

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if len(vals) != 3:
            raise ValueError("SpectrumTriple needs exactly three values")
        object.__setattr__(self, "values", tuple(sorted(vals, reverse=True)))

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def sum(self):
        return sum(self.values)


def as_matrix(M, dims=(2, 3, 4)):
    """Return ``M`` as a square complex array, checking size and finiteness."""
    M = np.asarray(M, dtype=complex)
    if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] not in dims:
        raise ValueError(f"expected a square matrix of size in {dims}, got shape {M.shape}")
    if not np.all(np.isfinite(M)):
        raise ValueError("matrix has non-finite entries")
    return M


def hermitian_asymmetry(M):
    M = np.asarray(M)
    return float(np.max(np.abs(M - M.conj().T), initial=0.0))


def hermitian_eigen(H, tol=HERMITIAN_TOL):
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Returns ``(w, V)`` with ``w`` ascending and the columns of ``V`` the
    orthonormal eigenvectors, so ``V @ diag(w) @ V^dagger == H``.
    """
    H = as_matrix(H)
    asym = hermitian_asymmetry(H)
    if asym > tol:
        raise NotHermitianError(asym)
    H = 0.5 * (H + H.conj().T)
    w, V = _kernels.jacobi_eigh(H[None])
    return w[0], V[0]


def hermitian_eigvals_batch(H):
    """Eigenvalues (ascending) of a stack of Hermitian matrices, shape (N, n, n)."""
    H = np.asarray(H, dtype=complex)
    H = 0.5 * (H + np.conj(np.swapaxes(H, -1, -2)))
    w, _ = _kernels.jacobi_eigh(H)
    return w


def symmetric_eigen(S):
    """Real symmetric eigendecomposition; same ordering as :func:`hermitian_eigen`."""
    S = np.asarray(S, dtype=float)
    w, V = hermitian_eigen(S)
    return w, V.real


def singular_values_3x3(E):
    """Singular values of a real 3x3 matrix, from the spectrum of E^T E."""
    E = np.asarray(E, dtype=float)
    if E.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {E.shape}")
    if not np.all(np.isfinite(E)):
        raise ValueError("matrix has non-finite entries")
    w, _ = symmetric_eigen(E.T @ E)
    return SpectrumTriple(tuple(np.sqrt(np.clip(w, 0.0, None))))


def tensor_product(A, B):
    A = as_matrix(A, dims=(2,))
    B = as_matrix(B, dims=(2,))
    return np.kron(A, B)


def partial_trace(rho4, keep="A"):
    """Reduce a two-qubit operator to subsystem ``keep`` ('A' or 'B')."""
    rho4 = as_matrix(rho4, dims=(4,))
    t = rho4.reshape(2, 2, 2, 2)  # (a, b, a', b')
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijil->jl", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


def partial_transpose_b(rho4):
    rho4 = as_matrix(rho4, dims=(4,))
    return rho4.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)
