"""Density matrices, the Pauli (Bloch) decomposition and state factories."""

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .linalg import (
    IDENTITY2,
    PAULI,
    NotHermitianError,
    as_matrix,
    hermitian_asymmetry,
    hermitian_eigvals_batch,
    partial_trace,
)

HERMITIAN_TOL = 1e-10
TRACE_TOL = 1e-10
PSD_TOL = 1e-9
IMAG_RESIDUE_TOL = 1e-10

# sigma_i (x) sigma_j, indexed [i, j]; sigma_i (x) I and I (x) sigma_j
_SS = np.array([[np.kron(si, sj) for sj in PAULI] for si in PAULI])
_SI = np.array([np.kron(si, IDENTITY2) for si in PAULI])
_IS = np.array([np.kron(IDENTITY2, sj) for sj in PAULI])


class InvalidStateError(ValueError):
    """A matrix failed the density-matrix checks; ``report`` says which."""

    def __init__(self, report, context="invalid density matrix"):
        self.report = report
        super().__init__(f"{context}: {report.describe()}")


@dataclass(frozen=True)
class ValidityReport:
    dim: int
    hermiticity_defect: float
    trace_defect: float
    min_eigenvalue: float

    @property
    def violations(self):
        out = []
        if self.hermiticity_defect > HERMITIAN_TOL:
            out.append("hermitian")
        if self.trace_defect > TRACE_TOL:
            out.append("unit-trace")
        if self.min_eigenvalue < -PSD_TOL:
            out.append("positive-semidefinite")
        return out

    @property
    def valid(self):
        return not self.violations

    def describe(self):
        status = "valid" if self.valid else "violates " + ", ".join(self.violations)
        return (
            f"{status} (hermiticity defect {self.hermiticity_defect:.3e}, "
            f"trace defect {self.trace_defect:.3e}, min eigenvalue {self.min_eigenvalue:.3e})"
        )


def validate(rho):
    """Check Hermiticity, unit trace and positivity of a square matrix."""
    M = rho.matrix if isinstance(rho, DensityMatrix) else as_matrix(rho)
    herm = hermitian_asymmetry(M)
    trace_defect = float(abs(np.trace(M) - 1.0))
    min_eig = float(hermitian_eigvals_batch(M[None])[0, 0])
    return ValidityReport(M.shape[0], herm, trace_defect, min_eig)


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated 2x2 or 4x4 density matrix.

    Construction raises :class:`InvalidStateError` unless the matrix passes
    :func:`validate`.  The stored array is read-only.
    """

    matrix: np.ndarray
    label: str = ""
    _report: ValidityReport = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        M = as_matrix(self.matrix, dims=(2, 4)).copy()
        report = validate(M)
        if not report.valid:
            raise InvalidStateError(report)
        M.setflags(write=False)
        object.__setattr__(self, "matrix", M)
        object.__setattr__(self, "_report", report)

    @property
    def dim(self):
        return self.matrix.shape[0]

    @property
    def min_eigenvalue(self):
        return self._report.min_eigenvalue

    def reduced(self, keep):
        if self.dim != 4:
            raise ValueError("partial trace needs a two-qubit state")
        return DensityMatrix(partial_trace(self.matrix, keep))

    def digest(self):
        return state_digest(self.matrix)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)


def _mat(rho):
    return rho.matrix if isinstance(rho, DensityMatrix) else np.asarray(rho, dtype=complex)


def state_digest(M):
    """SHA-256 of the little-endian complex128 bytes, row-major."""
    buf = np.ascontiguousarray(M, dtype="<c16").tobytes()
    return hashlib.sha256(buf).hexdigest()


# ---------------------------------------------------------------------------
# Bloch decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class BlochDecomposition:
    """Local Bloch vectors ``a``, ``b`` and correlation matrix ``E`` of a qubit pair."""

    a: np.ndarray
    b: np.ndarray
    E: np.ndarray

    def __post_init__(self):
        a = np.array(self.a, dtype=float).reshape(3)
        b = np.array(self.b, dtype=float).reshape(3)
        E = np.array(self.E, dtype=float).reshape(3, 3)
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b)) and np.all(np.isfinite(E))):
            raise ValueError("Bloch parameters must be finite")
        for arr in (a, b, E):
            arr.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "E", E)

    @property
    def correlation_norm2(self):
        """Squared Frobenius norm of ``E``."""
        return float(np.sum(self.E ** 2))


def pauli_decompose_batch(rhos):
    """Vectorized decomposition of a stack of 4x4 matrices: returns (a, b, E)."""
    rhos = np.asarray(rhos, dtype=complex)
    # tr(rho P) = sum_kl rho_kl P_lk
    a = np.einsum("nkl,ilk->ni", rhos, _SI)
    b = np.einsum("nkl,jlk->nj", rhos, _IS)
    E = np.einsum("nkl,ijlk->nij", rhos, _SS)
    residue = max(np.abs(a.imag).max(initial=0.0), np.abs(b.imag).max(initial=0.0),
                  np.abs(E.imag).max(initial=0.0))
    if residue > IMAG_RESIDUE_TOL:
        raise NotHermitianError(residue)
    return a.real, b.real, E.real


def pauli_decompose(rho):
    M = as_matrix(_mat(rho), dims=(4,))
    a, b, E = pauli_decompose_batch(M[None])
    return BlochDecomposition(a[0], b[0], E[0])


def reconstruct_matrix(a, b, E):
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    E = np.asarray(E, dtype=float)
    M = (np.eye(4, dtype=complex)
         + np.einsum("i,ikl->kl", a, _SI)
         + np.einsum("j,jkl->kl", b, _IS)
         + np.einsum("ij,ijkl->kl", E, _SS))
    return M / 4.0


def reconstruct(d, label=""):
    """Rebuild the two-qubit state from its Bloch parameters.

    Raises :class:`InvalidStateError` when the parameters lie outside the
    physical set (the rebuilt matrix is not positive semidefinite).
    """
    M = reconstruct_matrix(d.a, d.b, d.E)
    report = validate(M)
    if not report.valid:
        raise InvalidStateError(report, "Bloch parameters do not describe a state")
    return DensityMatrix(M, label)


# ---------------------------------------------------------------------------
# factories
# ---------------------------------------------------------------------------

# unnormalized; the projector is outer(v, v) / 2, exact in binary
_BELL_KETS = {
    "phi+": np.array([1, 0, 0, 1]),
    "phi-": np.array([1, 0, 0, -1]),
    "psi+": np.array([0, 1, 1, 0]),
    "psi-": np.array([0, 1, -1, 0]),
}


def pure(ket, label=""):
    ket = np.asarray(ket, dtype=complex)
    ket = ket / np.linalg.norm(ket)
    return DensityMatrix(np.outer(ket, ket.conj()), label)


def make_bell(which="phi+"):
    key = which.lower()
    if key not in _BELL_KETS:
        raise ValueError(f"unknown Bell state {which!r}; choose from {sorted(_BELL_KETS)}")
    v = _BELL_KETS[key]
    return DensityMatrix(np.outer(v, v) / 2.0, f"bell-{key}")


def make_werner(p):
    """``p |phi+><phi+| + (1 - p) I/4``."""
    p = float(p)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"Werner mixing weight must lie in [0, 1], got {p}")
    bell = np.outer(_BELL_KETS["phi+"], _BELL_KETS["phi+"]) / 2.0
    return DensityMatrix(p * bell + (1.0 - p) * np.eye(4) / 4.0, f"werner-{p:g}")


def make_bell_diagonal(c1, c2, c3):
    """State with vanishing Bloch vectors and ``E = diag(c1, c2, c3)``."""
    return reconstruct(BlochDecomposition(np.zeros(3), np.zeros(3), np.diag([c1, c2, c3])),
                       f"bell-diagonal-{c1:g},{c2:g},{c3:g}")


def make_product(rho_a, rho_b, label="product"):
    A = _mat(rho_a)
    B = _mat(rho_b)
    if A.shape != (2, 2) or B.shape != (2, 2):
        raise ValueError("make_product needs two single-qubit states")
    DensityMatrix(A)
    DensityMatrix(B)
    return DensityMatrix(np.kron(A, B), label)


def qubit_state(bloch):
    """Single-qubit state with Bloch vector ``bloch``."""
    r = np.asarray(bloch, dtype=float)
    return DensityMatrix(0.5 * (IDENTITY2 + np.einsum("i,ikl->kl", r, np.array(PAULI))))


def _ginibre(rng, dim, rank):
    G = rng.standard_normal((dim, rank)) + 1j * rng.standard_normal((dim, rank))
    M = G @ G.conj().T
    return M / np.trace(M).real


def trial_seed(seed, index):
    """Deterministic per-trial seed derived from a base seed and a trial index."""
    return int(np.random.SeedSequence([int(seed), int(index)]).generate_state(1, np.uint64)[0])


def random_density(dim=4, rank=None, seed=0):
    """Ginibre-random state ``G G^dagger / tr(G G^dagger)``, ``G`` of shape dim x rank."""
    rank = dim if rank is None else int(rank)
    if dim not in (2, 4):
        raise ValueError(f"dim must be 2 or 4, got {dim}")
    if not 1 <= rank <= dim:
        raise ValueError(f"rank must lie in 1..{dim}, got {rank}")
    rng = np.random.default_rng(seed)
    return DensityMatrix(_ginibre(rng, dim, rank), f"random-d{dim}-r{rank}-s{seed}")


def random_density_batch(count, dim=4, rank=None, seed=0):
    """Stack of ``count`` unvalidated Ginibre matrices.

    Entry ``i`` equals ``random_density(dim, rank, trial_seed(seed, i)).matrix``.
    ``rank`` may be an int or a sequence cycled over the trials.
    """
    ranks = [dim] if rank is None else (list(rank) if np.iterable(rank) else [int(rank)])
    out = np.empty((count, dim, dim), dtype=complex)
    for i in range(count):
        rng = np.random.default_rng(trial_seed(seed, i))
        out[i] = _ginibre(rng, dim, ranks[i % len(ranks)])
    return out


def paper_product_state():
    """diag(0.9, 0.1) (x) diag(0.8, 0.2): zero discord, nonzero correlated coherence."""
    return make_product(np.diag([0.9, 0.1]), np.diag([0.8, 0.2]), "paper-product")


# upper triangle of the published channel state, in units of 1/16
_CHANNEL_UPPER = {(0, 1): -1j, (0, 2): 1, (0, 3): -1j, (1, 2): -1j, (1, 3): 1, (2, 3): -1j}


def paper_channel_state():
    """Separable teleportation channel with F = 13/24 and correlated coherence 1/16."""
    M = np.eye(4, dtype=complex) / 4.0
    for (i, j), v in _CHANNEL_UPPER.items():
        M[i, j] = v / 16.0
        M[j, i] = np.conj(v) / 16.0
    return DensityMatrix(M, "paper-channel")


# ---------------------------------------------------------------------------
# file I/O
# ---------------------------------------------------------------------------

def _fmt(x):
    return format(float(x) + 0.0, ".17g")


def dumps_state(rho):
    M = _mat(rho)
    label = rho.label if isinstance(rho, DensityMatrix) else ""
    rows = ",\n    ".join(
        "[" + ", ".join(f"[{_fmt(z.real)}, {_fmt(z.imag)}]" for z in row) + "]" for row in M
    )
    return (
        "{\n"
        f'  "dim": {M.shape[0]},\n'
        f'  "label": {json.dumps(label)},\n'
        f'  "rho": [\n    {rows}\n  ]\n'
        "}\n"
    )


def loads_state(text):
    """Parse a state document; raises ``ValueError``/``InvalidStateError`` on bad input."""
    doc = json.loads(text)
    try:
        dim = int(doc["dim"])
        raw = np.asarray(doc["rho"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed state document: {exc}") from exc
    if dim not in (2, 4) or raw.shape != (dim, dim, 2):
        raise ValueError(f"state document needs a {dim}x{dim} array of [re, im] pairs")
    return DensityMatrix(raw[..., 0] + 1j * raw[..., 1], str(doc.get("label", "")))


def save_state(rho, path):
    Path(path).write_text(dumps_state(rho))


def load_state(path):
    return loads_state(Path(path).read_text())
