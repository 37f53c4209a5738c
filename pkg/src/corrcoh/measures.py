"""Scalar coherence, discord and entanglement measures of qubit states.

Entropies are in bits.  Discord measures always measure subsystem A.
"""

from dataclasses import asdict, dataclass

import numpy as np

from . import _kernels
from .linalg import (
    IDENTITY2,
    PAULI,
    hermitian_eigen,
    partial_trace,
    partial_transpose_b,
    symmetric_eigen,
)
from .states import _mat, pauli_decompose

EIG_ZERO = 1e-12
GEOMETRIC_CLAMP = 1e-9
ENTROPIC_CLAMP = 1e-7

# hemisphere grid used to seed the discord search
DISCORD_GRID = (64, 128)
DISCORD_REFINE_TOL = 1e-10


@dataclass(frozen=True)
class MeasureReport:
    purity: float
    c2: float
    c_l2: float
    correlated_coherence: float
    l1_coherence: float
    rel_entropy_coherence: float
    geometric_discord_normalized: float
    geometric_discord_renormalized: float
    entropic_discord: float
    negativity: float

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class MeasurementProjector:
    """Projective measurement (I +/- n.sigma)/2 on one qubit."""

    direction: np.ndarray

    def __post_init__(self):
        n = np.asarray(self.direction, dtype=float).reshape(3)
        norm = np.linalg.norm(n)
        if norm == 0.0:
            raise ValueError("measurement direction must be nonzero")
        object.__setattr__(self, "direction", n / norm)

    @property
    def projectors(self):
        ns = np.einsum("i,ikl->kl", self.direction, np.array(PAULI))
        return 0.5 * (IDENTITY2 + ns), 0.5 * (IDENTITY2 - ns)


def _spectrum(M):
    w, _ = hermitian_eigen(M, tol=1e-10)
    return w


def _entropy_from_eigs(w):
    w = np.asarray(w, dtype=float)
    w = w[w > EIG_ZERO]
    return float(-np.sum(w * np.log2(w))) + 0.0


def von_neumann_entropy(rho):
    return _entropy_from_eigs(_spectrum(_mat(rho)))


def purity(rho):
    M = _mat(rho)
    return float(np.real(np.vdot(M, M)))


def c2_coherence(rho):
    """``d tr(rho^2) - 1``: distance to the maximally mixed state, rescaled to [0, d-1]."""
    M = _mat(rho)
    return M.shape[0] * purity(M) - 1.0


def c_l2_coherence(rho):
    M = _mat(rho)
    return purity(M) - 1.0 / M.shape[0]


def correlated_coherence(rho):
    M = _mat(rho)
    return c2_coherence(M) - c2_coherence(partial_trace(M, "A")) - c2_coherence(partial_trace(M, "B"))


def l1_coherence(rho):
    M = _mat(rho)
    off = ~np.eye(M.shape[0], dtype=bool)
    return float(np.sum(np.abs(M[off])))


def rel_entropy_coherence(rho):
    M = _mat(rho)
    diag = np.clip(np.diag(M).real, 0.0, None)
    return max(0.0, _entropy_from_eigs(diag) - von_neumann_entropy(M))


def geometric_discord(rho):
    """Closed-form geometric discord; returns (normalized, renormalized, k_max).

    normalized is ``(|a|^2 + |E|^2 - k_max) / 2`` and renormalized uses a 1/3
    prefactor, where k_max is the top eigenvalue of ``a a^T + E E^T``.
    """
    d = pauli_decompose(rho)
    K = np.outer(d.a, d.a) + d.E @ d.E.T
    k_max = float(symmetric_eigen(K)[0][-1])
    gap = float(d.a @ d.a) + d.correlation_norm2 - k_max
    if gap < 0.0:
        if gap < -2 * GEOMETRIC_CLAMP:
            raise ArithmeticError(f"geometric discord came out negative ({gap:.3e})")
        gap = 0.0
    return 0.5 * gap, gap / 3.0, k_max


def negativity(rho):
    w = _spectrum(partial_transpose_b(_mat(rho)))
    return float(-np.sum(w[w < 0.0])) + 0.0


# ---------------------------------------------------------------------------
# entropic discord
# ---------------------------------------------------------------------------

def hemisphere_grid(n_theta, n_phi):
    """Unit vectors with polar angle in [0, pi/2] and azimuth in [0, 2 pi)."""
    theta = np.linspace(0.0, 0.5 * np.pi, n_theta)
    phi = np.arange(n_phi) * (2.0 * np.pi / n_phi)
    T, P = np.meshgrid(theta, phi, indexing="ij")
    return np.stack([np.sin(T) * np.cos(P), np.sin(T) * np.sin(P), np.cos(T)], axis=-1).reshape(-1, 3)


def _tangent_frame(n):
    # axis least aligned with n keeps the cross product well conditioned
    helper = np.zeros(3)
    helper[np.argmin(np.abs(n))] = 1.0
    u = np.cross(n, helper)
    u /= np.linalg.norm(u)
    return u, np.cross(n, u)


def _refine(objective, n, value, step=0.05, tol=DISCORD_REFINE_TOL):
    """Coordinate descent on the sphere in a moving tangent frame."""
    while step > 1e-9:
        improved = False
        u, v = _tangent_frame(n)
        for t in (u, -u, v, -v):
            cand = n + step * t
            cand /= np.linalg.norm(cand)
            val = objective(cand[None])[0]
            if val < value - tol:
                n, value, improved = cand, val, True
                break
        if not improved:
            step *= 0.5
    return n, value


def measured_conditional_entropy(rho, directions):
    """Average entropy of B after measuring A along each row of ``directions``."""
    d = pauli_decompose(rho)
    dirs = np.atleast_2d(np.asarray(directions, dtype=float))
    dirs = dirs / np.linalg.norm(dirs, axis=1)[:, None]
    return _kernels.conditional_entropy(d.a, d.b, d.E, dirs)


def entropic_discord(rho, grid=DISCORD_GRID, n_starts=4, return_raw=False):
    """Projective-measurement discord on A and the minimizing direction.

    A hemisphere grid (antipodal directions give the same measurement) picks
    the ``n_starts`` best distinct seeds; each is polished by coordinate
    descent.  Values within -1e-7 of zero are clamped to zero; pass
    ``return_raw=True`` to also get the unclamped value.
    """
    M = _mat(rho)
    d = pauli_decompose(M)
    a, b, E = d.a, d.b, d.E

    def objective(dirs):
        return _kernels.conditional_entropy(a, b, E, dirs)

    dirs = hemisphere_grid(*grid)
    vals = objective(dirs)
    order = np.argsort(vals, kind="stable")
    seeds = []
    for idx in order:
        cand = dirs[idx]
        if all(abs(cand @ s) < 0.99 for s in seeds):
            seeds.append(cand)
        if len(seeds) == n_starts:
            break
    best_n, best_val = dirs[order[0]], vals[order[0]]
    for s in seeds:
        n, val = _refine(objective, s, objective(s[None])[0])
        if val < best_val:
            best_n, best_val = n, val

    s_a = von_neumann_entropy(partial_trace(M, "A"))
    s_ab = von_neumann_entropy(M)
    raw = s_a - s_ab + float(best_val)
    value = raw
    if value < 0.0:
        if value < -ENTROPIC_CLAMP:
            raise ArithmeticError(f"entropic discord came out negative ({value:.3e})")
        value = 0.0
    if best_n[2] < 0.0:
        best_n = -best_n
    if return_raw:
        return value, best_n, raw
    return value, best_n


def measure_report(rho):
    M = _mat(rho)
    geo_n, geo_r, _ = geometric_discord(M)
    return MeasureReport(
        purity=purity(M),
        c2=c2_coherence(M),
        c_l2=c_l2_coherence(M),
        correlated_coherence=correlated_coherence(M),
        l1_coherence=l1_coherence(M),
        rel_entropy_coherence=rel_entropy_coherence(M),
        geometric_discord_normalized=geo_n,
        geometric_discord_renormalized=geo_r,
        entropic_discord=entropic_discord(M)[0],
        negativity=negativity(M),
    )

