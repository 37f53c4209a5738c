"""Remote state preparation with a shared two-qubit state.

Alice measures her qubit along ``alpha`` and announces the outcome; Bob keeps
his conditional state for outcome +1 and applies the pi rotation
(Bloch vector -> minus itself) for outcome -1.  Everything here works on the
Bloch decomposition of the shared state.
"""

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .linalg import symmetric_eigen
from .states import BlochDecomposition, pauli_decompose

UNIT_TOL = 1e-10
PROB_FLOOR = 1e-12
DEGENERATE_TOL = 1e-12
CONVENTION_AXIS = np.array([0.0, 0.0, 1.0])


class ZeroProbabilityOutcome(ValueError):
    """The requested measurement outcome has (numerically) zero probability."""


def _bloch(state):
    if isinstance(state, BlochDecomposition):
        return state
    return pauli_decompose(state)


def normalize(v):
    """Scale a 3-vector to unit length; the zero vector is rejected."""
    v = np.asarray(v, dtype=float).reshape(3)
    norm = np.linalg.norm(v)
    if not np.isfinite(norm) or norm == 0.0:
        raise ValueError(f"cannot normalize {v}")
    return v / norm


def _unit(v, name):
    v = np.asarray(v, dtype=float).reshape(3)
    if abs(np.linalg.norm(v) - 1.0) > UNIT_TOL:
        raise ValueError(f"{name} must be a unit vector, got norm {np.linalg.norm(v):.12g}")
    return v


def orthonormal_frame(beta):
    """Return ``(u, v)`` with ``(u, v, beta)`` a right-handed orthonormal frame."""
    beta = _unit(beta, "beta")
    helper = np.zeros(3)
    helper[np.argmin(np.abs(beta))] = 1.0
    u = helper - (helper @ beta) * beta
    u /= np.linalg.norm(u)
    return u, np.cross(beta, u)


@dataclass(frozen=True)
class RspTask:
    target: np.ndarray
    beta: np.ndarray
    alpha: np.ndarray

    def __post_init__(self):
        for name in ("target", "beta", "alpha"):
            object.__setattr__(self, name, _unit(getattr(self, name), name))


@dataclass(frozen=True)
class RspResult:
    prob_plus: float
    prob_minus: float
    b_plus: np.ndarray
    b_minus: np.ndarray
    r: np.ndarray
    fidelity: float
    payoff: float


class OptimalDirection(NamedTuple):
    alpha: np.ndarray
    degenerate: bool


def conditional_state(state, alpha, outcome):
    """Bob's Bloch vector and its probability after Alice sees ``outcome`` along ``alpha``."""
    d = _bloch(state)
    alpha = _unit(alpha, "alpha")
    if outcome not in (1, -1):
        raise ValueError(f"outcome must be +1 or -1, got {outcome}")
    den = 1.0 + outcome * (alpha @ d.a)
    prob = 0.5 * den
    if prob < PROB_FLOOR:
        raise ZeroProbabilityOutcome(f"outcome {outcome:+d} along {alpha} has probability {prob:.3e}")
    return (d.b + outcome * (d.E.T @ alpha)) / den, float(prob)


def corrected_state(state, alpha):
    """Bob's average Bloch vector after the outcome-dependent correction."""
    d = _bloch(state)
    r = np.zeros(3)
    for outcome, rotation in ((1, 1.0), (-1, -1.0)):
        try:
            b_out, prob = conditional_state(d, alpha, outcome)
        except ZeroProbabilityOutcome:
            continue
        r += prob * rotation * b_out
    return r


def run_protocol(state, alpha, target):
    d = _bloch(state)
    alpha = _unit(alpha, "alpha")
    target = _unit(target, "target")
    outcomes = {}
    for k in (1, -1):
        try:
            outcomes[k] = conditional_state(d, alpha, k)
        except ZeroProbabilityOutcome:
            outcomes[k] = (np.zeros(3), 0.0)
    r = outcomes[1][1] * outcomes[1][0] - outcomes[-1][1] * outcomes[-1][0]
    overlap = float(r @ target)
    return RspResult(
        prob_plus=outcomes[1][1],
        prob_minus=outcomes[-1][1],
        b_plus=outcomes[1][0],
        b_minus=outcomes[-1][0],
        r=r,
        fidelity=0.5 * (1.0 + overlap),
        payoff=overlap ** 2,
    )


def rsp_fidelity(state, alpha, target):
    target = _unit(target, "target")
    return 0.5 * (1.0 + float(corrected_state(state, alpha) @ target))


def payoff(state, alpha, target):
    """Quadratic fidelity ``(2F - 1)^2``."""
    return (2.0 * rsp_fidelity(state, alpha, target) - 1.0) ** 2


def optimal_alpha(state, target):
    """Measurement direction maximizing the payoff: ``E s / |E s|``.

    When ``E s`` vanishes every direction is optimal (payoff 0); the z axis is
    returned with ``degenerate=True``.
    """
    d = _bloch(state)
    target = _unit(target, "target")
    es = d.E @ target
    norm = np.linalg.norm(es)
    if norm <= DEGENERATE_TOL:
        return OptimalDirection(CONVENTION_AXIS.copy(), True)
    return OptimalDirection(es / norm, False)


def optimal_payoff(state, target):
    d = _bloch(state)
    es = d.E @ _unit(target, "target")
    return float(es @ es)


def optimal_payoff_many(state, targets):
    """``|E s|^2`` for each row ``s`` of ``targets`` (rows assumed unit)."""
    d = _bloch(state)
    es = np.asarray(targets, dtype=float) @ d.E.T
    return np.einsum("ni,ni->n", es, es)


def circular_average_payoff(state, beta):
    """Mean optimal payoff over targets on the great circle orthogonal to ``beta``."""
    d = _bloch(state)
    beta = _unit(beta, "beta")
    return 0.5 * (d.correlation_norm2 - float(beta @ (d.E.T @ d.E) @ beta))


def circle_quadrature_average(state, beta, n_points=64):
    """Trapezoid average of the optimal payoff around the circle orthogonal to ``beta``."""
    u, v = orthonormal_frame(beta)
    phi = np.arange(n_points) * (2.0 * np.pi / n_points)
    targets = np.cos(phi)[:, None] * u + np.sin(phi)[:, None] * v
    return float(np.mean(optimal_payoff_many(state, targets)))


def min_average_payoff(state):
    """Worst case of the circular average over all axes, and the worst axis.

    The worst axis is the top eigenvector of ``E^T E``; the value is half the
    sum of the two smaller eigenvalues.
    """
    d = _bloch(state)
    w, V = symmetric_eigen(d.E.T @ d.E)
    w = np.clip(w, 0.0, None)
    beta = V[:, -1]
    if beta[np.argmax(np.abs(beta))] < 0.0:
        beta = -beta
    return 0.5 * float(w[0] + w[1]), beta / np.linalg.norm(beta)


def spherical_average_payoff(state):
    return _bloch(state).correlation_norm2 / 3.0


def payoff_coherence_identity(rho):
    """Return ``(spherical average payoff, C_c / 3, |difference|)``."""
    from .measures import correlated_coherence

    lhs = spherical_average_payoff(pauli_decompose(rho))
    rhs = correlated_coherence(rho) / 3.0
    return lhs, rhs, abs(lhs - rhs)


def sphere_rule(n_theta, n_phi):
    """Gauss-Legendre in cos(theta) times uniform trapezoid in phi.

    Returns unit vectors of shape (n_theta * n_phi, 3) and weights summing to 1.
    """
    if n_theta < 8 or n_phi < 8:
        raise ValueError("quadrature needs at least 8 nodes per angle")
    x, w = np.polynomial.legendre.leggauss(n_theta)
    phi = np.arange(n_phi) * (2.0 * np.pi / n_phi)
    sin_t = np.sqrt(1.0 - x * x)
    pts = np.stack(
        [
            np.outer(sin_t, np.cos(phi)),
            np.outer(sin_t, np.sin(phi)),
            np.repeat(x[:, None], n_phi, axis=1),
        ],
        axis=-1,
    ).reshape(-1, 3)
    weights = np.repeat(w / 2.0, n_phi) / n_phi
    return pts, weights


def quadrature_spherical_average(state, n_theta=64, n_phi=128):
    """Numerical sphere average of the optimal payoff over all targets."""
    pts, weights = sphere_rule(n_theta, n_phi)
    return float(weights @ optimal_payoff_many(state, pts))


# ---------------------------------------------------------------------------
# finite-shot simulation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SimulationResult:
    shots: int
    n_plus: int
    alpha: np.ndarray
    degenerate: bool
    empirical_r: np.ndarray
    empirical_fidelity: float
    empirical_payoff: float
    fidelity_stderr: float
    analytic_r: np.ndarray
    analytic_fidelity: float
    analytic_payoff: float


def simulate_rsp(rho, target, shots, seed=0, alpha=None, chunk_size=1 << 16):
    """Sample Alice's outcomes shot by shot and average Bob's corrected states.

    Chunk ``i`` draws from a generator spawned from ``SeedSequence(seed)``, so
    the result is bit-identical for fixed ``(seed, chunk_size)``.
    """
    shots = int(shots)
    if shots < 1:
        raise ValueError("shots must be at least 1")
    d = _bloch(rho)
    target = _unit(target, "target")
    if alpha is None:
        alpha, degenerate = optimal_alpha(d, target)
    else:
        alpha, degenerate = _unit(alpha, "alpha"), False
    exact = run_protocol(d, alpha, target)

    n_chunks = -(-shots // chunk_size)
    children = np.random.SeedSequence(int(seed)).spawn(n_chunks)
    n_plus = 0
    for i, child in enumerate(children):
        size = min(chunk_size, shots - i * chunk_size)
        draws = np.random.default_rng(child).random(size)
        n_plus += int(np.count_nonzero(draws < exact.prob_plus))
    n_minus = shots - n_plus

    # corrected per-shot vectors: b_plus for +1, -b_minus for -1
    c_plus, c_minus = exact.b_plus, -exact.b_minus
    r_emp = (n_plus * c_plus + n_minus * c_minus) / shots
    overlap = float(r_emp @ target)
    p_hat = n_plus / shots
    spread = float((c_plus - c_minus) @ target)
    stderr = 0.5 * abs(spread) * np.sqrt(p_hat * (1.0 - p_hat) / shots)
    return SimulationResult(
        shots=shots,
        n_plus=n_plus,
        alpha=alpha,
        degenerate=degenerate,
        empirical_r=r_emp,
        empirical_fidelity=0.5 * (1.0 + overlap),
        empirical_payoff=overlap ** 2,
        fidelity_stderr=float(stderr),
        analytic_r=exact.r,
        analytic_fidelity=exact.fidelity,
        analytic_payoff=exact.payoff,
    )
