"""Batch checks of the exact identities over random states.

Each suite returns a :class:`SuiteResult` with the largest defect seen and
the trial that produced it.  Trial ``i`` always uses
``trial_seed(seed, i)``, so results do not depend on evaluation order.
"""

from dataclasses import dataclass

import numpy as np

from .rsp import (
    corrected_state,
    min_average_payoff,
    normalize,
    optimal_payoff_many,
    spherical_average_payoff,
)
from .states import (
    BlochDecomposition,
    _ginibre,
    make_werner,
    pauli_decompose_batch,
    random_density_batch,
    reconstruct_matrix,
    state_digest,
    trial_seed,
    validate,
)
from .teleport import teleport_fidelity

RANKS = (1, 2, 3, 4)


@dataclass
class SuiteResult:
    name: str
    trials: int
    max_defect: float
    worst_trial: int
    worst_seed: int
    worst_digest: str

    def passed(self, tol):
        return self.max_defect <= tol


def correlated_coherence_batch(rhos):
    """``C_2(rho) - C_2(rho_A) - C_2(rho_B)`` for a stack of 4x4 states."""
    rhos = np.asarray(rhos, dtype=complex)
    t = rhos.reshape(-1, 2, 2, 2, 2)
    ra = np.einsum("nijkj->nik", t)
    rb = np.einsum("nijil->njl", t)

    def c2(m):
        return m.shape[-1] * np.real(np.einsum("nij,nij->n", m, m.conj())) - 1.0

    return c2(rhos) - c2(ra) - c2(rb)


def identity_defects(rhos):
    """Per-state defects of ``P = C_c / 3`` and ``C_c = sum E_ij^2``."""
    _, _, E = pauli_decompose_batch(rhos)
    e2 = np.sum(E ** 2, axis=(1, 2))
    cc = correlated_coherence_batch(rhos)
    return np.abs(e2 / 3.0 - cc / 3.0), np.abs(cc - e2)


def _worst(name, defects, seed, rhos=None, digests=None):
    i = int(np.argmax(defects)) if len(defects) else 0
    digest = digests[i] if digests is not None else (state_digest(rhos[i]) if rhos is not None else "")
    return SuiteResult(name, len(defects), float(np.max(defects, initial=0.0)), i,
                       trial_seed(seed, i), digest)


def suite_identity(trials, seed=0):
    rhos = random_density_batch(trials, 4, RANKS, seed)
    payoff_defect, cc_defect = identity_defects(rhos)
    return _worst("payoff-coherence identity", np.maximum(payoff_defect, cc_defect), seed, rhos)


def suite_corrected_state(trials, seed=0):
    rhos = random_density_batch(trials, 4, RANKS, seed)
    a, b, E = pauli_decompose_batch(rhos)
    defects = np.empty(trials)
    for i in range(trials):
        rng = np.random.default_rng(trial_seed(seed + 1, i))
        alpha = normalize(rng.standard_normal(3))
        d = BlochDecomposition(a[i], b[i], E[i])
        defects[i] = np.max(np.abs(corrected_state(d, alpha) - E[i].T @ alpha))
    return _worst("corrected-state closed form", defects, seed, rhos)


def zero_correlation_partners(count, seed=0, max_draws=None):
    """States ``reconstruct(a, b, 0)`` built from random states' Bloch vectors.

    Random states whose local vectors do not fit a zero-correlation state
    (``|a| + |b| > 1``) are skipped.  Returns the matrices and their source
    trial indices.
    """
    max_draws = 20 * count if max_draws is None else max_draws
    out, idx = [], []
    i = 0
    while len(out) < count and i < max_draws:
        rho = _ginibre(np.random.default_rng(trial_seed(seed, i)), 4, RANKS[i % 4])
        a, b, _ = pauli_decompose_batch(rho[None])
        M = reconstruct_matrix(a[0], b[0], np.zeros((3, 3)))
        if validate(M).valid:
            out.append(M)
            idx.append(i)
        i += 1
    return np.array(out), idx


def suite_zero_cc(trials, seed=0, n_targets=16):
    mats, idx = zero_correlation_partners(trials, seed)
    defects = np.empty(len(mats))
    rng = np.random.default_rng(seed)
    targets = rng.standard_normal((n_targets, 3))
    targets /= np.linalg.norm(targets, axis=1)[:, None]
    for k, M in enumerate(mats):
        fid = teleport_fidelity(M)
        cc = correlated_coherence_batch(M[None])[0]
        pay = optimal_payoff_many(M, targets).max()
        defects[k] = max(abs(fid - 0.5), abs(cc), pay)
    res = _worst("zero correlated coherence certificate", defects, seed, mats)
    res.worst_trial = idx[res.worst_trial] if idx else 0
    res.worst_seed = trial_seed(seed, res.worst_trial)
    return res


def suite_werner(points=101, seed=0):
    ps = np.linspace(0.0, 1.0, points)
    defects = np.empty(points)
    digests = []
    for i, p in enumerate(ps):
        w = make_werner(p)
        pmin, _ = min_average_payoff(w)
        defects[i] = max(
            abs(teleport_fidelity(w) - 0.5 * (1.0 + p)),
            abs(spherical_average_payoff(w) - p * p),
            abs(pmin - p * p),
        )
        digests.append(w.digest())
    return _worst("werner closed forms", defects, seed, digests=digests)


def run_all(trials, seed=0):
    return [
        suite_identity(trials, seed),
        suite_corrected_state(trials, seed),
        suite_zero_cc(trials, seed),
        suite_werner(seed=seed),
    ]

