import numpy as np
import pytest

from corrcoh import measures as M
from corrcoh.linalg import partial_trace
from corrcoh.states import (
    DensityMatrix,
    make_bell,
    make_bell_diagonal,
    make_werner,
    pauli_decompose,
    random_density,
    random_density_batch,
)

from conftest import random_unitary
from oracles import (
    classical_quantum_state,
    conditional_entropy_projectors,
    discord_dense_grid,
    entropy_bits,
    hemisphere,
    random_product_state,
)

H_01 = 0.468995593589281203  # binary entropy of 0.1, mpmath at 30 digits


class TestPurityAndC2:
    def test_mixed(self, mixed):
        assert M.purity(mixed) == 0.25
        assert M.c2_coherence(mixed) == 0.0

    def test_pure(self, bell):
        assert M.purity(bell) == pytest.approx(1.0, abs=1e-15)
        assert M.c2_coherence(bell) == pytest.approx(3.0, abs=1e-14)

    def test_product(self, product_state):
        assert M.purity(product_state) == pytest.approx(0.82 * 0.68, abs=1e-15)
        assert M.c2_coherence(product_state) == pytest.approx(1.2304, abs=1e-14)

    def test_c_l2(self, product_state):
        assert M.c_l2_coherence(product_state) == pytest.approx(M.c2_coherence(product_state) / 4,
                                                                abs=1e-15)

    def test_qubit_range(self):
        for seed in range(20):
            c = M.c2_coherence(random_density(2, seed=seed))
            assert 0 <= c <= 1 + 1e-12

    def test_unitary_invariance(self, rng):
        for seed in range(50):
            rho = random_density(4, 1 + seed % 4, seed).matrix
            U = random_unitary(rng, 4)
            assert abs(M.c2_coherence(U @ rho @ U.conj().T) - M.c2_coherence(rho)) <= 1e-10


class TestCorrelatedCoherence:
    def test_product(self, product_state):
        assert M.correlated_coherence(product_state) == pytest.approx(0.2304, abs=1e-12)

    def test_channel(self, channel_state):
        assert M.correlated_coherence(channel_state) == pytest.approx(1 / 16, abs=1e-12)

    def test_bell(self, bell):
        assert M.correlated_coherence(bell) == pytest.approx(3.0, abs=1e-12)

    def test_equals_correlation_norm(self):
        rhos = random_density_batch(2000, 4, (1, 2, 3, 4), seed=31)
        for rho in rhos[:500]:
            cc = M.correlated_coherence(rho)
            assert abs(cc - pauli_decompose(rho).correlation_norm2) <= 1e-10
            assert -1e-12 <= cc <= 3 + 1e-12


class TestBasisCoherence:
    def test_l1_diagonal(self, product_state):
        assert M.l1_coherence(product_state) == 0.0

    def test_l1_bell(self, bell):
        assert M.l1_coherence(bell) == pytest.approx(1.0)

    def test_l1_channel(self, channel_state):
        assert M.l1_coherence(channel_state) == pytest.approx(0.75, abs=1e-15)

    def test_rel_entropy_diagonal(self, product_state):
        assert M.rel_entropy_coherence(product_state) == pytest.approx(0.0, abs=1e-12)

    def test_rel_entropy_plus(self):
        plus = DensityMatrix(np.full((2, 2), 0.5))
        assert M.rel_entropy_coherence(plus) == pytest.approx(1.0, abs=1e-12)

    def test_rel_entropy_bell(self, bell):
        assert M.rel_entropy_coherence(bell) == pytest.approx(1.0, abs=1e-12)

    def test_rel_entropy_oracle(self):
        for seed in range(20):
            rho = random_density(4, 1 + seed % 4, seed).matrix
            d = np.real(np.diag(rho))
            oracle = -np.sum(d * np.log2(d)) - entropy_bits(rho)
            assert M.rel_entropy_coherence(rho) == pytest.approx(oracle, abs=1e-9)


class TestEntropy:
    def test_pure(self, bell):
        assert M.von_neumann_entropy(bell) == pytest.approx(0.0, abs=1e-12)

    def test_mixed(self, mixed):
        assert M.von_neumann_entropy(mixed) == pytest.approx(2.0, abs=1e-14)

    def test_binary(self):
        assert M.von_neumann_entropy(np.diag([0.9, 0.1])) == pytest.approx(H_01, abs=1e-14)

    def test_rank_deficient(self):
        rho = random_density(4, 2, 3).matrix
        assert M.von_neumann_entropy(rho) == pytest.approx(entropy_bits(rho), abs=1e-10)
        assert 0 <= M.von_neumann_entropy(rho) <= 1 + 1e-12


class TestGeometricDiscord:
    def test_product(self, product_state):
        n, r, _ = M.geometric_discord(product_state)
        assert n == 0.0 and r == 0.0

    def test_bell(self, bell):
        n, r, k = M.geometric_discord(bell)
        assert n == pytest.approx(1.0, abs=1e-12)
        assert r == pytest.approx(2 / 3, abs=1e-12)
        assert k == pytest.approx(1.0, abs=1e-12)

    def test_mixed(self, mixed):
        assert M.geometric_discord(mixed)[0] == 0.0

    def test_ratio(self):
        for seed in range(50):
            n, r, _ = M.geometric_discord(random_density(4, 1 + seed % 4, seed))
            assert n >= 0 and r == pytest.approx(2 * n / 3, abs=1e-15)

    def test_bell_diagonal_regime(self, rng):
        for _ in range(200):
            c = rng.uniform(-1, 1, 3)
            try:
                rho = make_bell_diagonal(*c)
            except ValueError:
                continue
            e2 = np.sort(c ** 2)[::-1]
            assert abs(M.geometric_discord(rho)[0] - 0.5 * (e2[1] + e2[2])) <= 1e-10

    def test_classical_quantum_zero(self, rng):
        for _ in range(50):
            assert M.geometric_discord(classical_quantum_state(rng))[0] <= 1e-12


class TestNegativity:
    def test_bell(self, bell):
        assert M.negativity(bell) == pytest.approx(0.5, abs=1e-12)

    def test_channel(self, channel_state):
        assert M.negativity(channel_state) == 0.0

    def test_product(self, rng):
        for _ in range(20):
            assert M.negativity(random_product_state(rng)) == 0.0

    def test_werner_threshold(self):
        # entangled iff p > 1/3, negativity (3p - 1)/4
        for p in np.linspace(0, 1, 13):
            assert M.negativity(make_werner(p)) == pytest.approx(max(0.0, (3 * p - 1) / 4), abs=1e-12)


class TestEntropicDiscord:
    def test_bell(self, bell):
        d, n = M.entropic_discord(bell)
        assert d == pytest.approx(1.0, abs=1e-6)
        assert np.linalg.norm(n) == pytest.approx(1.0)

    def test_product(self, product_state):
        assert M.entropic_discord(product_state)[0] <= 1e-7

    def test_classically_correlated(self):
        rho = np.diag([0.5, 0, 0, 0.5])
        d, n = M.entropic_discord(rho)
        assert d <= 1e-7
        assert abs(n[2]) == pytest.approx(1.0, abs=1e-4)

    def test_werner(self):
        # closed form for the Werner family
        p = 0.5
        lam = np.array([1 + 3 * p, 1 - p, 1 - p, 1 - p]) / 4
        mutual = 2 + np.sum(lam * np.log2(lam))
        q = np.array([(1 + p) / 2, (1 - p) / 2])
        classical = 1 + np.sum(q * np.log2(q))
        assert M.entropic_discord(make_werner(p))[0] == pytest.approx(mutual - classical, abs=1e-8)

    def test_objective_matches_projector_oracle(self, rng):
        dirs = hemisphere(7, 11)
        for seed in range(10):
            rho = random_density(4, 1 + seed % 4, seed).matrix
            np.testing.assert_allclose(M.measured_conditional_entropy(rho, dirs),
                                       conditional_entropy_projectors(rho, dirs), atol=1e-10)

    def test_not_above_dense_grid(self):
        for seed in range(10):
            rho = random_density(4, 1 + seed % 4, 100 + seed).matrix
            assert M.entropic_discord(rho)[0] <= discord_dense_grid(rho, 60, 120) + 1e-8

    def test_local_unitary_invariance(self, rng):
        for seed in range(100):
            rho = random_density(4, 1 + seed % 4, 200 + seed).matrix
            U = np.kron(random_unitary(rng, 2), random_unitary(rng, 2))
            d1 = M.entropic_discord(rho)[0]
            d2 = M.entropic_discord(U @ rho @ U.conj().T)[0]
            assert abs(d1 - d2) <= 1e-6

    def test_classical_quantum(self, rng):
        for _ in range(30):
            rho = classical_quantum_state(rng)
            assert M.geometric_discord(rho)[0] <= 1e-12
            assert 0 <= M.entropic_discord(rho)[0] <= 1e-6

    def test_raw_value(self, product_state):
        d, _, raw = M.entropic_discord(product_state, return_raw=True)
        assert d == max(raw, 0.0)
        assert abs(raw) <= 1e-7

    def test_projector_pair(self):
        P, Q = M.MeasurementProjector([0, 3, 4]).projectors
        np.testing.assert_allclose(P @ P, P, atol=1e-15)
        np.testing.assert_allclose(P @ Q, 0, atol=1e-15)
        np.testing.assert_allclose(P + Q, np.eye(2), atol=1e-15)


class TestReport:
    def test_fields_and_invariants(self):
        for seed in range(10):
            rho = random_density(4, 1 + seed % 4, seed)
            rep = M.measure_report(rho)
            values = rep.to_dict()
            assert all(v >= -1e-9 for v in values.values())
            assert rep.c2 <= 3 + 1e-9
            assert rep.c_l2 == pytest.approx(rep.c2 / 4, abs=1e-12)

    def test_coherence_above_discord(self):
        # diagnostic only: relative-entropy coherence against measured discord
        for seed in range(60):
            rho = random_density(4, 1 + seed % 4, 300 + seed)
            assert M.rel_entropy_coherence(rho) >= M.entropic_discord(rho)[0] - 1e-9

    def test_reduced_states_unit_trace(self):
        for rho in random_density_batch(200, 4, (1, 2, 3, 4), seed=41):
            for keep in "AB":
                assert abs(np.trace(partial_trace(rho, keep)) - 1) <= 1e-12
