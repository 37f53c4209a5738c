import numpy as np
import pytest

from corrcoh import states


def random_hermitian(rng, n):
    G = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return 0.5 * (G + G.conj().T)


def random_unitary(rng, n):
    Z = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    Q, R = np.linalg.qr(Z)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_unit(rng, size=None):
    v = rng.standard_normal((3,) if size is None else (size, 3))
    return v / np.linalg.norm(v, axis=-1, keepdims=True)


@pytest.fixture
def rng():
    return np.random.default_rng(20261019)


@pytest.fixture
def product_state():
    return states.paper_product_state()


@pytest.fixture
def channel_state():
    return states.paper_channel_state()


@pytest.fixture
def bell():
    return states.make_bell("phi+")


@pytest.fixture
def mixed():
    return states.DensityMatrix(np.eye(4) / 4)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
