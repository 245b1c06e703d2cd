import numpy as np
import pytest

W3 = np.exp(2j * np.pi / 3)
# literal qutrit matrices, independent of muub.weyl
X3 = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], dtype=complex)
Z3 = np.diag([1, W3, W3**2])


def random_unitary(rng, d):
    A = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    Q, R = np.linalg.qr(A)
    return Q * (np.diag(R) / np.abs(np.diag(R)))


def random_state(rng, d):
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return v / np.linalg.norm(v)


def word_matrix(t):
    """(1/3) * sum of the nine listed words with exponents t, built from the literal matrices."""
    mp = np.linalg.matrix_power
    words = [np.eye(3), X3, mp(X3, 2), Z3, mp(Z3, 2), X3 @ Z3, mp(X3 @ Z3, 2), X3 @ mp(Z3, 2), mp(X3 @ mp(Z3, 2), 2)]
    return sum(W3**e * w for e, w in zip(t, words)) / 3


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)


@pytest.fixture(scope="session")
def reference_collection():
    from muub.reference import reference_d3_collection

    return reference_d3_collection()
