import numpy as np
import pytest

from ergokit import BlochVector, state_from_bloch


@pytest.fixture
def rng():
    return np.random.default_rng(20260808)


def random_bloch(rng, n):
    """n Bloch vectors drawn uniformly from the unit ball."""
    v = rng.normal(size=(n, 3))
    v /= np.linalg.norm(v, axis=1, keepdims=True)
    v *= rng.uniform(size=(n, 1)) ** (1.0 / 3.0)
    return [BlochVector(*row) for row in v]


def random_states(rng, n):
    """n valid qubit states drawn uniformly from the Bloch ball."""
    return [state_from_bloch(b) for b in random_bloch(rng, n)]


def random_density_matrix(rng, dim):
    """Random valid density matrix: normalized A A^dag with complex Gaussian A."""
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    m = a @ a.conj().T
    return m / m.trace()


@pytest.fixture
def make_bloch(rng):
    return lambda n: random_bloch(rng, n)


@pytest.fixture
def make_states(rng):
    return lambda n: random_states(rng, n)


@pytest.fixture
def make_density(rng):
    return lambda dim: random_density_matrix(rng, dim)
