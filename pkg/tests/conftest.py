import numpy as np
import pytest

from alphacent import Graph, load_dataset


def random_connected(rng, n, p=0.3, symmetric=True, weighted=False):
    """Erdos-Renyi graph redrawn until connected (strongly, if directed)."""
    while True:
        a = (rng.random((n, n)) < p).astype(float)
        np.fill_diagonal(a, 0.0)
        if weighted:
            a *= rng.integers(1, 4, size=(n, n))
        if symmetric:
            a = np.triu(a, 1)
            a = a + a.T
        reach = np.linalg.matrix_power(np.eye(n) + (a > 0), n)
        if np.all(reach > 0):
            return Graph.from_adjacency(a, directed=not symmetric)


def spectral_gap_ok(g, ratio=0.95):
    """Non-bipartite with |lambda2| / lambda1 below ``ratio``."""
    mags = np.sort(np.abs(np.linalg.eigvals(g.adjacency)))[::-1]
    return mags[1] / mags[0] < ratio


@pytest.fixture(scope="session")
def karate():
    return load_dataset("karate")


@pytest.fixture
def rng():
    return np.random.default_rng(20240601)
