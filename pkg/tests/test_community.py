import itertools

import networkx as nx
import numpy as np
import pytest

from alphacent import (
    Graph,
    NumericalError,
    connectivity_matrix,
    detect_communities,
    dominant_eigenpair,
    modularity_value,
    null_model,
)
from alphacent.community import leading_eigenvector_bisect, modularity_from_matrix, modularity_matrix, relabel

from conftest import random_connected

K3 = Graph.from_adjacency(np.ones((3, 3)) - np.eye(3))


def two_cliques(n=5, bridge=1.0):
    a = np.zeros((2 * n, 2 * n))
    a[:n, :n] = 1
    a[n:, n:] = 1
    np.fill_diagonal(a, 0)
    a[n - 1, n] = a[n, n - 1] = bridge
    return Graph.from_adjacency(a)


def test_null_model_k3():
    nm = null_model(K3.adjacency)
    assert nm.total == 6
    np.testing.assert_allclose(nm.expected, np.full((3, 3), 4 / 6))


def test_single_community_q_zero(rng):
    g = random_connected(rng, 10, symmetric=False)
    for alpha in (0.0, 0.05, 0.5, 1.0):
        assert abs(modularity_value(g, [0] * 10, alpha)) < 1e-12


def test_singletons_negative():
    g = Graph.from_adjacency(np.ones((4, 4)) - np.eye(4))
    assert modularity_value(g, [0, 1, 2, 3], 0.0) < 0


def test_q0_matches_newman_over_all_bisections(rng):
    g = random_connected(rng, 9)
    h = nx.from_numpy_array(np.asarray(g.adjacency))
    total = g.adjacency.sum()
    for bits in itertools.product([0, 1], repeat=8):
        s = (0,) + bits
        ours = modularity_value(g, s, 0.0, normalized=False)
        parts = [{i for i in range(9) if s[i] == k} for k in (0, 1)]
        ref = nx.community.modularity(h, [p for p in parts if p])
        assert ours == pytest.approx(ref * total, abs=1e-9)


def test_b_rows_and_columns_vanish(rng):
    g = random_connected(rng, 12, symmetric=False, weighted=True)
    for alpha in (0.0, 0.5 / dominant_eigenpair(g).lambda1):
        b = modularity_matrix(connectivity_matrix(g, alpha), symmetrize=False).matrix
        assert np.max(np.abs(b.sum(axis=0))) < 1e-8
        assert np.max(np.abs(b.sum(axis=1))) < 1e-8


def test_connectivity_modes(karate):
    g = karate.graph
    np.testing.assert_array_equal(connectivity_matrix(g, 0.0), g.adjacency)
    with pytest.raises(NumericalError):
        connectivity_matrix(g, 0.2)
    nc = connectivity_matrix(g, 0.2, normalized=True)
    assert nc.sum() == pytest.approx(1.0)
    with pytest.raises(ValueError):
        connectivity_matrix(g, 0.1, normalized=True, rounding=True)
    r = connectivity_matrix(g, 0.1, rounding=True)
    np.testing.assert_array_equal(r, np.rint(r))


def test_two_cliques_split():
    p = detect_communities(two_cliques(), 0.0)
    np.testing.assert_array_equal(p.assignment, [0] * 5 + [1] * 5)
    assert p.q_value > 0.3
    assert len(p.history) == 1


def test_complete_graph_not_split():
    g = Graph.from_adjacency(np.ones((6, 6)) - np.eye(6))
    p = detect_communities(g, 0.0)
    assert p.count == 1 and p.history == ()


def test_negative_spectrum_no_split():
    b = -np.eye(4) + 0.1 * (np.ones((4, 4)) - np.eye(4))
    assert np.all(np.linalg.eigvalsh(b) < 0)
    s, lam, dq = leading_eigenvector_bisect(b)
    assert s is None and dq == 0.0


def test_power_and_dense_agree(rng):
    g = random_connected(rng, 25, p=0.2)
    b = modularity_matrix(connectivity_matrix(g, 0.0)).matrix
    s_power, lam_p, _ = leading_eigenvector_bisect(b)
    w, v = np.linalg.eigh(b)
    s_dense = np.where(v[:, -1] >= 0, 1.0, -1.0)
    assert lam_p == pytest.approx(w[-1], rel=1e-8)
    assert np.array_equal(s_power, s_dense) or np.array_equal(s_power, -s_dense)


def test_delta_q_is_exact(rng):
    g = random_connected(rng, 16, p=0.25)
    p = detect_communities(g, 0.0)
    c = connectivity_matrix(g, 0.0)
    total = c.sum()
    assert sum(h.delta_q for h in p.history) == pytest.approx(p.q_value, abs=1e-12)
    assert p.q_value == pytest.approx(modularity_value(g, p.assignment, 0.0, normalized=False) / total)


def test_normalized_and_beta_invariance(rng):
    for _ in range(5):
        g = random_connected(rng, 18, p=0.2)
        alpha = 0.6 / dominant_eigenpair(g).lambda1
        ref = detect_communities(g, alpha).assignment
        np.testing.assert_array_equal(detect_communities(g, alpha, normalized=True).assignment, ref)
        for beta in (0.5, 2.0):
            np.testing.assert_array_equal(detect_communities(g, alpha, beta=beta).assignment, ref)


def test_past_radius_uses_normalized(karate):
    p = detect_communities(karate.graph, 0.5)
    q = detect_communities(karate.graph, 0.5, normalized=True)
    np.testing.assert_array_equal(p.assignment, q.assignment)


def test_relabel_and_modularity_from_matrix():
    np.testing.assert_array_equal(relabel([5, 5, 2, 7, 2]), [0, 0, 1, 2, 1])
    b = np.array([[1.0, -1.0], [-1.0, 1.0]])
    assert modularity_from_matrix(b, [0, 1]) == 2.0
    assert modularity_from_matrix(b, [0, 0]) == 0.0


def test_partition_communities():
    p = detect_communities(two_cliques(4), 0.0)
    assert [c.tolist() for c in p.communities()] == [[0, 1, 2, 3], [4, 5, 6, 7]]
    assert p.labels == tuple(str(i) for i in range(8))
