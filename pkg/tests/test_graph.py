import numpy as np
import pytest

from alphacent import Graph, GraphFormatError, degree_summary, load_edge_list, load_gml, symmetrize
from alphacent.graph import to_edge_list, to_gml


def test_edge_list_basic():
    g = load_edge_list("# comment\na b 2\nb c\n\nd\n")
    assert g.node_labels == ("a", "b", "c", "d")
    assert g.adjacency[0, 1] == g.adjacency[1, 0] == 2.0
    assert g.adjacency[1, 2] == 1.0
    assert g.adjacency[3].sum() == 0


def test_edge_list_directed_and_accumulate():
    g = load_edge_list("a b\na b 2\nb a", directed=True)
    assert g.adjacency[0, 1] == 3.0 and g.adjacency[1, 0] == 1.0


def test_edge_list_unweighted_ignores_weight():
    g = load_edge_list("a b 5", weighted=False)
    assert g.adjacency[0, 1] == 1.0


def test_self_loop_counted_once():
    g = load_edge_list("a a 2\na b")
    assert g.adjacency[0, 0] == 2.0


@pytest.mark.parametrize("text", ["a b c d", "a b x", "a b -1", "a b nan", "a b inf"])
def test_edge_list_errors(text):
    with pytest.raises(GraphFormatError, match="line 1"):
        load_edge_list(text)


GML = """
graph [
  directed 0
  node [ id 0 label "A" value "x" ]
  node [ id 1 label "B" value "y" ]
  node [ id 2 label "C" value "x" ]
  edge [ source 0 target 1 ]
  edge [ source 1 target 2 value 3 ]
]
"""


def test_gml():
    g = load_gml(GML)
    assert g.node_labels == ("A", "B", "C")
    assert not g.directed
    assert g.adjacency[1, 2] == 3.0 and g.adjacency[2, 1] == 3.0
    assert g.node_metadata["A"]["value"] == "x"


@pytest.mark.parametrize(
    "text",
    [
        "graph [ node [ id 0 ] edge [ source 0 target 5 ] ]",
        "graph [ node [ id 0 ] node [ id 0 ] ]",
        "graph [ node [ label \"a\" ] ]",
        "graph [ node [ id 0 ] edge [ target 0 ] ]",
        "graph [ node [ id 0 ",
    ],
)
def test_gml_errors(text):
    with pytest.raises(GraphFormatError):
        load_gml(text)


def test_roundtrip_edge_list_and_gml(rng):
    a = rng.integers(0, 3, size=(6, 6)).astype(float)
    g = Graph.from_adjacency(a, labels=[f"n{i}" for i in range(6)], directed=True)
    g2 = load_edge_list(to_edge_list(g), directed=True)
    assert g2.node_labels == g.node_labels
    np.testing.assert_array_equal(g2.adjacency, g.adjacency)
    g3 = load_gml(to_gml(g))
    np.testing.assert_array_equal(g3.adjacency, g.adjacency)
    assert g3.directed


def test_roundtrip_isolated_nodes():
    g = load_edge_list("a b\nz\n")
    assert load_edge_list(to_edge_list(g)).node_labels == ("a", "b", "z")


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph.from_adjacency([[0, 1], [0, 0]], directed=False)
    with pytest.raises(ValueError):
        Graph.from_adjacency([[0, -1], [-1, 0]])
    g = Graph.from_adjacency([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        g.adjacency[0, 0] = 5


def test_symmetrize_and_degrees():
    g = load_edge_list("a b 2\nb c\nc a", directed=True)
    s = symmetrize(g)
    assert not s.directed
    np.testing.assert_array_equal(s.adjacency, g.adjacency + g.adjacency.T)
    d = degree_summary(g)
    assert d.max_out == 2.0 and d.max_in == 2.0
