"""Graph container and the text loaders used throughout the package.

Nodes are indexed in order of first appearance in the input, so every matrix
produced downstream is indexed consistently and outputs are deterministic.
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .errors import GraphFormatError

logger = logging.getLogger(__name__)

__all__ = [
    "Graph",
    "DegreeSummary",
    "load_edge_list",
    "load_gml",
    "symmetrize",
    "degree_summary",
    "to_edge_list",
    "to_gml",
]


@dataclass(frozen=True)
class Graph:
    """Weighted, possibly directed graph with a dense adjacency matrix.

    ``adjacency[i, j]`` is the total weight of edges ``i -> j``. For undirected
    graphs the matrix is symmetric and ``edges`` lists each edge once.
    """

    node_labels: tuple[str, ...]
    directed: bool
    edges: tuple[tuple[int, int, float], ...]
    adjacency: np.ndarray
    node_metadata: Mapping[str, Mapping[str, Any]] = field(default_factory=dict)

    def __post_init__(self):
        n = len(self.node_labels)
        if len(set(self.node_labels)) != n:
            raise GraphFormatError("node labels must be unique")
        adj = np.array(self.adjacency, dtype=float)
        if adj.shape != (n, n):
            raise GraphFormatError(f"adjacency shape {adj.shape} does not match {n} nodes")
        if np.any(adj < 0):
            raise GraphFormatError("negative edge weight")
        if not self.directed and not np.array_equal(adj, adj.T):
            raise GraphFormatError("undirected graph needs a symmetric adjacency matrix")
        adj.setflags(write=False)
        object.__setattr__(self, "adjacency", adj)
        object.__setattr__(self, "node_labels", tuple(self.node_labels))
        object.__setattr__(self, "edges", tuple(self.edges))

    @property
    def node_count(self) -> int:
        return len(self.node_labels)

    def index(self, label: str) -> int:
        try:
            return self.node_labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    @classmethod
    def from_adjacency(cls, matrix, labels: Sequence[str] | None = None, directed: bool | None = None) -> "Graph":
        """Build a graph from a matrix; ``directed`` defaults to ``not symmetric``."""
        a = np.asarray(matrix, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise GraphFormatError("adjacency must be a square matrix")
        n = a.shape[0]
        if labels is None:
            labels = [str(i) for i in range(n)]
        if directed is None:
            directed = not np.array_equal(a, a.T)
        if directed:
            edges = [(int(i), int(j), float(a[i, j])) for i, j in zip(*np.nonzero(a))]
        else:
            edges = [(int(i), int(j), float(a[i, j])) for i, j in zip(*np.nonzero(np.triu(a)))]
        return cls(tuple(labels), bool(directed), tuple(edges), a)


@dataclass(frozen=True)
class DegreeSummary:
    in_degree: np.ndarray
    out_degree: np.ndarray
    max_in: float
    max_out: float


class _Builder:
    """Accumulates labelled edges in first-appearance node order."""

    def __init__(self, directed: bool):
        self.directed = directed
        self.index: dict[str, int] = {}
        self.edges: list[tuple[int, int, float]] = []

    def node(self, label: str) -> int:
        if label not in self.index:
            self.index[label] = len(self.index)
        return self.index[label]

    def edge(self, i: int, j: int, w: float):
        self.edges.append((i, j, w))

    def build(self, metadata=None) -> Graph:
        n = len(self.index)
        adj = np.zeros((n, n))
        for i, j, w in self.edges:
            adj[i, j] += w
            if not self.directed and i != j:
                adj[j, i] += w
        return Graph(tuple(self.index), self.directed, tuple(self.edges), adj, metadata or {})


def load_edge_list(text: str, directed: bool = False, weighted: bool = True) -> Graph:
    """Parse a whitespace-separated edge list.

    Each non-comment line is ``src dst [weight]``; ``#`` starts a comment. A line
    holding a single token declares an isolated node. Missing weights default
    to 1, and repeated edges accumulate. With ``weighted=False`` any third
    column is ignored.
    """
    b = _Builder(directed)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 1:
            b.node(parts[0])
            continue
        if len(parts) > 3:
            raise GraphFormatError(f"expected 'src dst [weight]', got {len(parts)} fields", lineno)
        w = 1.0
        if len(parts) == 3 and weighted:
            try:
                w = float(parts[2])
            except ValueError:
                raise GraphFormatError(f"bad weight {parts[2]!r}", lineno) from None
            if not np.isfinite(w):
                raise GraphFormatError(f"non-finite weight {parts[2]!r}", lineno)
            if w < 0:
                raise GraphFormatError(f"negative weight {w}", lineno)
        b.edge(b.node(parts[0]), b.node(parts[1]), w)
    return b.build()


_GML_TOKEN = re.compile(r'\s*(?:(\[)|(\])|"([^"]*)"|([^\s\[\]"]+))')


def _gml_tokens(text: str):
    pos = 0
    text = "\n".join(line for line in text.splitlines() if not line.lstrip().startswith("#"))
    while pos < len(text):
        m = _GML_TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip():
                raise GraphFormatError(f"unexpected GML input near {text[pos:pos + 20]!r}")
            break
        pos = m.end()
        if m.group(1):
            yield "["
        elif m.group(2):
            yield "]"
        elif m.group(3) is not None:
            yield ("str", m.group(3))
        elif m.group(4) is not None:
            yield ("atom", m.group(4))


def _gml_value(tok):
    kind, s = tok
    if kind == "str":
        return s
    try:
        return int(s)
    except ValueError:
        pass
    try:
        return float(s)
    except ValueError:
        return s


def _gml_parse(tokens, nested: bool = False) -> list[tuple[str, Any]]:
    items: list[tuple[str, Any]] = []
    for tok in tokens:
        if tok == "]":
            if not nested:
                raise GraphFormatError("unbalanced ']' in GML")
            return items
        if tok == "[" or tok[0] != "atom":
            raise GraphFormatError(f"expected a GML key, got {tok!r}")
        key = tok[1]
        val = next(tokens, None)
        if val is None or val == "]":
            raise GraphFormatError(f"key {key!r} has no value")
        items.append((key, _gml_parse(tokens, True) if val == "[" else _gml_value(val)))
    if nested:
        raise GraphFormatError("unterminated '[' in GML")
    return items


_NODE_KEYS = {"id", "label", "value", "graphics", "name"}
_EDGE_KEYS = {"source", "target", "value", "weight", "graphics", "label", "id"}


def load_gml(text: str) -> Graph:
    """Parse the GML subset used by the classic benchmark files.

    Only ``graph``/``node``/``edge`` blocks with ``id``, ``label``, ``source``,
    ``target`` and an optional ``value`` are understood; other keys are ignored
    with a warning. Node ``value`` attributes are kept in ``node_metadata``; an
    edge ``value`` (or ``weight``) becomes the edge weight.
    """
    top = _gml_parse(_gml_tokens(text))
    graphs = [v for k, v in top if k == "graph"]
    if len(graphs) != 1 or not isinstance(graphs[0], list):
        raise GraphFormatError("expected exactly one graph [ ... ] block")
    body = graphs[0]
    directed = False
    nodes, edges = [], []
    ignored: set[str] = set()
    for key, val in body:
        if key == "directed":
            directed = bool(val)
        elif key == "node":
            nodes.append(dict(val))
            ignored.update(k for k, _ in val if k not in _NODE_KEYS)
        elif key == "edge":
            edges.append(dict(val))
            ignored.update(k for k, _ in val if k not in _EDGE_KEYS)
        else:
            ignored.add(key)
    if ignored:
        logger.warning("ignoring unknown GML keys: %s", ", ".join(sorted(ignored)))

    b = _Builder(directed)
    by_id: dict[Any, int] = {}
    metadata: dict[str, dict[str, Any]] = {}
    for nd in nodes:
        if "id" not in nd:
            raise GraphFormatError("node without id")
        if nd["id"] in by_id:
            raise GraphFormatError(f"duplicate node id {nd['id']!r}")
        label = str(nd.get("label", nd["id"]))
        if label in b.index:
            raise GraphFormatError(f"duplicate node label {label!r}")
        by_id[nd["id"]] = b.node(label)
        if "value" in nd:
            metadata[label] = {"value": nd["value"]}
    for ed in edges:
        for k in ("source", "target"):
            if k not in ed:
                raise GraphFormatError(f"edge without {k}")
            if ed[k] not in by_id:
                raise GraphFormatError(f"edge {k} {ed[k]!r} is not a known node id")
        w = float(ed.get("value", ed.get("weight", 1.0)))
        if w < 0:
            raise GraphFormatError(f"negative weight {w}")
        b.edge(by_id[ed["source"]], by_id[ed["target"]], w)
    return b.build(metadata)


def symmetrize(g: Graph) -> Graph:
    """Return the undirected graph with adjacency ``A + A.T``."""
    a = g.adjacency + g.adjacency.T
    out = Graph.from_adjacency(a, g.node_labels, directed=False)
    return Graph(out.node_labels, False, out.edges, out.adjacency, g.node_metadata)


def degree_summary(g: Graph) -> DegreeSummary:
    a = g.adjacency
    din, dout = a.sum(axis=0), a.sum(axis=1)
    return DegreeSummary(
        in_degree=din,
        out_degree=dout,
        max_in=float(din.max()) if din.size else 0.0,
        max_out=float(dout.max()) if dout.size else 0.0,
    )


def _matrix_edges(g: Graph) -> Iterable[tuple[int, int, float]]:
    a = g.adjacency
    mask = a if g.directed else np.triu(a)
    for i, j in zip(*np.nonzero(mask)):
        yield int(i), int(j), float(a[i, j])


def to_edge_list(g: Graph) -> str:
    """Serialize to the edge-list format; ``load_edge_list`` inverts this exactly."""
    bad = [lab for lab in g.node_labels if not lab or re.search(r"[\s#]", lab)]
    if bad:
        raise GraphFormatError(f"label {bad[0]!r} cannot be written to an edge list; use GML")
    # every node is declared first: keeps isolated nodes and the index order
    lines = list(g.node_labels)
    lines += [f"{g.node_labels[i]} {g.node_labels[j]} {w!r}" for i, j, w in _matrix_edges(g)]
    return "\n".join(lines) + "\n"


def _gml_quote(s: str) -> str:
    if '"' in s:
        raise GraphFormatError(f"label {s!r} contains a double quote")
    return f'"{s}"'


def to_gml(g: Graph) -> str:
    out = ["graph [", f"  directed {int(g.directed)}"]
    for i, lab in enumerate(g.node_labels):
        out.append("  node [")
        out.append(f"    id {i}")
        out.append(f"    label {_gml_quote(lab)}")
        meta = g.node_metadata.get(lab, {})
        if "value" in meta:
            v = meta["value"]
            out.append(f"    value {_gml_quote(v) if isinstance(v, str) else v!r}")
        out.append("  ]")
    for i, j, w in _matrix_edges(g):
        out.append(f"  edge [\n    source {i}\n    target {j}\n    value {w!r}\n  ]")
    out.append("]")
    return "\n".join(out) + "\n"
