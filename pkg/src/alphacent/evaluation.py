"""Ground-truth scoring, alpha sweeps, ranking comparisons and z-P roles."""

from __future__ import annotations

import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

import numpy as np

from .centrality import DEFAULT_MAX_ITER, DEFAULT_TOL, alpha_centrality_scores
from .community import Partition, detect_communities
from .errors import GraphFormatError
from .graph import Graph

__all__ = [
    "GroundTruth",
    "SweepRecord",
    "RoleCoordinates",
    "load_labels",
    "pair_purity",
    "purity",
    "sweep",
    "score_trajectories",
    "rank_nodes",
    "ordering_equal",
    "role_coordinates",
    "classify_role",
]

HUB_Z = 2.5


@dataclass(frozen=True)
class GroundTruth:
    """Class label per node; ``excluded`` nodes are left out of purity."""

    labels: Mapping[str, str]
    excluded: frozenset = field(default_factory=frozenset)

    @property
    def classes(self) -> list[str]:
        return sorted(set(self.labels.values()))

    @classmethod
    def from_metadata(cls, g: Graph, key: str = "value", excluded: Iterable[str] = ()) -> "GroundTruth":
        labels = {lab: str(meta[key]) for lab, meta in g.node_metadata.items() if key in meta}
        return cls(labels, frozenset(excluded))


def load_labels(text: str, exclude_text: str = "") -> GroundTruth:
    """Parse ``node<TAB>class`` lines plus an optional one-label-per-line exclusion list."""
    labels: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip() or raw.lstrip().startswith("#"):
            continue
        parts = raw.rstrip("\n").split("\t")
        if len(parts) != 2 or not parts[0].strip() or not parts[1].strip():
            raise GraphFormatError("expected 'node<TAB>class'", lineno)
        node, cls = parts[0].strip(), parts[1].strip()
        if node in labels:
            raise GraphFormatError(f"node {node!r} labelled twice", lineno)
        labels[node] = cls
    excluded = frozenset(
        line.strip() for line in exclude_text.splitlines() if line.strip() and not line.lstrip().startswith("#")
    )
    return GroundTruth(labels, excluded)


def pair_purity(assigned: Sequence, classes: Sequence) -> float:
    """Fraction of same-class pairs that share a discovered community."""
    assigned = np.asarray(assigned)
    classes = np.asarray(classes)
    same_class = classes[:, None] == classes[None, :]
    same_group = assigned[:, None] == assigned[None, :]
    iu = np.triu_indices(len(classes), k=1)
    total = int(same_class[iu].sum())
    if total == 0:
        raise ValueError("purity needs at least one pair of nodes sharing a class")
    return float((same_class & same_group)[iu].sum()) / total


def purity(partition: Partition, truth: GroundTruth) -> float:
    """Pair-counting purity of ``partition`` against ``truth``.

    Only labelled, non-excluded nodes take part.
    """
    idx, cls = [], []
    for i, lab in enumerate(partition.labels):
        if lab in truth.labels and lab not in truth.excluded:
            idx.append(i)
            cls.append(truth.labels[lab])
    return pair_purity(partition.assignment[idx], cls)


@dataclass(frozen=True)
class SweepRecord:
    alpha: float
    group_count: int
    purity: Optional[float]
    node_scores: np.ndarray
    q_value: float
    partition: Optional[Partition] = None


def _sweep_one(g, truth, alpha, beta, normalized, rounding, tol, max_iter):
    p = detect_communities(g, alpha, beta=beta, normalized=normalized, rounding=rounding, tol=tol, max_iter=max_iter)
    scores = alpha_centrality_scores(g, alpha, beta=beta, tol=tol, max_iter=max_iter).node_scores
    pu = purity(p, truth) if truth is not None else None
    return SweepRecord(alpha, p.count, pu, scores, p.q_value, p)


def sweep(
    g: Graph,
    truth: Optional[GroundTruth],
    alphas: Iterable[float],
    beta: float = 1.0,
    normalized: bool = False,
    rounding: bool = False,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    max_workers: Optional[int] = None,
) -> list[SweepRecord]:
    """Detect communities and score nodes at each alpha; sorted by alpha.

    ``truth=None`` skips purity. With ``max_workers`` the alphas run on a
    thread pool; results are identical either way.
    """
    alphas = sorted(set(float(a) for a in alphas))
    args = (beta, normalized, rounding, tol, max_iter)
    if max_workers and len(alphas) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as ex:
            records = list(ex.map(lambda a: _sweep_one(g, truth, a, *args), alphas))
    else:
        records = [_sweep_one(g, truth, a, *args) for a in alphas]
    return sorted(records, key=lambda r: r.alpha)


def score_trajectories(
    g: Graph, alphas: Sequence[float], beta: float = 1.0, tol: float = DEFAULT_TOL, max_iter: int = DEFAULT_MAX_ITER
) -> np.ndarray:
    """Normalized alpha-centrality scores, one row per alpha."""
    return np.vstack([alpha_centrality_scores(g, a, beta, tol, max_iter).node_scores for a in alphas])


def _natural_key(label: str):
    return tuple((0, int(t), "") if t.isdigit() else (1, 0, t) for t in re.findall(r"\d+|\D+", label))


def rank_nodes(scores: Sequence[float], labels: Sequence[str], tol: float = 1e-12) -> list[tuple[str, float]]:
    """Nodes by descending score; ties (within ``tol`` relative) by label.

    Labels compare in natural order, so ``"2"`` sorts before ``"10"``.
    """
    s = np.asarray(scores, dtype=float)
    if s.shape[0] != len(labels):
        raise ValueError("scores and labels differ in length")
    if np.any(np.isnan(s)):
        raise ValueError("NaN score")
    scale = float(np.max(np.abs(s))) if s.size else 0.0
    order = sorted(range(len(labels)), key=lambda i: _natural_key(labels[i]))
    # stable sort on a descending score, collapsing near-ties to one key
    quantum = tol * scale if scale > 0 else 0.0
    if quantum > 0:
        keys = np.round(s / quantum)
    else:
        keys = s
    order.sort(key=lambda i: -keys[i])
    return [(labels[i], float(s[i])) for i in order]


def ordering_equal(a: Sequence[float], b: Sequence[float], tol: float = 1e-12, relative: bool = True) -> bool:
    """True iff ``sign(a_i - a_j) == sign(b_i - b_j)`` for every pair.

    Differences below ``tol`` count as ties on either side; with ``relative``
    the tolerance is scaled by each vector's largest magnitude.
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape != b.shape:
        raise ValueError("vectors differ in length")

    def signs(x):
        t = tol * (float(np.max(np.abs(x))) if relative and x.size else 1.0)
        d = x[:, None] - x[None, :]
        out = np.sign(d)
        out[np.abs(d) < t] = 0
        return out

    return bool(np.array_equal(signs(a), signs(b)))


@dataclass(frozen=True)
class RoleCoordinates:
    z: np.ndarray
    p: np.ndarray
    roles: tuple[str, ...]


def classify_role(z: float, p: float) -> str:
    """Role region of the z-P plane (hubs at ``z >= 2.5``)."""
    if z >= HUB_Z:
        if p <= 0.30:
            return "provincial hub"
        if p <= 0.75:
            return "connector hub"
        return "kinless hub"
    if p <= 0.05:
        return "ultra-peripheral"
    if p <= 0.62:
        return "peripheral"
    if p <= 0.80:
        return "connector"
    return "kinless"


def role_coordinates(g: Graph, partition: Partition) -> RoleCoordinates:
    """Within-community degree z-score and participation coefficient per node.

    Directed graphs are read as undirected (``A + A.T``); self-loops are
    ignored. Members of singleton or constant-degree communities get ``z = 0``.
    """
    a = np.array(g.adjacency, dtype=float)
    if g.directed:
        a = a + a.T
    np.fill_diagonal(a, 0.0)
    s = np.asarray(partition.assignment)
    if s.shape[0] != g.node_count:
        raise ValueError("partition does not cover the graph")
    k = int(s.max()) + 1
    onehot = np.zeros((s.size, k))
    onehot[np.arange(s.size), s] = 1.0
    per_comm = a @ onehot  # kappa_is: links from i into community s
    degree = per_comm.sum(axis=1)
    within = per_comm[np.arange(s.size), s]

    z = np.zeros(s.size)
    for c in range(k):
        members = np.flatnonzero(s == c)
        sd = within[members].std()
        if members.size > 1 and sd > 0:
            z[members] = (within[members] - within[members].mean()) / sd
    p = np.zeros(s.size)
    nz = degree > 0
    p[nz] = 1.0 - np.sum((per_comm[nz] / degree[nz, None]) ** 2, axis=1)
    roles = tuple(classify_role(zi, pi) for zi, pi in zip(z, p))
    return RoleCoordinates(z, p, roles)
