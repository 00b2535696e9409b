"""Community detection by maximizing path-based modularity Q(alpha).

Connectivity between i and j is the attenuated path count C_ij; the null model
keeps the total path mass W and every node's outgoing and incoming path mass,
so the expected connectivity is ``W_out[i] * W_in[j] / W``. The network is
split by recursive leading-eigenvector bisection of the modularity matrix.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .centrality import DEFAULT_MAX_ITER, DEFAULT_TOL, _orient, alpha_centrality_iterative, dominant_eigenpair
from .errors import DegenerateGraphError, NumericalError
from .graph import Graph

logger = logging.getLogger(__name__)

__all__ = [
    "NullModel",
    "ModularityMatrix",
    "Bisection",
    "Partition",
    "connectivity_matrix",
    "null_model",
    "modularity_matrix",
    "modularity_from_matrix",
    "modularity_value",
    "leading_eigenvector_bisect",
    "detect_communities",
    "relabel",
]

# eigenvector components this small count as sign ties
SIGN_TIE = 1e-12
# relative (to the grand sum) threshold a split must beat
DELTA_Q_TOL = 1e-10


@dataclass(frozen=True)
class NullModel:
    total: float
    out_strength: np.ndarray
    in_strength: np.ndarray
    expected: np.ndarray


@dataclass(frozen=True)
class ModularityMatrix:
    alpha: Optional[float]
    matrix: np.ndarray
    symmetrized: bool
    total: float


@dataclass(frozen=True)
class Bisection:
    """One accepted split: ``members`` divided into ``left`` and ``right``."""

    members: tuple[int, ...]
    left: tuple[int, ...]
    right: tuple[int, ...]
    delta_q: float
    eigenvalue: float
    depth: int


@dataclass(frozen=True)
class Partition:
    assignment: np.ndarray
    q_value: float
    alpha: float
    history: tuple[Bisection, ...] = ()
    labels: tuple[str, ...] = field(default=())

    @property
    def count(self) -> int:
        return int(self.assignment.max()) + 1 if self.assignment.size else 0

    def communities(self) -> list[np.ndarray]:
        return [np.flatnonzero(self.assignment == k) for k in range(self.count)]


def relabel(assignment: Sequence[int]) -> np.ndarray:
    """Renumber communities 0..k-1 in order of their smallest member."""
    a = np.asarray(assignment)
    mapping: dict = {}
    out = np.empty(a.shape[0], dtype=int)
    for i, s in enumerate(a.tolist()):
        out[i] = mapping.setdefault(s, len(mapping))
    return out


def connectivity_matrix(
    g: Graph,
    alpha: float,
    beta: float = 1.0,
    normalized: bool = False,
    rounding: bool = False,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> np.ndarray:
    """Attenuated path counts used as connectivity in Q(alpha).

    By default this is the real-valued unnormalized ``C`` (finite only for
    ``alpha < 1/lambda1``). ``normalized=True`` returns ``NC`` instead, which
    exists for every alpha. ``rounding=True`` rounds ``C`` to the nearest
    integers; it cannot be combined with ``normalized``.
    """
    if rounding and normalized:
        raise ValueError("rounding applies to unnormalized path counts only")
    if alpha == 0 and not normalized:
        c = beta * np.asarray(g.adjacency, dtype=float)
        return np.rint(c) if rounding else c
    if not normalized:
        info = dominant_eigenpair(g)
        if alpha * info.lambda1 >= 1.0:
            raise NumericalError(
                f"unnormalized path counts diverge for alpha={alpha} >= 1/lambda1={info.inverse:.6g}"
            )
    field_ = alpha_centrality_iterative(g, alpha, beta, tol=tol, max_iter=max_iter)
    if not field_.converged:
        logger.warning("alpha-centrality did not converge at alpha=%g (residual %.3g)", alpha, field_.residual)
    if normalized:
        return field_.matrix
    c = field_.matrix * field_.total
    return np.rint(c) if rounding else c


def null_model(connectivity: np.ndarray) -> NullModel:
    c = np.asarray(connectivity, dtype=float)
    if np.any(c < 0):
        raise ValueError("connectivity must be nonnegative")
    w = float(c.sum())
    if w <= 0:
        raise DegenerateGraphError("connectivity has zero grand sum")
    w_out = c.sum(axis=1)
    w_in = c.sum(axis=0)
    return NullModel(w, w_out, w_in, np.outer(w_out, w_in) / w)


def modularity_matrix(connectivity: np.ndarray, alpha: Optional[float] = None, symmetrize: bool = True) -> ModularityMatrix:
    """``B = C - expected``; directed B is replaced by ``(B + B.T)/2``.

    The symmetrization leaves Q unchanged because ``delta(s_i, s_j)`` is
    symmetric, and the spectral step needs a symmetric operator.
    """
    nm = null_model(connectivity)
    b = np.asarray(connectivity, dtype=float) - nm.expected
    sym = False
    if symmetrize and not np.array_equal(b, b.T):
        b = 0.5 * (b + b.T)
        sym = True
    return ModularityMatrix(alpha, b, sym, nm.total)


def modularity_from_matrix(b: np.ndarray, assignment: Sequence[int]) -> float:
    """``sum_ij B_ij delta(s_i, s_j)``."""
    s = relabel(assignment)
    k = int(s.max()) + 1 if s.size else 0
    onehot = np.zeros((s.size, k))
    onehot[np.arange(s.size), s] = 1.0
    return float(np.trace(onehot.T @ np.asarray(b) @ onehot))


def modularity_value(
    g: Graph,
    assignment: Sequence[int],
    alpha: float,
    beta: float = 1.0,
    normalized: bool = True,
    rounding: bool = False,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> float:
    """Q(alpha) of an assignment, on the normalized scale by default."""
    if len(assignment) != g.node_count:
        raise ValueError("assignment length does not match the node count")
    c = connectivity_matrix(g, alpha, beta, normalized=normalized, rounding=rounding, tol=tol, max_iter=max_iter)
    return modularity_from_matrix(modularity_matrix(c, alpha, symmetrize=False).matrix, assignment)


def _power_leading(b: np.ndarray, tol: float, max_iter: int):
    """Algebraically largest eigenpair of symmetric ``b`` via a shifted power method."""
    n = b.shape[0]
    sigma = float(np.max(np.abs(b).sum(axis=1)))
    if sigma == 0:
        return 0.0, np.zeros(n), True
    # constant vectors are in the null space of B, so start off-constant
    x = np.linspace(1.0, 2.0, n)
    x -= x.mean()
    x /= np.linalg.norm(x)
    shifted = b + sigma * np.eye(n)
    for _ in range(max_iter):
        y = shifted @ x
        norm = np.linalg.norm(y)
        if norm == 0:
            break
        x = y / norm
        bx = b @ x
        lam = float(x @ bx)
        if np.max(np.abs(bx - lam * x)) <= tol * sigma:
            return lam, x, True
    return float(x @ b @ x), x, False


def leading_eigenvector_bisect(
    b_sub: np.ndarray,
    tol: float = 1e-10,
    max_iter: int = 20_000,
    dense_limit: int = 512,
):
    """Split a group by the sign pattern of the leading eigenvector of ``b_sub``.

    ``b_sub`` is the (diagonal-corrected) modularity matrix of the group.
    Returns ``(s, eigenvalue, delta_q)`` with ``s`` in {+1, -1}^n, or
    ``(None, eigenvalue, 0.0)`` when no split raises Q. ``delta_q`` is
    ``s^T b_sub s / 2``.
    """
    b = np.asarray(b_sub, dtype=float)
    if not np.allclose(b, b.T, atol=1e-12 * max(1.0, np.max(np.abs(b), initial=0.0))):
        b = 0.5 * (b + b.T)
    n = b.shape[0]
    if n < 2:
        return None, 0.0, 0.0
    lam, v, ok = _power_leading(b, tol, max_iter)
    if not ok:
        if n > dense_limit:
            raise NumericalError(f"power iteration did not converge on a {n}-node group")
        w, vecs = np.linalg.eigh(b)
        lam, v = float(w[-1]), vecs[:, -1]
    scale = float(np.max(np.abs(b)))
    if lam <= tol * max(scale, 1e-300):
        return None, lam, 0.0
    v = _orient(v)
    s = np.where(v >= 0, 1.0, -1.0)
    ties = np.flatnonzero(np.abs(v) < SIGN_TIE)
    for i in ties:
        best = None
        for sign in (1.0, -1.0):
            s[i] = sign
            q = s @ b @ s
            if best is None or q > best[0]:
                best = (q, sign)
        s[i] = best[1]
    if abs(s.sum()) == n:
        return None, lam, 0.0
    dq = 0.5 * float(s @ b @ s)
    return s, lam, dq


def detect_communities(
    g: Graph,
    alpha: float,
    beta: float = 1.0,
    normalized: bool = False,
    rounding: bool = False,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> Partition:
    """Recursive leading-eigenvector bisection maximizing Q(alpha).

    Each group ``g`` is split using ``B_g = B[g, g] - diag(rowsum_g(B))`` so the
    change in Q of the whole network is exactly ``s^T B_g s / 2``; a split is
    kept only if that change is strictly positive. When the unnormalized
    series diverges (``alpha >= 1/lambda1``) the normalized matrix is used,
    which yields the same division. The reported Q is on the normalized scale.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")
    if not normalized and not rounding and alpha > 0:
        lam = dominant_eigenpair(g).lambda1
        if alpha * lam >= 1.0:
            logger.info("alpha=%g is past 1/lambda1; using normalized connectivity", alpha)
            normalized = True
    c = connectivity_matrix(g, alpha, beta, normalized=normalized, rounding=rounding, tol=tol, max_iter=max_iter)
    mm = modularity_matrix(c, alpha)
    b, w = mm.matrix, mm.total

    n = g.node_count
    assignment = np.zeros(n, dtype=int)
    history: list[Bisection] = []
    queue: list[tuple[np.ndarray, int]] = [(np.arange(n), 0)]
    final: list[np.ndarray] = []
    while queue:
        members, depth = queue.pop(0)
        sub = b[np.ix_(members, members)]
        sub = sub - np.diag(sub.sum(axis=1))
        s, lam, dq = leading_eigenvector_bisect(sub)
        if s is None or dq <= DELTA_Q_TOL * w:
            final.append(members)
            continue
        left, right = members[s > 0], members[s < 0]
        if left[0] > right[0]:
            left, right = right, left
        history.append(Bisection(tuple(members.tolist()), tuple(left.tolist()), tuple(right.tolist()), dq / w, lam / w, depth))
        queue.append((left, depth + 1))
        queue.append((right, depth + 1))

    for k, members in enumerate(sorted(final, key=lambda m: int(m.min()))):
        assignment[members] = k
    history.sort(key=lambda h: (h.depth, h.members[0]))
    q = modularity_from_matrix(b, assignment) / w
    return Partition(assignment, q, alpha, tuple(history), g.node_labels)
