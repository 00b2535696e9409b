"""Normalized alpha-centrality and the path-count metrics related to it.

The attenuated path-count matrix is

    C(alpha, beta) = beta*A + beta*alpha*A^2 + beta*alpha^2*A^3 + ...

which only converges for ``alpha < 1/lambda1``. Dividing by the grand sum gives
the normalized matrix ``NC``, which has a finite limit for every alpha in
``[0, 1]``: past ``1/lambda1`` the dominant eigen-direction takes over and
``NC`` stops depending on alpha.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional

import numpy as np

from .errors import DegenerateGraphError, NumericalError
from .graph import Graph, degree_summary

__all__ = [
    "CentralityField",
    "SpectralInfo",
    "ProximityConfig",
    "dominant_eigenpair",
    "second_eigenvalue_magnitude",
    "alpha_centrality_iterative",
    "alpha_centrality_scores",
    "alpha_centrality_closed_form",
    "attenuated_path_matrix",
    "eigenvector_centrality",
    "katz_scores",
    "random_walk_proximity",
    "degree_centrality",
    "centrality_radius",
    "path_proximity",
    "plateau_alpha",
    "default_alpha_step",
]

Axis = Literal["row", "column"]

DEFAULT_TOL = 1e-9
DEFAULT_MAX_ITER = 10_000


@dataclass(frozen=True)
class CentralityField:
    """Normalized path-count matrix stamped with ``(alpha, beta)``.

    ``matrix`` is ``None`` when only the score vector was computed.
    ``log_total`` is the log of the grand sum of the unnormalized matrix at the
    last iterate; it grows without bound when ``alpha > 1/lambda1``.
    """

    alpha: float
    beta: float
    matrix: Optional[np.ndarray]
    node_scores: np.ndarray
    iterations: int
    converged: bool
    residual: float
    log_total: float
    axis: str = "row"

    @property
    def total(self) -> float:
        """Grand sum of the unnormalized matrix (``inf`` on overflow)."""
        try:
            return math.exp(self.log_total)
        except OverflowError:
            return math.inf


@dataclass(frozen=True)
class SpectralInfo:
    lambda1: float
    vector: np.ndarray
    iterations: int
    tolerance_met: bool
    degenerate: bool = False

    @property
    def inverse(self) -> float:
        """``1/lambda1``, the convergence radius of the unnormalized series."""
        return math.inf if self.lambda1 == 0 else 1.0 / self.lambda1


@dataclass(frozen=True)
class ProximityConfig:
    """Choice of path weights W_k in the generic proximity E(q) = sum_k W_k q^k.

    ``alpha_centrality`` needs ``alpha`` and ``beta``, ``katz`` needs ``alpha``,
    ``random_walk`` needs the continuation probability ``restart`` (c), and
    ``degree`` takes no parameters.
    """

    scheme: Literal["alpha_centrality", "katz", "random_walk", "degree"]
    alpha: Optional[float] = None
    beta: Optional[float] = None
    restart: Optional[float] = None

    _REQUIRED = {
        "alpha_centrality": {"alpha", "beta"},
        "katz": {"alpha"},
        "random_walk": {"restart"},
        "degree": set(),
    }

    def __post_init__(self):
        if self.scheme not in self._REQUIRED:
            raise ValueError(f"unknown proximity scheme {self.scheme!r}")
        need = self._REQUIRED[self.scheme]
        for name in ("alpha", "beta", "restart"):
            present = getattr(self, name) is not None
            if present != (name in need):
                verb = "requires" if name in need else "does not take"
                raise ValueError(f"scheme {self.scheme!r} {verb} {name!r}")


def _adjacency(g: Graph) -> np.ndarray:
    return np.asarray(g.adjacency, dtype=float)


def _orient(v: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(v)))
    return -v if v[k] < 0 else v


def dominant_eigenpair(
    g: Graph, tol: float = 1e-10, max_iter: int = DEFAULT_MAX_ITER, left: bool = False
) -> SpectralInfo:
    """Largest eigenvalue of ``A`` and its eigenvector by power iteration.

    Iterates on ``A + s*I`` (``s`` = mean edge weight) from the uniform vector;
    the shift keeps the iteration from oscillating on bipartite graphs without
    moving the eigenvectors. With ``left=True`` the left eigenvector is
    returned instead (column-oriented scores on directed graphs).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = _adjacency(g)
    if left:
        a = a.T
    n = a.shape[0]
    if n == 0:
        raise DegenerateGraphError("empty graph")
    nz = a[a > 0]
    if nz.size == 0:
        return SpectralInfo(0.0, np.zeros(n), 0, False, degenerate=True)
    shift = float(nz.mean())
    x = np.full(n, 1.0 / math.sqrt(n))
    lam = 0.0
    met = False
    it = 0
    for it in range(1, max_iter + 1):
        ax = a @ x
        lam = float(x @ ax)
        if np.max(np.abs(ax - lam * x)) <= tol * max(lam, 0.0) and lam > 0:
            met = True
            break
        y = ax + shift * x
        norm = np.linalg.norm(y)
        if norm == 0:
            break
        x = y / norm
    if lam <= 0 or not np.any(a @ x):
        return SpectralInfo(0.0, np.zeros(n), it, False, degenerate=True)
    return SpectralInfo(lam, _orient(x), it, met)


def second_eigenvalue_magnitude(g: Graph, tol: float = 1e-10, max_iter: int = 100_000) -> float:
    """``|lambda2|`` of a symmetric adjacency by deflated power iteration.

    The deflated matrix ``D = A - lambda1 v v^T`` is squared so that a pair of
    eigenvalues ``+-mu`` does not make the iteration oscillate.
    """
    a = _adjacency(g)
    if not np.allclose(a, a.T):
        raise ValueError("deflation requires a symmetric adjacency matrix")
    info = dominant_eigenpair(g, tol=tol)
    if info.degenerate:
        return 0.0
    v = info.vector
    d = a - info.lambda1 * np.outer(v, v)
    d2 = d @ d
    n = a.shape[0]
    x = np.linspace(1.0, 2.0, n)
    x -= (x @ v) * v
    if not np.any(x):
        return 0.0
    x /= np.linalg.norm(x)
    mu = 0.0
    for _ in range(max_iter):
        y = d2 @ x
        mu_new = float(x @ y)
        norm = np.linalg.norm(y)
        if norm == 0:
            return 0.0
        x = y / norm
        if abs(mu_new - mu) <= tol * max(mu_new, 1e-300):
            mu = mu_new
            break
        mu = mu_new
    return math.sqrt(max(mu, 0.0))


def _check_alpha(alpha: float):
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [0, 1], got {alpha}")


def alpha_centrality_iterative(
    g: Graph,
    alpha: float,
    beta: float = 1.0,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    axis: Axis = "row",
) -> CentralityField:
    """Normalized alpha-centrality from ``C <- beta*A + alpha*C*A``.

    The iterate is kept at unit grand sum with its scale tracked separately in
    log space, so the same loop handles alpha beyond ``1/lambda1`` where the
    raw series diverges. Stops when the largest elementwise change of the
    normalized matrix drops below ``tol``.
    """
    _check_alpha(alpha)
    if beta <= 0:
        raise ValueError("beta must be positive")
    a = _adjacency(g)
    total = a.sum()
    if total <= 0:
        raise DegenerateGraphError("graph has no edges; normalization is undefined")
    m = a / total
    log_s = math.log(beta * total)
    if alpha == 0:
        return CentralityField(alpha, beta, m, _scores(m, axis), 1, True, 0.0, log_s, axis)

    residual = math.inf
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        # C_{n+1} / s_n = (beta / s_n) A + alpha * M_n A
        r = alpha * (m @ a)
        r += math.exp(math.log(beta) - log_s) * a
        t = r.sum()
        r /= t
        log_s += math.log(t)
        residual = float(np.max(np.abs(r - m)))
        m = r
        if residual < tol:
            converged = True
            break
    return CentralityField(alpha, beta, m, _scores(m, axis), it, converged, residual, log_s, axis)


def _scores(m: np.ndarray, axis: Axis) -> np.ndarray:
    if axis == "row":
        return m.sum(axis=1)
    if axis == "column":
        return m.sum(axis=0)
    raise ValueError(f"axis must be 'row' or 'column', got {axis!r}")


def alpha_centrality_scores(
    g: Graph,
    alpha: float,
    beta: float = 1.0,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    axis: Axis = "row",
) -> CentralityField:
    """Score-only variant of :func:`alpha_centrality_iterative`.

    Uses ``x <- beta*A e + alpha*A x`` (row scores) or its transpose, one
    matrix-vector product per step; ``matrix`` is left as ``None``.
    """
    _check_alpha(alpha)
    if beta <= 0:
        raise ValueError("beta must be positive")
    a = _adjacency(g)
    if axis == "column":
        a = a.T
    elif axis != "row":
        raise ValueError(f"axis must be 'row' or 'column', got {axis!r}")
    base = a.sum(axis=1)
    total = base.sum()
    if total <= 0:
        raise DegenerateGraphError("graph has no edges; normalization is undefined")
    x = base / total
    log_s = math.log(beta * total)
    if alpha == 0:
        return CentralityField(alpha, beta, None, x, 1, True, 0.0, log_s, axis)
    residual = math.inf
    converged = False
    it = 0
    for it in range(1, max_iter + 1):
        y = alpha * (a @ x) + math.exp(math.log(beta) - log_s) * base
        t = y.sum()
        y /= t
        log_s += math.log(t)
        residual = float(np.max(np.abs(y - x)))
        x = y
        if residual < tol:
            converged = True
            break
    return CentralityField(alpha, beta, None, x, it, converged, residual, log_s, axis)


def attenuated_path_matrix(g: Graph, alpha: float, beta: float = 1.0) -> np.ndarray:
    """Unnormalized ``C = beta * A (I - alpha A)^-1`` by a dense linear solve.

    Valid only for ``alpha < 1/lambda1``; raises :class:`NumericalError` when
    ``I - alpha A`` is numerically singular or the solution is not
    nonnegative (alpha past the convergence radius).
    """
    _check_alpha(alpha)
    a = _adjacency(g)
    n = a.shape[0]
    lhs = np.eye(n) - alpha * a
    if np.linalg.cond(lhs) > 1e12:
        raise NumericalError(f"I - alpha*A is singular at alpha={alpha}; alpha is too close to 1/lambda1")
    # A commutes with (I - alpha A)^-1
    c = np.linalg.solve(lhs, beta * a)
    scale = np.max(np.abs(c)) if c.size else 0.0
    if np.any(c < -1e-10 * scale):
        raise NumericalError(f"alpha={alpha} is beyond 1/lambda1; the series does not converge")
    return np.clip(c, 0.0, None)


def alpha_centrality_closed_form(g: Graph, alpha: float, beta: float = 1.0, axis: Axis = "row") -> CentralityField:
    c = attenuated_path_matrix(g, alpha, beta)
    total = c.sum()
    if total <= 0:
        raise DegenerateGraphError("graph has no edges; normalization is undefined")
    m = c / total
    return CentralityField(alpha, beta, m, _scores(m, axis), 0, True, 0.0, math.log(total), axis)


def eigenvector_centrality(g: Graph, tol: float = 1e-10, max_iter: int = DEFAULT_MAX_ITER, left: bool = False) -> np.ndarray:
    """Dominant eigenvector of ``A`` with unit L2 norm and nonnegative sign."""
    info = dominant_eigenpair(g, tol=tol, max_iter=max_iter, left=left)
    if info.degenerate:
        raise DegenerateGraphError("adjacency has no positive dominant eigenvalue")
    v = info.vector.copy()
    v[np.abs(v) < tol] = 0.0
    return np.clip(v, 0.0, None)


def katz_scores(g: Graph, alpha: float, normalized: bool = False) -> np.ndarray:
    """Katz status: row sums of alpha-centrality with ``beta = alpha``.

    Solves ``(I - alpha A) x = alpha A e`` directly; ``normalized`` rescales
    the result to unit sum.
    """
    _check_alpha(alpha)
    a = _adjacency(g)
    n = a.shape[0]
    lhs = np.eye(n) - alpha * a
    if np.linalg.cond(lhs) > 1e12:
        raise NumericalError(f"I - alpha*A is singular at alpha={alpha}")
    x = np.linalg.solve(lhs, alpha * a.sum(axis=1))
    if np.any(x < -1e-10 * max(np.max(np.abs(x)), 1e-300)):
        raise NumericalError(f"alpha={alpha} is beyond 1/lambda1; the Katz series diverges")
    if normalized:
        s = x.sum()
        if s <= 0:
            raise DegenerateGraphError("graph has no edges")
        x = x / s
    return x


def random_walk_proximity(g: Graph, c: float, tol: float = 1e-12, max_iter: int = DEFAULT_MAX_ITER) -> np.ndarray:
    """Random-walk proximity ``sum_{k>=1} c^k (D^-1 A)^k``.

    ``c`` is the probability of continuing the walk (restart with ``1 - c``).
    Every node needs positive out-degree; no teleport patching is applied.
    """
    if not 0.0 < c < 1.0:
        raise ValueError("c must lie in (0, 1)")
    a = _adjacency(g)
    deg = a.sum(axis=1)
    dangling = np.flatnonzero(deg <= 0)
    if dangling.size:
        raise DegenerateGraphError(f"node {g.node_labels[dangling[0]]!r} has zero out-degree")
    p = a / deg[:, None]
    step = c * p
    e = step.copy()
    for _ in range(max_iter):
        nxt = step + step @ e
        delta = np.max(np.abs(nxt - e))
        e = nxt
        if delta < tol:
            break
    else:
        raise NumericalError("random-walk proximity did not converge")
    return e


def degree_centrality(g: Graph) -> np.ndarray:
    """Out-degree (row sums of ``A``)."""
    return _adjacency(g).sum(axis=1)


def centrality_radius(alpha: float) -> float:
    """Expected path length ``1/(1 - alpha)``."""
    if not 0.0 <= alpha < 1.0:
        raise ValueError("radius is defined for 0 <= alpha < 1")
    return 1.0 / (1.0 - alpha)


def path_proximity(g: Graph, config: ProximityConfig) -> np.ndarray:
    """Evaluate E(q) for one of the supported weight schemes (unnormalized)."""
    if config.scheme == "alpha_centrality":
        return attenuated_path_matrix(g, config.alpha, config.beta)
    if config.scheme == "katz":
        return attenuated_path_matrix(g, config.alpha, config.alpha)
    if config.scheme == "random_walk":
        return random_walk_proximity(g, config.restart)
    return _adjacency(g).copy()


def plateau_alpha(g: Graph, margin: float = 1.05) -> float:
    """An alpha safely on the converged plateau: ``min(1, margin/lambda1)``."""
    info = dominant_eigenpair(g)
    if info.degenerate:
        raise DegenerateGraphError("adjacency has no positive dominant eigenvalue")
    return min(1.0, margin / info.lambda1)


def default_alpha_step(g: Graph) -> float:
    """Sweep step ``1/min(d_out_max, d_in_max)``, from the Gershgorin bound."""
    d = degree_summary(g)
    bound = min(d.max_in, d.max_out)
    if bound <= 0:
        raise DegenerateGraphError("graph has no edges")
    return 1.0 / bound
