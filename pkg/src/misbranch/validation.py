"""Turn the graph representations users already have into a :class:`Graph`."""

from __future__ import annotations

import numbers

import numpy as np
import scipy.sparse as sp

from .graph import Graph, GraphInputError

__all__ = ["check_graph", "check_solution"]


def check_graph(X, n_vertices: int | None = None) -> Graph:
    """Validate ``X`` and return a :class:`Graph` (a fresh one unless ``X`` is one).

    Accepted inputs:

    * a :class:`Graph` (returned as is),
    * a square adjacency matrix, dense or ``scipy.sparse``; any nonzero
      entry ``(i, j)`` is an edge, the diagonal is ignored, and asymmetric
      matrices are symmetrized,
    * a ``networkx`` graph whose nodes are ``0 .. n-1``,
    * an ``(m, 2)`` integer edge array or list of pairs; ``n_vertices``
      defaults to one past the largest id.  A square array is read as an
      adjacency matrix unless ``n_vertices`` is given.
    """
    if isinstance(X, Graph):
        return X
    if hasattr(X, "nodes") and hasattr(X, "edges") and not sp.issparse(X):
        nodes = sorted(X.nodes())
        if nodes != list(range(len(nodes))):
            raise GraphInputError("networkx graph nodes must be the integers 0 .. n-1")
        return Graph(len(nodes), X.edges())
    if sp.issparse(X):
        if X.shape[0] != X.shape[1]:
            raise GraphInputError(f"adjacency matrix must be square, got shape {X.shape}")
        coo = sp.coo_matrix(X)
        mask = coo.data != 0
        return Graph(X.shape[0], zip(coo.row[mask].tolist(), coo.col[mask].tolist()))

    arr = np.asarray(X)
    if arr.ndim == 2 and arr.shape[0] == arr.shape[1] and n_vertices is None:
        rows, cols = np.nonzero(arr)
        return Graph(arr.shape[0], zip(rows.tolist(), cols.tolist()))
    if arr.size == 0:
        return Graph(n_vertices or 0)
    if arr.ndim != 2 or arr.shape[1] != 2:
        raise GraphInputError(
            f"expected an adjacency matrix or an (m, 2) edge array, got shape {arr.shape}"
        )
    if not np.issubdtype(arr.dtype, np.integer):
        if not np.all(np.equal(np.mod(arr, 1), 0)):
            raise GraphInputError("edge endpoints must be integers")
        arr = arr.astype(np.int64)
    if arr.min() < 0:
        raise GraphInputError("edge endpoints must be non-negative")
    n = int(arr.max()) + 1 if n_vertices is None else n_vertices
    if not isinstance(n, numbers.Integral):
        raise GraphInputError(f"n_vertices must be an integer, got {n!r}")
    return Graph(int(n), arr.tolist())


def check_solution(g: Graph, vertices) -> tuple[int, int] | None:
    """First edge with both endpoints in ``vertices``, or ``None`` if independent."""
    chosen = set(int(v) for v in vertices)
    for v in sorted(chosen):
        if not 0 <= v < g.n_original or not g.alive[v]:
            raise GraphInputError(f"vertex {v} is not in the graph")
    for v in sorted(chosen):
        for u in sorted(g.adj[v]):
            if u > v and u in chosen:
                return (v, u)
    return None
