"""Mutable undirected simple graph with reversible vertex and edge removal.

Every structural mutation is pushed onto an undo log.  A checkpoint is the
length of that log; :meth:`Graph.restore` pops entries until the log is back
at the checkpoint, which brings adjacency, liveness and degrees back exactly.
Restores must follow stack discipline, mirroring a depth-first search.

Adjacency is a list of ``set`` objects holding only *alive* neighbours, so
``len(adj[v])`` is the current degree.  A hidden vertex keeps its own set
frozen at the moment it was hidden; that is all the undo step needs.
"""

from __future__ import annotations

from collections import deque
from typing import Iterable

__all__ = [
    "ContractError",
    "Graph",
    "GraphInputError",
    "build_graph",
]

_HIDE = 0
_ADD_EDGE = 1
_DEL_EDGE = 2


class GraphInputError(ValueError):
    """Raised for malformed input such as out-of-range vertex ids."""


class ContractError(RuntimeError):
    """Raised when a caller breaks an operation's precondition."""


class Graph:
    """Undirected simple graph on the vertex ids ``0 .. n_original - 1``.

    Parameters
    ----------
    n : int
        Number of vertices.
    edges : iterable of (int, int), optional
        Edge list. Self-loops are dropped and duplicate pairs collapse.
    """

    __slots__ = ("n_original", "adj", "alive", "_alive_set", "_log")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphInputError(f"vertex count must be non-negative, got {n}")
        self.n_original = n
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.alive = [True] * n
        self._alive_set = set(range(n))
        self._log: list[tuple] = []
        for u, v in edges:
            u = int(u)
            v = int(v)
            if not (0 <= u < n and 0 <= v < n):
                raise GraphInputError(f"edge ({u}, {v}) has a vertex outside [0, {n})")
            if u != v:
                self.adj[u].add(v)
                self.adj[v].add(u)

    def __repr__(self) -> str:
        return f"Graph(n_alive={self.num_vertices()}, m={self.num_edges()})"

    # queries

    def vertices(self) -> list[int]:
        """Alive vertices in increasing id order."""
        return sorted(self._alive_set)

    def alive_set(self) -> set[int]:
        return self._alive_set

    def num_vertices(self) -> int:
        return len(self._alive_set)

    def num_edges(self) -> int:
        return sum(len(self.adj[v]) for v in self._alive_set) // 2

    def is_alive(self, v: int) -> bool:
        return self.alive[v]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> set[int]:
        # Callers must not mutate the returned set.
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def max_degree(self) -> int:
        adj = self.adj
        return max((len(adj[v]) for v in self._alive_set), default=0)

    def edges(self) -> list[tuple[int, int]]:
        adj = self.adj
        return sorted((u, v) for u in self._alive_set for v in adj[u] if u < v)

    # mutation

    def hide_vertex(self, v: int) -> None:
        if not self.alive[v]:
            raise ContractError(f"vertex {v} is not alive")
        for u in self.adj[v]:
            self.adj[u].discard(v)
        self.alive[v] = False
        self._alive_set.discard(v)
        self._log.append((_HIDE, v))

    def add_edge(self, u: int, v: int) -> bool:
        """Add edge ``{u, v}``; return False (and log nothing) if it exists."""
        if u == v:
            raise ContractError("self-loops are not allowed")
        if not (self.alive[u] and self.alive[v]):
            raise ContractError(f"edge ({u}, {v}) touches a hidden vertex")
        if v in self.adj[u]:
            return False
        self.adj[u].add(v)
        self.adj[v].add(u)
        self._log.append((_ADD_EDGE, u, v))
        return True

    def remove_edge(self, u: int, v: int) -> None:
        if v not in self.adj[u]:
            raise ContractError(f"edge ({u}, {v}) is not present")
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self._log.append((_DEL_EDGE, u, v))

    def checkpoint(self) -> int:
        return len(self._log)

    def restore(self, checkpoint: int) -> None:
        log = self._log
        if checkpoint > len(log) or checkpoint < 0:
            raise ContractError(
                f"stale checkpoint {checkpoint} (log length {len(log)})"
            )
        adj = self.adj
        while len(log) > checkpoint:
            entry = log.pop()
            kind = entry[0]
            if kind == _HIDE:
                v = entry[1]
                for u in adj[v]:
                    adj[u].add(v)
                self.alive[v] = True
                self._alive_set.add(v)
            elif kind == _ADD_EDGE:
                _, u, v = entry
                adj[u].discard(v)
                adj[v].discard(u)
            else:
                _, u, v = entry
                adj[u].add(v)
                adj[v].add(u)

    # structure

    def connected_components(self, within: Iterable[int] | None = None) -> list[set[int]]:
        """Components of the alive graph, ordered by their smallest vertex."""
        pool = self._alive_set if within is None else set(within)
        adj = self.adj
        seen: set[int] = set()
        comps = []
        for root in sorted(pool):
            if root in seen:
                continue
            comp = {root}
            seen.add(root)
            queue = deque([root])
            while queue:
                x = queue.popleft()
                for y in adj[x]:
                    if y not in seen and y in pool:
                        seen.add(y)
                        comp.add(y)
                        queue.append(y)
            comps.append(comp)
        return comps

    def induced_subgraph(self, vs: Iterable[int]) -> tuple[Graph, dict[int, int]]:
        """Compact copy of ``G[vs]``; new ids follow increasing old ids."""
        order = sorted(set(vs))
        for v in order:
            if not self.alive[v]:
                raise ContractError(f"vertex {v} is not alive")
        mapping = {v: i for i, v in enumerate(order)}
        sub = Graph(len(order))
        for v in order:
            nv = mapping[v]
            row = sub.adj[nv]
            for u in self.adj[v]:
                nu = mapping.get(u)
                if nu is not None:
                    row.add(nu)
        return sub, mapping

    def copy(self) -> Graph:
        """Independent copy with the same ids and an empty undo log."""
        g = Graph.__new__(Graph)
        g.n_original = self.n_original
        g.adj = [set(s) if a else set() for s, a in zip(self.adj, self.alive)]
        g.alive = list(self.alive)
        g._alive_set = set(self._alive_set)
        g._log = []
        return g


def build_graph(edges: Iterable[tuple[int, int]], n: int) -> Graph:
    """Build a simple graph, dropping self-loops and repeated pairs."""
    return Graph(n, edges)
