"""Cheap bounds on the independence number of the alive graph."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable

from .graph import Graph

__all__ = ["BoundPair", "bounds", "clique_cover_ub", "greedy_lb"]


@dataclass(frozen=True)
class BoundPair:
    upper: int
    lower: int


def clique_cover_ub(g: Graph, within: Iterable[int] | None = None) -> int:
    """Size of a greedy clique partition; every clique holds at most one MIS vertex.

    Vertices are placed by decreasing degree (ties by id) into the first
    clique they are fully adjacent to.
    """
    adj = g.adj
    verts = g.alive_set() if within is None else within
    order = sorted(verts, key=lambda v: (-len(adj[v]), v))
    cliques: list[set[int]] = []
    for v in order:
        Nv = adj[v]
        for c in cliques:
            if c <= Nv:
                c.add(v)
                break
        else:
            cliques.append({v})
    return len(cliques)


def greedy_lb(g: Graph) -> set[int]:
    """Independent set from repeatedly taking a minimum-degree vertex."""
    adj = {v: set(g.adj[v]) for v in g.alive_set()}
    heap = [(len(nb), v) for v, nb in adj.items()]
    heapq.heapify(heap)
    chosen = set()
    while heap:
        d, v = heapq.heappop(heap)
        if v not in adj or d != len(adj[v]):
            continue
        chosen.add(v)
        removed = adj.pop(v)
        for u in removed:
            for x in adj.pop(u):
                if x in adj:
                    nb = adj[x]
                    nb.discard(u)
                    heapq.heappush(heap, (len(nb), x))
    return chosen


def bounds(g: Graph) -> BoundPair:
    return BoundPair(clique_cover_ub(g), len(greedy_lb(g)))
