"""Vertex separators for decomposition branching.

* articulation points by iterative DFS low-points,
* unit-capacity minimum s-t edge cuts by shortest augmenting paths,
* edge cut to vertex separator through a minimum vertex cover of the
  bipartite cut graph (Hopcroft-Karp matching plus Koenig's construction),
* a three-level nested dissection built from flow-based bisections.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .graph import ContractError, Graph

__all__ = [
    "Cut",
    "NDOrder",
    "Separator",
    "articulation_points",
    "cut_to_separator",
    "find_branching_separator",
    "hopcroft_karp",
    "koenig_cover",
    "min_st_cut",
    "nested_dissection_order",
]

EDGE_CUT_MAX_SIZE = 25
EDGE_CUT_MIN_BALANCE = 0.10
ND_LEVELS = 3
ND_MAX_SEPARATOR = 50
ND_MIN_BALANCE = 0.40


@dataclass(frozen=True)
class Separator:
    vertices: frozenset[int]
    side_sizes: tuple[int, int]
    source: str

    def __len__(self) -> int:
        return len(self.vertices)

    @property
    def balance(self) -> float:
        total = sum(self.side_sizes)
        return min(self.side_sizes) / total if total else 0.0


class Cut(NamedTuple):
    """Cut edges oriented ``(source side, sink side)`` plus the source side itself."""

    edges: frozenset[tuple[int, int]]
    source_side: frozenset[int]


@dataclass
class NDOrder:
    levels: list[Separator] = field(default_factory=list)

    def branch_sequence(self) -> list[int]:
        # Reverse of the dissection ordering restricted to separator vertices:
        # the top-level separator comes first.
        seq = []
        for sep in self.levels:
            seq.extend(sorted(sep.vertices))
        return seq


def articulation_points(g: Graph, within: Iterable[int] | None = None) -> set[int]:
    adj = g.adj
    pool = g.alive_set() if within is None else set(within)
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    points: set[int] = set()
    clock = 0
    for root in sorted(pool):
        if root in disc:
            continue
        disc[root] = low[root] = clock
        clock += 1
        root_children = 0
        stack = [(root, -1, iter(sorted(x for x in adj[root] if x in pool)))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for u in it:
                if u == parent:
                    continue
                if u in disc:
                    if disc[u] < low[v]:
                        low[v] = disc[u]
                    continue
                disc[u] = low[u] = clock
                clock += 1
                if v == root:
                    root_children += 1
                stack.append((u, v, iter(sorted(x for x in adj[u] if x in pool))))
                advanced = True
                break
            if advanced:
                continue
            stack.pop()
            if parent >= 0:
                if low[v] < low[parent]:
                    low[parent] = low[v]
                if parent != root and low[v] >= disc[parent]:
                    points.add(parent)
        if root_children >= 2:
            points.add(root)
    return points


def _max_flow_cut(adj, pool: set[int], sources: set[int], sinks: set[int]) -> Cut:
    # Unit capacity in each direction of every undirected edge.  flow[(a, b)]
    # is +1 when one unit moves a -> b; the residual capacity is 1 - flow.
    flow: dict[tuple[int, int], int] = {}
    while True:
        parent = {s: None for s in sources}
        queue = deque(sorted(sources))
        hit = None
        while queue and hit is None:
            x = queue.popleft()
            for y in adj[x]:
                if y in parent or y not in pool:
                    continue
                if flow.get((x, y), 0) >= 1:
                    continue
                parent[y] = x
                if y in sinks:
                    hit = y
                    break
                queue.append(y)
        if hit is None:
            break
        y = hit
        while parent[y] is not None:
            x = parent[y]
            flow[(x, y)] = flow.get((x, y), 0) + 1
            flow[(y, x)] = flow.get((y, x), 0) - 1
            y = x
    reach = set(parent)
    edges = frozenset(
        (x, y) for x in reach for y in adj[x] if y in pool and y not in reach
    )
    return Cut(edges, frozenset(reach))


def min_st_cut(g: Graph, s: int, t: int, within: Iterable[int] | None = None) -> Cut:
    """Minimum edge cut between ``s`` and ``t`` with unit capacities."""
    if s == t:
        raise ContractError("s and t must differ")
    if not (g.alive[s] and g.alive[t]):
        raise ContractError("s and t must be alive")
    pool = g.alive_set() if within is None else set(within)
    return _max_flow_cut(g.adj, pool, {s}, {t})


def hopcroft_karp(left: Iterable[int], adj: dict[int, list[int]]) -> dict[int, int]:
    """Maximum matching of a bipartite graph given as left -> right adjacency.

    Returns the matching as a left -> right dict.
    """
    left = list(left)
    match_l: dict[int, int] = {}
    match_r: dict[int, int] = {}
    inf = float("inf")
    while True:
        dist: dict[int, float] = {}
        queue = deque()
        for u in left:
            if u not in match_l:
                dist[u] = 0
                queue.append(u)
        found = False
        while queue:
            u = queue.popleft()
            for r in adj.get(u, ()):
                w = match_r.get(r)
                if w is None:
                    found = True
                elif w not in dist:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        if not found:
            break

        def augment(u: int) -> bool:
            # Iterative DFS along the BFS layers.
            stack = [(u, iter(adj.get(u, ())))]
            path = []
            while stack:
                x, it = stack[-1]
                for r in it:
                    w = match_r.get(r)
                    if w is None:
                        path.append((x, r))
                        for a, b in path:
                            match_l[a] = b
                            match_r[b] = a
                        return True
                    if dist.get(w, inf) == dist[x] + 1:
                        path.append((x, r))
                        stack.append((w, iter(adj.get(w, ()))))
                        break
                else:
                    dist[x] = inf
                    stack.pop()
                    if path:
                        path.pop()
            return False

        for u in left:
            if u not in match_l:
                augment(u)
    return match_l


def koenig_cover(left: Iterable[int], adj: dict[int, list[int]], matching: dict[int, int]) -> set[int]:
    """Minimum vertex cover from a maximum matching.

    Alternating search from unmatched left vertices reaches ``Z``; the cover
    is ``(L - Z) | (R & Z)``.  Left and right ids must be disjoint.
    """
    left = list(left)
    match_r = {r: l for l, r in matching.items()}
    z_left = set(u for u in left if u not in matching)
    z_right: set[int] = set()
    queue = deque(z_left)
    while queue:
        u = queue.popleft()
        for r in adj.get(u, ()):
            if r in z_right or matching.get(u) == r:
                continue
            z_right.add(r)
            w = match_r.get(r)
            if w is not None and w not in z_left:
                z_left.add(w)
                queue.append(w)
    return (set(left) - z_left) | z_right


def cut_to_separator(g: Graph, cut: Cut, source: str = "edge_cut", within: Iterable[int] | None = None) -> Separator:
    """Vertex separator covering every cut edge, of minimum size for that cut."""
    adj: dict[int, list[int]] = {}
    for a, b in sorted(cut.edges):
        adj.setdefault(a, []).append(b)
    left = sorted(adj)
    matching = hopcroft_karp(left, adj)
    cover = koenig_cover(left, adj, matching)
    pool = g.alive_set() if within is None else set(within)
    s_side = sum(1 for v in cut.source_side if v not in cover)
    t_side = len(pool) - len(cut.source_side) - sum(
        1 for v in cover if v not in cut.source_side
    )
    return Separator(frozenset(cover), (s_side, t_side), source)


def find_branching_separator(
    g: Graph,
    rng: random.Random,
    *,
    max_size: int = EDGE_CUT_MAX_SIZE,
    min_balance: float = EDGE_CUT_MIN_BALANCE,
    within: Iterable[int] | None = None,
) -> Separator | None:
    """One attempt at a small balanced separator between two max-degree vertices."""
    adj = g.adj
    pool = g.alive_set() if within is None else set(within)
    if len(pool) < 2:
        return None
    verts = sorted(pool)
    top = max(len(adj[v]) for v in verts)
    best = [v for v in verts if len(adj[v]) == top]
    s = rng.choice(best)
    rest = [v for v in verts if v != s]
    if len(best) >= 2:
        t = rng.choice([v for v in best if v != s])
    else:
        second = max(len(adj[v]) for v in rest)
        t = rng.choice([v for v in rest if len(adj[v]) == second])
    cut = _max_flow_cut(adj, pool, {s}, {t})
    sep = cut_to_separator(g, cut, "edge_cut", within=pool)
    remaining = len(pool) - len(sep)
    if len(sep) > max_size or remaining <= 0:
        return None
    if min(sep.side_sizes) < min_balance * remaining or min(sep.side_sizes) == 0:
        return None
    return sep


def _bfs_order(adj, pool: set[int], start: int) -> list[int]:
    order = [start]
    seen = {start}
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for y in sorted(adj[x]):
            if y in pool and y not in seen:
                seen.add(y)
                order.append(y)
    return order


def _bisect(g: Graph, pool: set[int], rng: random.Random, attempts: int = 3,
            terminal_fraction: float = 0.45) -> tuple[Separator, set[int], set[int]] | None:
    # Flow-based bisection: sources are the vertices nearest a pseudo-peripheral
    # seed in BFS order, sinks the farthest ones; the min cut between them is
    # turned into a vertex separator.  The most balanced result wins.
    adj = g.adj
    verts = sorted(pool)
    top = max(len(adj[v]) for v in verts)
    seeds = [v for v in verts if len(adj[v]) == top]
    k = max(1, int(terminal_fraction * len(verts)))
    best = None
    for _ in range(attempts):
        start = rng.choice(seeds)
        far = _bfs_order(adj, pool, start)[-1]
        order = _bfs_order(adj, pool, far)
        if len(order) < 2 * k + 1:
            continue
        sources = set(order[:k])
        sinks = set(order[-k:])
        cut = _max_flow_cut(adj, pool, sources, sinks)
        sep = cut_to_separator(g, cut, "nested_dissection", within=pool)
        a = set(cut.source_side) - sep.vertices
        b = pool - cut.source_side - sep.vertices
        if not a or not b:
            continue
        key = (min(len(a), len(b)), -len(sep))
        if best is None or key > best[0]:
            best = (key, sep, a, b)
    if best is None:
        return None
    return best[1], best[2], best[3]


def nested_dissection_order(
    g: Graph,
    rng: random.Random | None = None,
    *,
    levels: int = ND_LEVELS,
    max_separator: int = ND_MAX_SEPARATOR,
    min_balance: float = ND_MIN_BALANCE,
) -> NDOrder | None:
    """Separators of a ``levels``-deep dissection of the largest component.

    Returns ``None`` when the graph is empty, when nothing can be split, or
    when any separator is larger than ``max_separator`` or leaves a part
    smaller than ``min_balance`` of the dissected subgraph minus the
    separator.  Parts that cannot be split at all (cliques, tiny pieces) end
    the recursion locally.
    """
    rng = rng if rng is not None else random.Random(42)
    comps = g.connected_components()
    if not comps:
        return None
    largest = max(comps, key=lambda c: (len(c), -min(c)))
    found: list[tuple[int, Separator]] = []

    def recurse(pool: set[int], level: int) -> bool:
        if level >= levels or len(pool) < 3:
            return True
        parts = g.connected_components(pool)
        if len(parts) > 1:
            return all(recurse(p, level) for p in parts)
        split = _bisect(g, pool, rng)
        if split is None:
            return True
        sep, a, b = split
        # balance is measured on what remains once the separator is removed,
        # as for edge-cut separators
        if len(sep) > max_separator or min(len(a), len(b)) < min_balance * (len(pool) - len(sep)):
            return False
        found.append((level, sep))
        return recurse(a, level + 1) and recurse(b, level + 1)

    if not recurse(set(largest), 0) or not found:
        return None
    found.sort(key=lambda item: item[0])
    return NDOrder([sep for _, sep in found])
