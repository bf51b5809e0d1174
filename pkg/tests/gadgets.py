"""Generators that plant one reducible pattern in a small random graph."""

from __future__ import annotations

import itertools
import random

from misbranch.graph import Graph
from misbranch.packing import PackingStore
from misbranch.reductions import BranchCandidatePool, Kernel, reconstruct_solution


def _random_edges(rng: random.Random, vertices, p: float):
    return [(u, v) for u, v in itertools.combinations(vertices, 2) if rng.random() < p]


def _host(seed: int, lo: int = 6, hi: int = 13):
    rng = random.Random(seed)
    n = rng.randint(lo, hi)
    p = rng.choice([0.15, 0.25, 0.35, 0.5])
    return rng, n, _random_edges(rng, range(n), p)


def deg0(seed):
    rng, n, edges = _host(seed)
    return Graph(n + 1, edges), n


def deg1(seed):
    rng, n, edges = _host(seed)
    return Graph(n + 1, edges + [(n, rng.randrange(n))]), n


def deg2_fold(seed):
    rng, n, edges = _host(seed)
    a, b = rng.sample(range(n), 2)
    edges = [e for e in edges if set(e) != {a, b}]
    return Graph(n + 1, edges + [(n, a), (n, b)]), n


def deg2_triangle(seed):
    rng, n, edges = _host(seed)
    a, b = rng.sample(range(n), 2)
    return Graph(n + 1, edges + [(n, a), (n, b), (a, b)]), n


def dominance(seed):
    # v adjacent to u with N[v] inside N[u]; u must be removable
    rng, n, edges = _host(seed)
    u = rng.randrange(n)
    nu = [x for x in range(n) if x != u and ((u, x) in edges or (x, u) in edges)]
    v = n
    extra = rng.sample(nu, rng.randint(0, len(nu))) if nu else []
    return Graph(n + 1, edges + [(u, v)] + [(v, x) for x in extra]), u


def _twin(seed, with_edge: bool):
    rng, n, edges = _host(seed, 5, 11)
    a, b, c = rng.sample(range(n), 3)
    edges = [e for e in edges if not set(e) <= {a, b, c}]
    if with_edge:
        edges.append(rng.choice([(a, b), (a, c), (b, c)]))
    u, v = n, n + 1
    edges += [(u, a), (u, b), (u, c), (v, a), (v, b), (v, c)]
    return Graph(n + 2, edges), v


def twin_include(seed):
    return _twin(seed, True)


def twin_fold(seed):
    return _twin(seed, False)


def funnel(seed):
    rng, n, edges = _host(seed, 5, 12)
    u = rng.randrange(n)
    clique = rng.sample([x for x in range(n) if x != u], rng.randint(1, 3))
    edges += list(itertools.combinations(clique, 2))
    v = n
    edges += [(v, u)] + [(v, x) for x in clique]
    return Graph(n + 1, edges), (u, v)


def unconfined(seed):
    # scan seeded random graphs for a vertex the confinement test removes
    for attempt in range(50):
        rng, n, edges = _host(seed * 50 + attempt, 8, 16)
        g = Graph(n, edges)
        start = rng.randrange(n)
        for i in range(n):
            v = (start + i) % n
            if g.degree(v) >= 2 and Kernel(g.copy(), collect=False).is_unconfined(v):
                return g, v
    raise AssertionError("no unconfined vertex found")


def _apply_unconfined(k: Kernel, v: int) -> bool:
    if not k.is_unconfined(v):
        return False
    k.exclude(v)
    return True


RULES = [
    ("deg0", deg0, lambda k, v: k.apply_degree_rules(v)),
    ("deg1", deg1, lambda k, v: k.apply_degree_rules(v)),
    ("deg2_fold", deg2_fold, lambda k, v: k.apply_degree_rules(v)),
    ("deg2_triangle", deg2_triangle, lambda k, v: k.apply_degree_rules(v)),
    ("dominance", dominance, lambda k, u: k.apply_dominance(u)),
    ("twin_include", twin_include, lambda k, v: k.apply_twin(v)),
    ("twin_fold", twin_fold, lambda k, v: k.apply_twin(v)),
    ("funnel", funnel, lambda k, uv: k.apply_funnel(*uv)),
    ("unconfined", unconfined, _apply_unconfined),
]


def lift(k: Kernel, reduced_solution) -> set[int]:
    return reconstruct_solution(k.events, reduced_solution)


# candidate gadgets: one vertex away from the pattern


def almost_twin(seed):
    rng, n, edges = _host(seed, 5, 11)
    a, b, c, w = rng.sample(range(n), 4)
    u, v = n, n + 1
    edges += [(u, a), (u, b), (u, c), (u, w), (v, a), (v, b), (v, c)]
    return Graph(n + 2, edges), v


def almost_funnel(seed):
    rng, n, edges = _host(seed, 6, 12)
    u = rng.randrange(n)
    rest = rng.sample([x for x in range(n) if x != u], rng.randint(3, 5))
    edges = [e for e in edges if not set(e) <= set(rest)]
    edges += list(itertools.combinations(rest, 2))
    x = rng.choice(rest)
    drop = rng.sample([y for y in rest if y != x], rng.randint(1, len(rest) - 2))
    edges = [e for e in edges if not (set(e) <= set(rest) and x in e and (set(e) - {x}) <= set(drop))]
    v = n
    edges += [(v, u)] + [(v, y) for y in rest]
    return Graph(n + 1, edges), (u, v)


def almost_unconfined(seed):
    rng, n, edges = _host(seed, 7, 16)
    return Graph(n, edges), rng.randrange(n)


CANDIDATE_GADGETS = [
    ("twin", almost_twin, lambda k, v: k.apply_twin(v)),
    ("funnel", almost_funnel, lambda k, uv: k.apply_funnel(*uv)),
    ("unconfined", almost_unconfined, lambda k, v: k.is_unconfined(v)),
]


def fires_without(g: Graph, w: int, source: str, anchor) -> bool:
    """Does the ``source`` rule apply in ``g - w`` (at ``anchor``, or anywhere)?"""

    def minus_w() -> Graph:
        h = g.copy()
        h.hide_vertex(w)
        return h

    if source == "twin":
        targets = [anchor] if anchor is not None else minus_w().vertices()
        for v in targets:
            h = minus_w()
            if h.is_alive(v) and Kernel(h, collect=False).apply_twin(v):
                return True
        return False
    if source == "funnel":
        if anchor is not None:
            pairs = [anchor]
        else:
            h = minus_w()
            pairs = [(u, v) for v in h.vertices() for u in sorted(h.adj[v])]
        for u, v in pairs:
            h = minus_w()
            if h.is_alive(u) and h.is_alive(v) and Kernel(h, collect=False).apply_funnel(u, v):
                return True
        return False
    if source == "unconfined":
        h = minus_w()
        targets = [anchor] if anchor is not None else h.vertices()
        return any(h.is_alive(v) and Kernel(h, collect=False).is_unconfined(v) for v in targets)
    raise ValueError(source)


def packing_candidates(seed: int):
    """Random constraints checked with a pool; count pooled vertices that do
    not meet either emission condition."""
    rng, n, edges = _host(seed, 6, 14)
    g = Graph(n, edges)
    store = PackingStore(g)
    violations = emitted = 0
    pool = None
    for _ in range(3):
        S = set(rng.sample(range(n), rng.randint(2, min(n, 6))))
        k = rng.randint(1, len(S) - 1)
        c = store.add(S, k)
        pool = BranchCandidatePool()
        store.check(c, pool)
        allowed = set(S) if len(S) == k + 1 else set()
        for x in g.vertices():
            if len(S) - len(g.adj[x] & S) == k:
                allowed |= S - g.adj[x]
        for w in pool.by_source("packing"):
            emitted += 1
            violations += w not in allowed
    return g, store, pool, violations, emitted


def grid(rows: int, cols: int) -> Graph:
    edges = []
    for r in range(rows):
        for c in range(cols):
            v = r * cols + c
            if c + 1 < cols:
                edges.append((v, v + 1))
            if r + 1 < rows:
                edges.append((v, v + cols))
    return Graph(rows * cols, edges)
