import itertools
import random

import networkx as nx
import pytest

from misbranch.graph import ContractError, Graph
from misbranch.separators import (
    Cut,
    articulation_points,
    cut_to_separator,
    find_branching_separator,
    hopcroft_karp,
    koenig_cover,
    min_st_cut,
    nested_dissection_order,
)

from graphgen import complete, gnp, path


def two_triangles_sharing_vertex():
    return Graph(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)])


def test_articulation_examples():
    assert articulation_points(path(3)) == {1}
    assert articulation_points(complete(3)) == set()
    assert articulation_points(two_triangles_sharing_vertex()) == {2}


def test_articulation_matches_brute_force():
    rng = random.Random(1)
    for i in range(500):
        g = gnp(rng.randint(1, 30), rng.choice([0.05, 0.1, 0.2, 0.4]), i)
        if rng.random() < 0.3:
            for v in rng.sample(g.vertices(), g.num_vertices() // 4):
                g.hide_vertex(v)
        base = len(g.connected_components())
        expected = {
            v for v in g.vertices()
            if len(g.connected_components(g.alive_set() - {v})) > base
        }
        assert articulation_points(g) == expected


def test_articulation_deep_path_no_recursion_limit():
    assert len(articulation_points(path(5000))) == 4998


def _brute_min_cut(g, s, t):
    edges = g.edges()
    for size in range(len(edges) + 1):
        for removed in itertools.combinations(edges, size):
            h = g.copy()
            for u, v in removed:
                h.remove_edge(u, v)
            comps = h.connected_components()
            if not any(s in c and t in c for c in comps):
                return size
    raise AssertionError


def _check_cut(g, cut, s, t):
    h = g.copy()
    for u, v in cut.edges:
        assert u in cut.source_side and v not in cut.source_side
        h.remove_edge(u, v)
    assert not any(s in c and t in c for c in h.connected_components())


def test_min_cut_examples():
    assert len(min_st_cut(path(3), 0, 2).edges) == 1
    assert len(min_st_cut(complete(3), 0, 1).edges) == 2
    # two K4s joined by two disjoint paths of length 2
    edges = list(itertools.combinations(range(4), 2))
    edges += [(a + 4, b + 4) for a, b in itertools.combinations(range(4), 2)]
    edges += [(0, 8), (8, 4), (1, 9), (9, 5)]
    g = Graph(10, edges)
    cut = min_st_cut(g, 2, 6)
    assert len(cut.edges) == 2
    _check_cut(g, cut, 2, 6)


def test_min_cut_same_terminal_rejected():
    with pytest.raises(ContractError):
        min_st_cut(path(3), 1, 1)


def test_min_cut_brute_force_small():
    rng = random.Random(2)
    checked = 0
    for i in range(400):
        g = gnp(rng.randint(2, 8), rng.choice([0.3, 0.5]), i)
        if g.num_edges() > 12:
            continue
        s, t = rng.sample(range(g.n_original), 2)
        cut = min_st_cut(g, s, t)
        assert len(cut.edges) == _brute_min_cut(g, s, t)
        _check_cut(g, cut, s, t)
        checked += 1
    assert checked > 100


def test_min_cut_matches_networkx_flow():
    rng = random.Random(3)
    for i in range(150):
        g = gnp(rng.randint(2, 30), rng.choice([0.1, 0.2, 0.4]), i)
        s, t = rng.sample(range(g.n_original), 2)
        cut = min_st_cut(g, s, t)
        h = nx.DiGraph()
        h.add_nodes_from(range(g.n_original))
        for u, v in g.edges():
            h.add_edge(u, v, capacity=1)
            h.add_edge(v, u, capacity=1)
        assert len(cut.edges) == nx.maximum_flow_value(h, s, t)
        _check_cut(g, cut, s, t)


def test_cut_to_separator_examples():
    g = path(2)
    sep = cut_to_separator(g, Cut(frozenset({(0, 1)}), frozenset({0})))
    assert len(sep) == 1
    star = Graph(4, [(0, 1), (0, 2), (0, 3)])
    sep = cut_to_separator(star, Cut(frozenset({(0, 1), (0, 2), (0, 3)}), frozenset({0})))
    assert sep.vertices == {0}
    two = Graph(4, [(0, 2), (1, 3)])
    sep = cut_to_separator(two, Cut(frozenset({(0, 2), (1, 3)}), frozenset({0, 1})))
    assert len(sep) == 2


def test_koenig_equality_and_cover():
    rng = random.Random(4)
    for i in range(300):
        left = list(range(rng.randint(1, 8)))
        right = list(range(100, 100 + rng.randint(1, 8)))
        adj = {u: sorted(v for v in right if rng.random() < 0.35) for u in left}
        matching = hopcroft_karp(left, adj)
        b = nx.Graph()
        b.add_nodes_from(left)
        b.add_nodes_from(right)
        b.add_edges_from((u, v) for u in left for v in adj[u])
        expected = len(nx.bipartite.maximum_matching(b, top_nodes=left)) // 2
        assert len(matching) == expected
        cover = koenig_cover(left, adj, matching)
        assert len(cover) == expected
        assert all(u in cover or v in cover for u in left for v in adj[u])


def test_separator_disconnects_terminals():
    rng = random.Random(5)
    for i in range(200):
        g = gnp(rng.randint(4, 30), rng.choice([0.1, 0.2, 0.3]), i)
        s, t = rng.sample(range(g.n_original), 2)
        cut = min_st_cut(g, s, t)
        sep = cut_to_separator(g, cut)
        rest = g.alive_set() - sep.vertices
        for comp in g.connected_components(rest):
            assert not (s in comp and t in comp)


def bridged_cliques(size=20):
    edges = list(itertools.combinations(range(size), 2))
    edges += [(a + size, b + size) for a, b in itertools.combinations(range(size), 2)]
    edges.append((0, size))
    return Graph(2 * size, edges)


def test_bridged_cliques_accepted():
    g = bridged_cliques()
    sep = find_branching_separator(g, random.Random(42))
    assert sep is not None
    assert len(sep) == 1 and sep.vertices <= {0, 20}
    assert sorted(sep.side_sizes) == [19, 20]


def test_complete_graph_rejected():
    assert find_branching_separator(complete(10), random.Random(42)) is None


def test_separator_size_limit():
    # three disjoint bridges between two K20s: the bridge endpoints are the
    # max-degree vertices and any cross cut needs a separator of three
    edges = list(itertools.combinations(range(20), 2))
    edges += [(a + 20, b + 20) for a, b in itertools.combinations(range(20), 2)]
    edges += [(0, 20), (1, 21), (2, 22)]
    g = Graph(40, edges)
    sizes = set()
    for seed in range(30):
        sep = find_branching_separator(g, random.Random(seed))
        if sep is not None:
            sizes.add(len(sep))
        assert find_branching_separator(g, random.Random(seed), max_size=2) is None
    assert sizes == {3}


def test_accepted_separators_split_graph():
    rng = random.Random(6)
    for i in range(200):
        g = gnp(rng.randint(6, 60), rng.choice([0.04, 0.08, 0.15]), i)
        sep = find_branching_separator(g, random.Random(i))
        if sep is None:
            continue
        comps = g.connected_components(g.alive_set() - sep.vertices)
        assert len(comps) >= 2
        assert sum(sep.side_sizes) == g.num_vertices() - len(sep)


def clique_chain(k=4, size=5):
    edges = []
    for b in range(k):
        base = b * size
        edges += [(base + u, base + v) for u, v in itertools.combinations(range(size), 2)]
        if b:
            edges.append((base - 1, base))
    return Graph(k * size, edges)


@pytest.mark.parametrize("size", [4, 5, 6])
def test_nd_clique_chain(size):
    g = clique_chain(4, size)
    order = nested_dissection_order(g, random.Random(42))
    assert order is not None
    assert [len(s) for s in order.levels] == [1, 1, 1]
    top = order.levels[0].vertices
    comps = g.connected_components(g.alive_set() - top)
    assert sorted(map(len, comps)) == [2 * size - 1, 2 * size]
    rest = g.alive_set() - set(order.branch_sequence())
    assert sorted(map(len, g.connected_components(rest))) == [size - 1, size - 1, size - 1, size]


def test_nd_rejects_clique_and_empty():
    assert nested_dissection_order(complete(60), random.Random(42)) is None
    assert nested_dissection_order(Graph(0), random.Random(42)) is None
