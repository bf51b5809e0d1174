import random

from misbranch.graph import Graph
from misbranch.packing import (
    Exclude,
    Include,
    PackingStore,
    Prune,
    add_exclude_constraint,
    check_constraint,
    on_eliminate,
)
from misbranch.reductions import BranchCandidatePool, Kernel, reduce_to_fixpoint
from misbranch.solver import SolverConfig, solve

from graphgen import gnp, oracle_corpus


def kinds(actions):
    return [type(a) for a in actions]


def test_exclude_constraint_over_two_neighbours():
    store = PackingStore(Graph(3, [(0, 1), (0, 2)]))
    c = add_exclude_constraint(store, 0, [1, 2])
    assert c.vars == {1, 2} and c.rhs == 2


def test_single_neighbour_prunes():
    g = Graph(2, [(0, 1)])
    store = PackingStore(g)
    c = add_exclude_constraint(store, 0, [1])
    assert kinds(check_constraint(store, c, g)) == [Prune]


def test_isolated_vertex_prunes():
    g = Graph(1)
    store = PackingStore(g)
    c = add_exclude_constraint(store, 0, [])
    assert kinds(check_constraint(store, c, g)) == [Prune]


def test_eliminate_included_forces_other():
    g = Graph(3)
    store = PackingStore(g)
    store.add({0, 1}, 2)
    assert on_eliminate(store, 0, True) == [Include(1)]


def test_eliminate_excluded_prunes():
    g = Graph(3)
    store = PackingStore(g)
    store.add({0, 1}, 2)
    assert kinds(on_eliminate(store, 0, False)) == [Prune]


def test_satisfied_constraint_deactivates():
    g = Graph(3)
    store = PackingStore(g)
    c = store.add({0, 1, 2}, 1)
    assert on_eliminate(store, 0, True) == []
    assert not c.active


def test_tight_with_internal_edge_prunes():
    g = Graph(2, [(0, 1)])
    store = PackingStore(g)
    c = store.add({0, 1}, 2)
    assert kinds(check_constraint(store, c, g)) == [Prune]


def test_k_plus_one_candidates():
    g = Graph(3)
    store = PackingStore(g)
    c = store.add({0, 1, 2}, 2)
    pool = BranchCandidatePool()
    assert check_constraint(store, c, g, pool) == []
    assert sorted(pool.by_source("packing")) == [0, 1, 2]


def test_outside_vertex_excluded():
    # S = {0, 1, 2}, k = 2; vertex 3 sees 1 and 2
    g = Graph(4, [(3, 1), (3, 2)])
    store = PackingStore(g)
    c = store.add({0, 1, 2}, 2)
    assert Exclude(3) in check_constraint(store, c, g)


def test_store_restore_fuzz():
    rng = random.Random(5)
    for trial in range(1000):
        n = rng.randint(3, 12)
        g = gnp(n, 0.3, trial)
        store = PackingStore(g)
        for _ in range(rng.randint(0, 3)):
            store.add(rng.sample(range(n), rng.randint(1, n)), rng.randint(1, 3))
        cp = store.checkpoint()
        snap = store.snapshot()
        for _ in range(rng.randint(1, 12)):
            op = rng.random()
            if op < 0.5:
                store.on_eliminate(rng.randrange(n), rng.random() < 0.5)
            elif op < 0.7:
                store.add(rng.sample(range(n), rng.randint(1, n)), rng.randint(1, 3))
            elif store.constraints:
                c = rng.choice(store.constraints)
                store.set_active(c, not c.active)
            else:
                store.check(store.add({0, 1}, 1), BranchCandidatePool())
        store.restore(cp)
        assert store.snapshot() == snap
        for v in range(n):
            assert all(v in c.vars for c in store.containing(v))


def test_forced_includes_are_consistent():
    # every Include issued during reduction finds no included neighbour
    rng = random.Random(8)
    for trial in range(300):
        n = rng.randint(5, 16)
        g = gnp(n, rng.choice([0.15, 0.3]), trial)
        store = PackingStore(g)
        for _ in range(rng.randint(1, 3)):
            S = rng.sample(range(n), rng.randint(2, min(n, 5)))
            store.add(S, rng.randint(1, 2))
        k = Kernel(g, store)
        included = set()
        original_include = k.include

        def include(v, _orig=original_include, _adj=[set(a) for a in g.adj]):
            assert _adj[v].isdisjoint(included)
            included.add(v)
            _orig(v)

        k.include = include
        k.reduce()


def test_packing_never_changes_answer():
    for g in oracle_corpus(500, seed=9):
        on = solve(g, SolverConfig(packing_enabled=True))
        off = solve(g, SolverConfig(packing_enabled=False))
        assert on.mis_size == off.mis_size


def test_pruned_reduction_reports_prune():
    g = Graph(3, [(0, 1)])
    store = PackingStore(g)
    store.add({0, 1}, 2)
    out = reduce_to_fixpoint(g, store)
    assert out.pruned
