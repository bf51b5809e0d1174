"""Data reduction kernel with a reconstruction trace and almost-reduction harvesting.

Rules run in a fixed order, cheapest first::

    degree 0/1, dominance, degree-2, twin, unconfined, funnel, packing

Each rule makes a full pass over the alive vertices.  As soon as a pass
changes the graph the schedule restarts from the first rule, so when
:meth:`Kernel.reduce` returns, the last round was a complete sweep in which
nothing applied.  Branching candidates ("one vertex away from this rule
applying") are collected on every pass, but the pool is cleared at the start
of each round, so only the final, unsuccessful round contributes.

Folding rules reuse the id of one of the folded vertices for the new vertex,
so a kernel never grows the id space.  The reused vertex keeps its meaning
for packing constraints: it is in the lifted solution exactly when the new
vertex is.  Vertices that vanish into a fold are dropped from constraints as
if they were included, which only ever relaxes a constraint.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import ContractError, Graph
from .packing import Exclude, Include, PackingStore, Prune

__all__ = [
    "Alternative",
    "BranchCandidatePool",
    "Deg2Fold",
    "Excluded",
    "Included",
    "Kernel",
    "ReduceOutcome",
    "TwinFold",
    "apply_degree_rules",
    "apply_dominance",
    "apply_funnel",
    "apply_twin",
    "is_unconfined",
    "reconstruct_solution",
    "reduce_to_fixpoint",
]


@dataclass(frozen=True, slots=True)
class Included:
    v: int


@dataclass(frozen=True, slots=True)
class Excluded:
    v: int


@dataclass(frozen=True, slots=True)
class Deg2Fold:
    """``v`` had non-adjacent neighbours ``u``, ``w``; ``u`` now stands for the fold."""

    v: int
    u: int
    w: int


@dataclass(frozen=True, slots=True)
class TwinFold:
    """Twins ``u``, ``v`` with independent ``N(u)``; ``w_new`` reuses an id from it."""

    u: int
    v: int
    w_new: int
    saved_N_u: frozenset[int]


@dataclass(frozen=True, slots=True)
class Alternative:
    A: frozenset[int]
    B: frozenset[int]
    removed_common: frozenset[int]
    added_edges: tuple[tuple[int, int], ...]
    frontier_A: frozenset[int]


ReductionEvent = Included | Excluded | Deg2Fold | TwinFold | Alternative

SOURCES = ("twin", "funnel", "unconfined", "packing")


class BranchCandidatePool:
    """Branching candidates tagged by the rule that found them.

    Deduplicated by vertex: the first rule to report a vertex keeps it.
    """

    def __init__(self):
        self.entries: dict[int, str] = {}

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, v: int) -> bool:
        return v in self.entries

    def __repr__(self) -> str:
        return f"BranchCandidatePool({self.entries})"

    def add(self, v: int, source: str) -> None:
        if source not in SOURCES:
            raise ValueError(f"unknown candidate source {source!r}")
        self.entries.setdefault(v, source)

    def clear(self) -> None:
        self.entries.clear()

    def by_source(self, source: str) -> list[int]:
        return sorted(v for v, s in self.entries.items() if s == source)

    def alive(self, g: Graph, sources: Iterable[str] | None = None) -> list[int]:
        """Candidates still present in ``g``, optionally restricted by source."""
        wanted = set(SOURCES if sources is None else sources)
        return sorted(
            v for v, s in self.entries.items() if s in wanted and g.alive[v]
        )


@dataclass
class ReduceOutcome:
    offset: int
    events: list
    pruned: bool = False


class Kernel:
    """Applies reductions to ``g`` in place, recording how to undo them.

    The kernel itself never restores the graph; callers take a checkpoint
    first.  ``offset`` counts vertices that are certainly in the lifted
    solution beyond whatever is chosen in the reduced graph.
    """

    def __init__(
        self,
        g: Graph,
        store: PackingStore | None = None,
        pool: BranchCandidatePool | None = None,
        *,
        collect: bool = True,
        counters: Counter | None = None,
    ):
        self.g = g
        self.store = store
        self.pool = pool if pool is not None else BranchCandidatePool()
        self.collect = collect
        self.counters = counters if counters is not None else Counter()
        self.offset = 0
        self.events: list = []
        self.pruned = False
        self._forced: deque = deque()

    def outcome(self) -> ReduceOutcome:
        return ReduceOutcome(self.offset, self.events, self.pruned)

    # elementary steps

    def _notify(self, v: int, included: bool) -> None:
        if self.store is not None:
            self._forced.extend(self.store.on_eliminate(v, included))

    def include(self, v: int) -> None:
        """Put ``v`` in the solution and exclude its neighbours."""
        g = self.g
        nbrs = sorted(g.adj[v])
        g.hide_vertex(v)
        self.events.append(Included(v))
        self.offset += 1
        self._notify(v, True)
        for u in nbrs:
            self.exclude(u)

    def exclude(self, v: int) -> None:
        self.g.hide_vertex(v)
        self.events.append(Excluded(v))
        self._notify(v, False)

    def _drop(self, v: int) -> None:
        # Folded away: membership in the lifted solution is not known yet.
        self.g.hide_vertex(v)
        self._notify(v, True)

    def drain(self) -> bool:
        """Apply queued packing actions until none remain; False on prune."""
        forced = self._forced
        g = self.g
        while forced and not self.pruned:
            act = forced.popleft()
            if isinstance(act, Prune):
                self.pruned = True
                self.counters["packing_prune"] += 1
            elif isinstance(act, Include):
                if g.alive[act.vertex]:
                    self.counters["packing_include"] += 1
                    self.include(act.vertex)
            elif g.alive[act.vertex]:
                self.counters["packing_exclude"] += 1
                self.exclude(act.vertex)
        if self.pruned:
            forced.clear()
        return not self.pruned

    # rules

    def apply_degree_rules(self, v: int) -> bool:
        g = self.g
        adj = g.adj
        d = len(adj[v])
        if d == 0:
            self.counters["deg0"] += 1
            self.include(v)
            return True
        if d == 1:
            self.counters["deg1"] += 1
            self.include(v)
            return True
        if d != 2:
            return False
        u, w = sorted(adj[v])
        if w in adj[u]:
            self.counters["deg2_triangle"] += 1
            self.include(v)
            return True
        self.counters["deg2_fold"] += 1
        extra = sorted(adj[w] - adj[u] - {u, v})
        self._drop(v)
        self._drop(w)
        for x in extra:
            g.add_edge(u, x)
        self.offset += 1
        self.events.append(Deg2Fold(v, u, w))
        return True

    def apply_dominance(self, u: int) -> bool:
        adj = self.g.adj
        Nu = adj[u]
        du = len(Nu)
        for v in Nu:
            Nv = adj[v]
            if len(Nv) <= du and all(x == u or x in Nu for x in Nv):
                self.counters["dominance"] += 1
                self.exclude(u)
                return True
        return False

    def apply_twin(self, v: int) -> bool:
        g = self.g
        adj = g.adj
        Nv = adj[v]
        if len(Nv) != 3:
            return False
        twin = None
        seen = {v}
        for x in sorted(Nv):
            for u in adj[x]:
                if u in seen or u in Nv:
                    continue
                seen.add(u)
                du = len(adj[u])
                if du == 3:
                    if adj[u] == Nv:
                        twin = u
                        break
                elif du == 4 and self.collect and Nv < adj[u]:
                    (w,) = adj[u] - Nv
                    self.pool.add(w, "twin")
            if twin is not None:
                break
        if twin is None:
            return False
        u = twin
        a, b, c = sorted(Nv)
        if b in adj[a] or c in adj[a] or c in adj[b]:
            self.counters["twin_include"] += 1
            self.include(u)
            self.include(v)
            return True
        self.counters["twin_fold"] += 1
        outer = sorted((adj[a] | adj[b] | adj[c]) - {a, b, c, u, v})
        self._drop(u)
        self._drop(v)
        self._drop(b)
        self._drop(c)
        for x in outer:
            g.add_edge(a, x)
        self.offset += 2
        self.events.append(TwinFold(u, v, a, frozenset((a, b, c))))
        return True

    def apply_funnel(self, u: int, v: int) -> bool:
        g = self.g
        adj = g.adj
        if u not in adj[v]:
            raise ContractError(f"({u}, {v}) is not an edge")
        rest = sorted(adj[v] - {u})
        for i, x in enumerate(rest):
            Nx = adj[x]
            missing = [y for y in rest[:i] if y not in Nx]
            if not missing:
                continue
            if self.collect:
                if len(missing) >= 2:
                    if _is_clique(adj, rest, skip=x):
                        self.pool.add(x, "funnel")
                else:
                    other = missing[0]
                    if _is_clique(adj, rest, skip=x):
                        self.pool.add(x, "funnel")
                    if _is_clique(adj, rest, skip=other):
                        self.pool.add(other, "funnel")
            return False
        self.counters["funnel"] += 1
        self._alternative(u, v)
        return True

    def _alternative(self, a: int, b: int) -> None:
        # Alternative reduction with A = {a}, B = {b}.
        g = self.g
        adj = g.adj
        Na = adj[a] - {b}
        Nb = adj[b] - {a}
        common = Na & Nb
        front_a = sorted(Na - common)
        front_b = sorted(Nb - common)
        self._drop(a)
        self._drop(b)
        for x in sorted(common):
            g.hide_vertex(x)
            self._notify(x, False)
        added = []
        for x in front_a:
            for y in front_b:
                if g.add_edge(x, y):
                    added.append((x, y))
        self.offset += 1
        self.events.append(
            Alternative(
                frozenset((a,)),
                frozenset((b,)),
                frozenset(common),
                tuple(added),
                frozenset(front_a),
            )
        )

    def is_unconfined(self, v: int) -> bool:
        """Xiao-Nagamochi confinement test started from ``S = {v}``.

        While collecting, a witness ``w`` is kept when its child was the only
        extending child of that round and ``w`` never showed up in an earlier
        round's residues; removing such a ``w`` replays the same rounds and
        then ends with an empty residue, so ``v`` is unconfined in ``G - w``.
        """
        adj = self.g.adj
        S = {v}
        closed = set(adj[v])
        closed.add(v)
        touched: set[int] = set()
        witnesses: list[int] = []
        while True:
            pick = None
            extending = 0
            residues: list[set[int]] = []
            for u in sorted(closed - S):
                Nu = adj[u]
                if len(S) == 1:
                    if v not in Nu:
                        continue
                elif sum(1 for s in S if s in Nu) != 1:
                    continue
                res = Nu - closed
                if not res:
                    return True
                if len(res) == 1:
                    extending += 1
                    if pick is None:
                        pick = next(iter(res))
                if self.collect:
                    residues.append(res)
            if pick is None:
                break
            if self.collect and extending == 1 and pick not in touched:
                witnesses.append(pick)
            for res in residues:
                touched |= res
            S.add(pick)
            closed.add(pick)
            closed |= adj[pick]
        for w in witnesses:
            self.pool.add(w, "unconfined")
        return False

    # passes

    def _pass(self, step) -> bool:
        g = self.g
        applied = False
        for v in g.vertices():
            if g.alive[v] and step(v):
                applied = True
                if not self.drain():
                    return True
        return applied

    def _unconfined_step(self, v: int) -> bool:
        if self.is_unconfined(v):
            self.counters["unconfined"] += 1
            self.exclude(v)
            return True
        return False

    def _funnel_step(self, v: int) -> bool:
        adj = self.g.adj
        if len(adj[v]) < 3:
            return False
        for u in sorted(adj[v]):
            if self.apply_funnel(u, v):
                return True
        return False

    def _packing_pass(self) -> bool:
        store = self.store
        if store is None:
            return False
        pool = self.pool if self.collect else None
        applied = False
        for c in store.constraints:
            if not c.active:
                continue
            actions = store.check(c, pool)
            if actions:
                applied = True
                self._forced.extend(actions)
                if not self.drain():
                    return True
        return applied

    def reduce(self) -> ReduceOutcome:
        """Run all rules to a fixpoint (or until a packing prune)."""
        if not self.drain():
            return self.outcome()
        g = self.g
        passes = (
            lambda: self._pass(lambda v: len(g.adj[v]) <= 1 and self.apply_degree_rules(v)),
            lambda: self._pass(self.apply_dominance),
            lambda: self._pass(lambda v: len(g.adj[v]) == 2 and self.apply_degree_rules(v)),
            lambda: self._pass(self.apply_twin),
            lambda: self._pass(self._unconfined_step),
            lambda: self._pass(self._funnel_step),
            self._packing_pass,
        )
        while True:
            self.pool.clear()
            for run in passes:
                if run():
                    break
            else:
                return self.outcome()
            if self.pruned:
                self.pool.clear()
                return self.outcome()


def _is_clique(adj: Sequence[set[int]], vs: Sequence[int], skip: int = -1) -> bool:
    members = [x for x in vs if x != skip]
    for i, x in enumerate(members):
        Nx = adj[x]
        for y in members[i + 1:]:
            if y not in Nx:
                return False
    return True


def reduce_to_fixpoint(
    g: Graph,
    store: PackingStore | None = None,
    pool: BranchCandidatePool | None = None,
    *,
    counters: Counter | None = None,
) -> ReduceOutcome:
    """Reduce ``g`` in place; the caller owns checkpoint/restore."""
    return Kernel(g, store, pool, counters=counters).reduce()


def apply_degree_rules(g: Graph, v: int) -> ReduceOutcome | None:
    k = Kernel(g)
    return k.outcome() if k.apply_degree_rules(v) else None


def apply_dominance(g: Graph, u: int) -> ReduceOutcome | None:
    k = Kernel(g)
    return k.outcome() if k.apply_dominance(u) else None


def apply_twin(g: Graph, v: int, pool: BranchCandidatePool | None = None) -> ReduceOutcome | None:
    k = Kernel(g, pool=pool)
    return k.outcome() if k.apply_twin(v) else None


def apply_funnel(g: Graph, u: int, v: int, pool: BranchCandidatePool | None = None) -> ReduceOutcome | None:
    k = Kernel(g, pool=pool)
    return k.outcome() if k.apply_funnel(u, v) else None


def is_unconfined(g: Graph, v: int, pool: BranchCandidatePool | None = None) -> bool:
    return Kernel(g, pool=pool).is_unconfined(v)


def reconstruct_solution(
    events: Sequence,
    reduced_solution: Iterable[int],
    graph: Graph | None = None,
) -> set[int]:
    """Lift an independent set of the reduced graph through ``events``.

    Events are replayed newest first.  When ``graph`` is given, the reduced
    solution is checked for independence in it first.
    """
    sol = set(reduced_solution)
    if graph is not None:
        adj = graph.adj
        for v in sol:
            if not graph.alive[v] or not adj[v].isdisjoint(sol):
                raise ContractError("reduced solution is not independent in the reduced graph")
    for ev in reversed(events):
        kind = type(ev)
        if kind is Included:
            sol.add(ev.v)
        elif kind is Excluded:
            continue
        elif kind is Deg2Fold:
            sol.add(ev.w if ev.u in sol else ev.v)
        elif kind is TwinFold:
            if ev.w_new in sol:
                sol |= ev.saved_N_u
            else:
                sol.add(ev.u)
                sol.add(ev.v)
        elif kind is Alternative:
            sol |= ev.A if ev.frontier_A.isdisjoint(sol) else ev.B
        else:
            raise TypeError(f"unknown reduction event {ev!r}")
    return sol
