"""Packing constraints ``sum(x_v for v in S) >= k`` and their reductions.

A constraint is created whenever the search takes the excluding branch at a
vertex ``v``: any solution worth finding there must use at least two of
``N(v)``, otherwise swapping those neighbours out for ``v`` gives a solution
at least as large in the including branch.

The store is fully undoable.  Its checkpoints are independent of the graph's
and are restored together with them by the solver.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .graph import Graph

__all__ = [
    "Exclude",
    "Include",
    "PackingConstraint",
    "PackingStore",
    "Prune",
    "add_exclude_constraint",
    "check_constraint",
    "on_eliminate",
]


class Include(NamedTuple):
    vertex: int


class Exclude(NamedTuple):
    vertex: int


class Prune(NamedTuple):
    reason: str = ""


ForcedAction = Include | Exclude | Prune

_NEW = 0
_DROP_VAR = 1
_ACTIVE = 2


@dataclass(eq=False)
class PackingConstraint:
    vars: set[int]
    rhs: int
    active: bool = True
    id: int = field(default=-1)

    def __repr__(self) -> str:
        state = "" if self.active else ", inactive"
        return f"PackingConstraint(sum{sorted(self.vars)} >= {self.rhs}{state})"


class PackingStore:
    def __init__(self, graph: Graph):
        self.graph = graph
        self.constraints: list[PackingConstraint] = []
        self._index: dict[int, list[int]] = {}
        self._log: list[tuple] = []

    def __len__(self) -> int:
        return len(self.constraints)

    def active(self) -> list[PackingConstraint]:
        return [c for c in self.constraints if c.active]

    def containing(self, v: int) -> list[PackingConstraint]:
        return [
            self.constraints[cid]
            for cid in self._index.get(v, ())
            if self.constraints[cid].active and v in self.constraints[cid].vars
        ]

    def checkpoint(self) -> int:
        return len(self._log)

    def restore(self, checkpoint: int) -> None:
        log = self._log
        while len(log) > checkpoint:
            entry = log.pop()
            kind = entry[0]
            if kind == _NEW:
                c = self.constraints.pop()
                for v in c.vars:
                    self._index[v].pop()
            elif kind == _DROP_VAR:
                _, cid, v, decremented = entry
                c = self.constraints[cid]
                c.vars.add(v)
                if decremented:
                    c.rhs += 1
            else:
                _, cid, was = entry
                self.constraints[cid].active = was

    def snapshot(self) -> list[tuple[frozenset[int], int, bool]]:
        """Hashable view of the store, for equality checks in tests."""
        return [(frozenset(c.vars), c.rhs, c.active) for c in self.constraints]

    def add(self, vars: Iterable[int], rhs: int) -> PackingConstraint:
        c = PackingConstraint(set(vars), rhs, id=len(self.constraints))
        self.constraints.append(c)
        # Index entries are appended in creation order so undo can pop them.
        for v in c.vars:
            self._index.setdefault(v, []).append(c.id)
        self._log.append((_NEW,))
        return c

    def set_active(self, c: PackingConstraint, active: bool) -> None:
        if c.active != active:
            self._log.append((_ACTIVE, c.id, c.active))
            c.active = active

    def _drop_var(self, c: PackingConstraint, v: int, decrement: bool) -> None:
        c.vars.discard(v)
        if decrement:
            c.rhs -= 1
        self._log.append((_DROP_VAR, c.id, v, decrement))

    def on_eliminate(self, v: int, included: bool) -> list[ForcedAction]:
        """Purge ``v`` from every constraint; see :func:`on_eliminate`."""
        actions: list[ForcedAction] = []
        for cid in self._index.get(v, ()):
            c = self.constraints[cid]
            if not c.active or v not in c.vars:
                continue
            self._drop_var(c, v, included)
            actions.extend(self._tightness(c))
        return actions

    def _tightness(self, c: PackingConstraint) -> list[ForcedAction]:
        # Checks that need nothing beyond the constraint and edges inside S.
        k = c.rhs
        size = len(c.vars)
        if k <= 0:
            self.set_active(c, False)
            return []
        if k > size:
            return [Prune(f"constraint {c.id}: rhs {k} exceeds {size} variables")]
        if k == size:
            adj = self.graph.adj
            for v in c.vars:
                if not adj[v].isdisjoint(c.vars):
                    return [Prune(f"constraint {c.id}: all variables forced but S has an edge")]
            return [Include(v) for v in sorted(c.vars)]
        return []

    def check(self, c: PackingConstraint, pool=None) -> list[ForcedAction]:
        """Both packing reductions on one constraint; see :func:`check_constraint`."""
        actions = self._tightness(c)
        if actions or not c.active:
            return actions
        k = c.rhs
        S = c.vars
        size = len(S)
        if pool is not None and size == k + 1:
            for v in sorted(S):
                pool.add(v, "packing")
        adj = self.graph.adj
        hits: dict[int, int] = {}
        for s in S:
            for x in adj[s]:
                hits[x] = hits.get(x, 0) + 1
        forced = []
        for x in sorted(hits):
            slack = size - hits[x]
            if slack < k:
                forced.append(Exclude(x))
            elif slack == k and pool is not None:
                for w in sorted(S - adj[x]):
                    pool.add(w, "packing")
        return forced


def add_exclude_constraint(store: PackingStore, v: int, neighbors: Iterable[int]) -> PackingConstraint:
    """Record that at least two neighbours of excluded vertex ``v`` must be taken."""
    return store.add(neighbors, 2)


def on_eliminate(store: PackingStore, v: int, included: bool) -> list[ForcedAction]:
    """Remove ``v`` from all constraints, lowering the rhs when it was included.

    Returns the actions forced by constraints that became tight: ``Prune`` when
    a rhs exceeds its variable count, ``Include`` for every variable when they
    are all needed.  Satisfied constraints are deactivated.
    """
    return store.on_eliminate(v, included)


def check_constraint(store: PackingStore, c: PackingConstraint, g: Graph, pool=None) -> list[ForcedAction]:
    """Apply both packing reductions to ``c`` and harvest branching candidates.

    A vertex ``x`` with ``|S| - |N(x) & S| < k`` cannot be in the solution.
    Candidates go to ``pool`` when ``|S| == k + 1`` (all of ``S``) or when some
    ``x`` meets ``|S| - |N(x) & S| == k`` exactly (``S - N(x)``).
    """
    if store.graph is not g:
        raise ValueError("constraint store belongs to a different graph")
    return store.check(c, pool)
