"""Branching vertex selection.

Every strategy answers the same question, "which alive vertex do we branch
on next?", and falls back to a maximum-degree vertex when it has nothing
better to offer.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from enum import Enum

from .graph import ContractError, Graph
from .reductions import BranchCandidatePool
from .separators import (
    EDGE_CUT_MAX_SIZE,
    EDGE_CUT_MIN_BALANCE,
    NDOrder,
    articulation_points,
    find_branching_separator,
    nested_dissection_order,
)

__all__ = [
    "BranchDecision",
    "Strategy",
    "StrategyState",
    "select_decomposition",
    "select_max_degree",
    "select_reduction_targeted",
]

EDGE_CUT_SKIP_STEPS = 10


class Strategy(str, Enum):
    MAX_DEGREE = "max-degree"
    ARTICULATION = "articulation"
    EDGE_CUT = "edge-cut"
    NESTED_DISSECTION = "nested-dissection"
    TWIN = "twin"
    FUNNEL = "funnel"
    UNCONFINED = "unconfined"
    PACKING = "packing"
    COMBINED = "combined"

    @classmethod
    def _missing_(cls, value):
        # accept "max_degree" and other underscore spellings
        if isinstance(value, str):
            key = value.strip().lower().replace("_", "-")
            for member in cls:
                if member.value == key:
                    return member
        return None

    @property
    def is_decomposition(self) -> bool:
        return self in (Strategy.ARTICULATION, Strategy.EDGE_CUT, Strategy.NESTED_DISSECTION)

    @property
    def is_reduction_targeted(self) -> bool:
        return self in _SOURCES

    @property
    def candidate_sources(self) -> tuple[str, ...]:
        return _SOURCES.get(self, ())

    @property
    def fallback_slack(self) -> int:
        """Candidates below ``max degree - slack`` are ignored."""
        return _SLACK.get(self, 0)


_SOURCES = {
    Strategy.TWIN: ("twin",),
    Strategy.FUNNEL: ("funnel",),
    Strategy.UNCONFINED: ("unconfined",),
    Strategy.PACKING: ("packing",),
    Strategy.COMBINED: ("twin", "funnel", "unconfined", "packing"),
}
_SLACK = {
    Strategy.TWIN: 2,
    Strategy.FUNNEL: 2,
    Strategy.UNCONFINED: 2,
    Strategy.PACKING: 5,
    Strategy.COMBINED: 4,
}


@dataclass(frozen=True)
class BranchDecision:
    vertex: int
    used_fallback: bool
    source: str = "max-degree"


@dataclass
class StrategyState:
    kind: Strategy
    rng: random.Random = field(default_factory=lambda: random.Random(42))
    cached_separator: list[int] = field(default_factory=list)
    skip_counter: int = 0
    nd_order: NDOrder | None = None
    nd_computed: bool = False
    k_threshold: int = 0

    def __post_init__(self):
        self.kind = Strategy(self.kind)
        if not self.k_threshold:
            self.k_threshold = self.kind.fallback_slack

    @classmethod
    def for_strategy(cls, kind: Strategy | str, seed: int = 42) -> StrategyState:
        return cls(Strategy(kind), rng=random.Random(seed))

    def prepare(self, g: Graph) -> None:
        """One-time work on the initially reduced graph."""
        if self.kind is Strategy.NESTED_DISSECTION and not self.nd_computed:
            self.nd_order = nested_dissection_order(g, self.rng)
            self.nd_computed = True

    def select(self, g: Graph, pool: BranchCandidatePool | None = None) -> BranchDecision:
        if self.kind is Strategy.MAX_DEGREE:
            return select_max_degree(g)
        if self.kind.is_decomposition:
            return select_decomposition(self, g)
        return select_reduction_targeted(self, g, pool if pool is not None else BranchCandidatePool())


def _best_by_degree(g: Graph, vs) -> int:
    adj = g.adj
    return min(vs, key=lambda v: (-len(adj[v]), v))


def select_max_degree(g: Graph) -> BranchDecision:
    if not g.num_vertices():
        raise ContractError("cannot branch on an empty graph")
    return BranchDecision(_best_by_degree(g, g.alive_set()), False)


def _fallback(g: Graph) -> BranchDecision:
    return BranchDecision(select_max_degree(g).vertex, True)


def select_decomposition(st: StrategyState, g: Graph) -> BranchDecision:
    if not g.num_vertices():
        raise ContractError("cannot branch on an empty graph")
    alive = g.alive
    kind = st.kind
    if kind is Strategy.NESTED_DISSECTION:
        if st.nd_order is None:
            return _fallback(g)
        for v in st.nd_order.branch_sequence():
            if alive[v]:
                return BranchDecision(v, False, "nested_dissection")
        return _fallback(g)

    st.cached_separator = [v for v in st.cached_separator if alive[v]]
    if kind is Strategy.ARTICULATION:
        if not st.cached_separator:
            st.cached_separator = sorted(articulation_points(g))
        if not st.cached_separator:
            return _fallback(g)
        return BranchDecision(_best_by_degree(g, st.cached_separator), False, "articulation")

    # edge cut
    if not st.cached_separator:
        if st.skip_counter > 0:
            st.skip_counter -= 1
            return _fallback(g)
        sep = find_branching_separator(
            g, st.rng, max_size=EDGE_CUT_MAX_SIZE, min_balance=EDGE_CUT_MIN_BALANCE
        )
        if sep is None:
            st.skip_counter = EDGE_CUT_SKIP_STEPS
            return _fallback(g)
        st.cached_separator = sorted(sep.vertices)
    return BranchDecision(_best_by_degree(g, st.cached_separator), False, "edge_cut")


def select_reduction_targeted(st: StrategyState, g: Graph, pool: BranchCandidatePool) -> BranchDecision:
    if not g.num_vertices():
        raise ContractError("cannot branch on an empty graph")
    candidates = pool.alive(g, st.kind.candidate_sources)
    if not candidates:
        return _fallback(g)
    v = _best_by_degree(g, candidates)
    if g.degree(v) < g.max_degree() - st.k_threshold:
        return _fallback(g)
    return BranchDecision(v, False, pool.entries[v])
