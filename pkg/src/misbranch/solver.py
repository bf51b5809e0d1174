"""Branch-and-reduce driver.

Per search node: reduce to a fixpoint (packing included), stop on a packing
prune or an empty graph, split into connected components, prune with the
clique-cover bound, then branch on the strategy's vertex.  The including
branch runs first; the excluding branch adds a packing constraint over the
branch vertex's neighbours.

Each node answers "find a solution larger than ``need``".  It returns the
best solution when one exists and ``None`` otherwise, so a parent can hand a
tighter target to the excluding branch once the including branch succeeded.
Targets are always relative to the current subproblem, which keeps pruning
sound across component splits.
"""

from __future__ import annotations

import logging
import math
import random
import time
from collections import Counter
from dataclasses import dataclass, field

from .bounds import clique_cover_ub, greedy_lb
from .branching import BranchDecision, Strategy, StrategyState
from .graph import Graph
from .packing import PackingStore, add_exclude_constraint
from .reductions import BranchCandidatePool, Kernel, reconstruct_solution

__all__ = ["SolveReport", "Solver", "SolverConfig", "solve"]

log = logging.getLogger(__name__)

TIMEOUT_CHECK_INTERVAL = 1024


@dataclass
class SolverConfig:
    strategy: Strategy | str = Strategy.MAX_DEGREE
    time_limit: float | None = None
    seed: int = 42
    packing_enabled: bool = True
    bound_enabled: bool = True
    include_first: bool = True
    record_branches: bool = False

    def __post_init__(self):
        self.strategy = Strategy(self.strategy)
        if self.time_limit is not None and not self.time_limit > 0:
            raise ValueError(f"time_limit must be positive, got {self.time_limit}")


@dataclass
class SolveReport:
    mis_size: int
    solution: list[int]
    branches: int
    rule_counters: dict[str, int]
    elapsed: float
    timed_out: bool
    strategy: str = Strategy.MAX_DEGREE.value
    fallbacks: int = 0
    branch_log: list[BranchDecision] = field(default_factory=list)


class _Timeout(Exception):
    pass


class Solver:
    """One exact search over one graph; not reusable and not thread-shared."""

    def __init__(self, g: Graph, config: SolverConfig | None = None):
        self.config = config if config is not None else SolverConfig()
        self.g = g
        self.store = PackingStore(g)
        self.state = StrategyState(self.config.strategy, rng=random.Random(self.config.seed))
        self.counters: Counter = Counter()
        self.branches = 0
        self.fallbacks = 0
        self.branch_log: list[BranchDecision] = []
        self._nodes = 0
        self._deadline = math.inf
        self._collect = self.state.kind.is_reduction_targeted

    def run(self) -> tuple[list[int], bool]:
        if self.config.time_limit is not None:
            self._deadline = time.perf_counter() + self.config.time_limit
        incumbent = sorted(greedy_lb(self.g))
        cp = self.g.checkpoint()
        try:
            found = self._search(len(incumbent), root=True)
        except _Timeout:
            self.g.restore(cp)
            self.store.restore(0)
            return incumbent, True
        return (sorted(found) if found is not None else incumbent), False

    def _tick(self) -> None:
        self._nodes += 1
        if self._nodes % TIMEOUT_CHECK_INTERVAL == 0 or self._nodes == 1:
            if time.perf_counter() > self._deadline:
                raise _Timeout

    def _search(self, need: int, root: bool = False) -> set[int] | None:
        self._tick()
        g = self.g
        store = self.store
        cp = g.checkpoint()
        scp = store.checkpoint()
        try:
            pool = BranchCandidatePool()
            kernel = Kernel(
                g,
                store if self.config.packing_enabled else None,
                pool,
                collect=self._collect,
                counters=self.counters,
            )
            out = kernel.reduce()
            if out.pruned:
                return None
            if root:
                self.state.prepare(g)
            target = need - out.offset
            if not g.num_vertices():
                sub: set[int] | None = set() if target < 0 else None
            else:
                sub = self._split_or_branch(target, pool)
            if sub is None:
                return None
            return reconstruct_solution(out.events, sub)
        finally:
            g.restore(cp)
            store.restore(scp)

    def _split_or_branch(self, target: int, pool: BranchCandidatePool) -> set[int] | None:
        g = self.g
        comps = g.connected_components()
        if len(comps) > 1:
            return self._solve_components(comps, target)
        if self.config.bound_enabled and clique_cover_ub(g) <= target:
            return None
        decision = self.state.select(g, pool)
        self.branches += 1
        self.fallbacks += decision.used_fallback
        if self.config.record_branches:
            self.branch_log.append(decision)
        v = decision.vertex
        order = (True, False) if self.config.include_first else (False, True)
        best: set[int] | None = None
        for including in order:
            res = self._branch(v, including, target)
            if res is not None:
                best = res
                target = len(res)
        return best

    def _branch(self, v: int, including: bool, target: int) -> set[int] | None:
        g = self.g
        store = self.store
        cp = g.checkpoint()
        scp = store.checkpoint()
        try:
            kernel = Kernel(
                g,
                store if self.config.packing_enabled else None,
                collect=False,
                counters=self.counters,
            )
            if including:
                kernel.include(v)
            else:
                nbrs = sorted(g.adj[v])
                kernel.exclude(v)
                if self.config.packing_enabled:
                    c = add_exclude_constraint(store, v, nbrs)
                    kernel._forced.extend(store.check(c))
            if not kernel.drain():
                return None
            sub = self._search(target - kernel.offset)
            if sub is None:
                return None
            return reconstruct_solution(kernel.events, sub)
        finally:
            g.restore(cp)
            store.restore(scp)

    def _solve_components(self, comps: list[set[int]], target: int) -> set[int] | None:
        comps = sorted(comps, key=lambda c: (len(c), min(c)))
        g = self.g
        if self.config.bound_enabled:
            ubs = [clique_cover_ub(g, c) for c in comps]
            if sum(ubs) <= target:
                return None
        else:
            ubs = [len(c) for c in comps]
        total: set[int] = set()
        for i, comp in enumerate(comps):
            need_i = target - len(total) - sum(ubs[i + 1:])
            res = self._solve_component(comp, need_i)
            if res is None:
                return None
            total |= res
        return total if len(total) > target else None

    def _solve_component(self, comp: set[int], need: int) -> set[int] | None:
        g = self.g
        store = self.store
        cp = g.checkpoint()
        scp = store.checkpoint()
        try:
            for v in g.vertices():
                if v not in comp:
                    g.hide_vertex(v)
            # Constraints that reach outside the component cannot be enforced
            # locally; dropping them only weakens pruning.
            for c in store.constraints:
                if c.active and not c.vars <= comp:
                    store.set_active(c, False)
            return self._search(need)
        finally:
            g.restore(cp)
            store.restore(scp)


def solve(g: Graph, cfg: SolverConfig | None = None) -> SolveReport:
    """Exact maximum independent set of the alive part of ``g``.

    ``g`` is not modified.  The returned solution uses ``g``'s vertex ids.
    """
    cfg = cfg if cfg is not None else SolverConfig()
    start = time.perf_counter()
    work, mapping = g.induced_subgraph(g.vertices())
    back = {new: old for old, new in mapping.items()}
    solver = Solver(work, cfg)
    sol, timed_out = solver.run()
    elapsed = time.perf_counter() - start
    if timed_out:
        log.info("time limit of %ss reached; returning incumbent", cfg.time_limit)
    branch_log = [
        BranchDecision(back[d.vertex], d.used_fallback, d.source) for d in solver.branch_log
    ]
    return SolveReport(
        mis_size=len(sol),
        solution=sorted(back[v] for v in sol),
        branches=solver.branches,
        rule_counters=dict(solver.counters),
        elapsed=elapsed,
        timed_out=timed_out,
        strategy=cfg.strategy.value,
        fallbacks=solver.fallbacks,
        branch_log=branch_log,
    )
