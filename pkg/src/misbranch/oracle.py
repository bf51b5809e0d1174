"""Brute-force maximum independent set, used to check everything else.

Nothing here shares code with the reduction rules or the branching solver.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Graph

__all__ = ["MAX_ORACLE_VERTICES", "OracleResult", "OracleRefusal", "brute_force_mis"]

MAX_ORACLE_VERTICES = 30


class OracleRefusal(ValueError):
    """The instance is too large for exhaustive search."""


@dataclass(frozen=True)
class OracleResult:
    alpha: int
    witness: frozenset[int]


def brute_force_mis(g: Graph) -> OracleResult:
    """Exact independence number by exhaustive include/exclude recursion."""
    verts = g.vertices()
    if len(verts) > MAX_ORACLE_VERTICES:
        raise OracleRefusal(
            f"{len(verts)} alive vertices exceeds the oracle limit of {MAX_ORACLE_VERTICES}"
        )
    index = {v: i for i, v in enumerate(verts)}
    closed = []
    for v in verts:
        mask = 1 << index[v]
        for u in g.neighbors(v):
            mask |= 1 << index[u]
        closed.append(mask)

    best_mask = 0
    best_size = 0

    def recurse(remaining: int, chosen: int, size: int) -> None:
        nonlocal best_mask, best_size
        if size + remaining.bit_count() <= best_size:
            return
        if not remaining:
            best_mask, best_size = chosen, size
            return
        i = (remaining & -remaining).bit_length() - 1
        bit = 1 << i
        recurse(remaining & ~closed[i], chosen | bit, size + 1)
        # Excluding a vertex with no remaining neighbours can never help.
        if closed[i] & remaining != bit:
            recurse(remaining & ~bit, chosen, size)

    recurse((1 << len(verts)) - 1, 0, 0)
    witness = frozenset(verts[i] for i in range(len(verts)) if best_mask >> i & 1)
    return OracleResult(best_size, witness)
