"""Readers and writers for METIS, DIMACS and plain edge-list graphs.

All readers symmetrize and deduplicate: directed input becomes undirected,
repeated edges and self-loops disappear.  Vertex ids inside a
:class:`~misbranch.graph.Graph` are always 0-based.

METIS
    ``%`` comments; header ``n m [fmt]``; then ``n`` lines, line ``i`` listing
    the 1-based neighbours of vertex ``i``.  Only unweighted graphs (``fmt``
    absent or ``0``) are accepted.  The declared ``m`` must match the number
    of distinct undirected edges.
DIMACS
    ``c`` comments; ``p edge n m`` (``p col`` also accepted); ``e u v`` lines
    with 1-based ids.  A declared ``m`` that disagrees with the edge count is
    only logged, since clique benchmark files often list both directions.
edge list
    one ``u v`` pair per line; ``#`` and ``%`` start comments.  The id base is
    0 unless the smallest id seen is 1.  A leading ``# n=<n> base=<b>`` comment,
    as written by :func:`write_edgelist`, overrides both guesses.
"""

from __future__ import annotations

import logging
import re
from pathlib import Path

from .graph import Graph, GraphInputError

__all__ = [
    "FORMATS",
    "ParseError",
    "guess_format",
    "parse_graph",
    "read_dimacs",
    "read_edgelist",
    "read_metis",
    "write_dimacs",
    "write_edgelist",
    "write_graph",
    "write_metis",
]

log = logging.getLogger(__name__)

FORMATS = ("metis", "dimacs", "edgelist")

_SUFFIXES = {
    ".graph": "metis",
    ".metis": "metis",
    ".dimacs": "dimacs",
    ".clq": "dimacs",
    ".col": "dimacs",
    ".gr": "dimacs",
}


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, path: str | None = None):
        self.message = message
        self.line = line
        self.path = path
        where = ""
        if path:
            where += f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)

    def __reduce__(self):
        return type(self), (self.message, self.line, self.path)


def guess_format(path: str | Path) -> str:
    return _SUFFIXES.get(Path(path).suffix.lower(), "edgelist")


def _ints(tokens: list[str], lineno: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", lineno) from None


def read_metis(text: str) -> Graph:
    lines = text.splitlines()
    header = None
    rows: list[tuple[int, list[int]]] = []
    for lineno, raw in enumerate(lines, 1):
        line = raw.strip()
        if line.startswith("%"):
            continue
        if header is None:
            if not line:
                continue
            header = (_ints(line.split(), lineno), lineno)
            continue
        if len(rows) < header[0][0]:
            rows.append((lineno, _ints(line.split(), lineno)))
        elif line:
            raise ParseError("more adjacency lines than declared vertices", lineno)
    if header is None:
        raise ParseError("missing METIS header", 1)
    values, hline = header
    if len(values) < 2:
        raise ParseError("METIS header needs 'n m'", hline)
    n, m = values[0], values[1]
    if len(values) > 2 and values[2] not in (0,):
        raise ParseError(f"weighted METIS format {values[2]} is not supported", hline)
    if len(rows) != n:
        raise ParseError(f"declared {n} vertices but found {len(rows)} adjacency lines", hline)
    edges = []
    for i, (lineno, nbrs) in enumerate(rows):
        for j in nbrs:
            if not 1 <= j <= n:
                raise ParseError(f"neighbour {j} outside [1, {n}]", lineno)
            edges.append((i, j - 1))
    g = Graph(n, edges)
    if g.num_edges() != m:
        raise ParseError(f"header declares {m} edges but adjacency has {g.num_edges()}", hline)
    return g


def read_dimacs(text: str) -> Graph:
    n = m = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        parts = raw.split()
        if not parts or parts[0] == "c":
            continue
        tag = parts[0]
        if tag == "p":
            if n is not None:
                raise ParseError("duplicate problem line", lineno)
            if len(parts) < 4:
                raise ParseError("problem line needs 'p edge n m'", lineno)
            n, m = _ints(parts[2:4], lineno)
        elif tag in ("e", "a"):
            if n is None:
                raise ParseError("edge before problem line", lineno)
            if len(parts) < 3:
                raise ParseError("edge line needs two endpoints", lineno)
            u, v = _ints(parts[1:3], lineno)
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"edge ({u}, {v}) outside [1, {n}]", lineno)
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"unknown line type {tag!r}", lineno)
    if n is None:
        raise ParseError("missing problem line", 1)
    g = Graph(n, edges)
    if g.num_edges() != m:
        log.debug("DIMACS header declares %d edges, found %d distinct", m, g.num_edges())
    return g


_HINT = re.compile(r"n=(\d+)(?:\s+base=([01]))?")


def read_edgelist(text: str) -> Graph:
    n_hint = base_hint = None
    pairs = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line[0] in "#%":
            hint = _HINT.search(line)
            if hint and not pairs and n_hint is None:
                n_hint = int(hint.group(1))
                base_hint = int(hint.group(2)) if hint.group(2) else None
            continue
        parts = line.split()
        if len(parts) < 2:
            raise ParseError("edge line needs two endpoints", lineno)
        u, v = _ints(parts[:2], lineno)
        if u < 0 or v < 0:
            raise ParseError("negative vertex id", lineno)
        pairs.append((u, v, lineno))
    if base_hint is not None:
        base = base_hint
    elif pairs:
        base = 1 if min(min(u, v) for u, v, _ in pairs) == 1 else 0
    else:
        base = 0
    edges = []
    for u, v, lineno in pairs:
        if u < base or v < base:
            raise ParseError(f"vertex id below base {base}", lineno)
        edges.append((u - base, v - base))
    n = max((max(u, v) + 1 for u, v in edges), default=0)
    if n_hint is not None:
        if n_hint < n:
            raise ParseError(f"header declares n={n_hint} but ids reach {n - 1 + base}", 1)
        n = n_hint
    return Graph(n, edges)


_READERS = {"metis": read_metis, "dimacs": read_dimacs, "edgelist": read_edgelist}


def parse_graph(path: str | Path, fmt: str | None = None) -> Graph:
    """Read a graph file; ``fmt`` defaults to a guess from the suffix."""
    fmt = fmt or guess_format(path)
    if fmt not in _READERS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    text = Path(path).read_text()
    try:
        return _READERS[fmt](text)
    except ParseError as err:
        raise ParseError(err.message, err.line, str(path)) from None
    except GraphInputError as err:
        raise ParseError(str(err), None, str(path)) from None


def write_metis(g: Graph) -> str:
    index = {v: i for i, v in enumerate(g.vertices())}
    out = [f"{len(index)} {g.num_edges()}"]
    for v in index:
        out.append(" ".join(str(index[u] + 1) for u in sorted(g.adj[v])))
    return "\n".join(out) + "\n"


def write_dimacs(g: Graph) -> str:
    index = {v: i for i, v in enumerate(g.vertices())}
    out = [f"p edge {len(index)} {g.num_edges()}"]
    out += [f"e {index[u] + 1} {index[v] + 1}" for u, v in g.edges()]
    return "\n".join(out) + "\n"


def write_edgelist(g: Graph) -> str:
    index = {v: i for i, v in enumerate(g.vertices())}
    out = [f"# n={len(index)} base=0"]
    out += [f"{index[u]} {index[v]}" for u, v in g.edges()]
    return "\n".join(out) + "\n"


_WRITERS = {"metis": write_metis, "dimacs": write_dimacs, "edgelist": write_edgelist}


def write_graph(g: Graph, path: str | Path, fmt: str | None = None) -> None:
    fmt = fmt or guess_format(path)
    Path(path).write_text(_WRITERS[fmt](g))
