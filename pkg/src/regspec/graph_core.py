"""Simple undirected graphs on dense integer vertices.

A :class:`Graph` is an immutable vertex count plus sorted adjacency lists.
Everything downstream (spectra, walk counts, girth) is index driven, so
there are no vertex labels here; labelling is left to I/O.
"""

from __future__ import annotations

import logging
from bisect import bisect_left
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

import numpy as np

logger = logging.getLogger(__name__)


class GraphError(ValueError):
    """Base class for invalid graph input."""


class OutOfRange(GraphError):
    pass


class SelfLoop(GraphError):
    pass


class ParseError(GraphError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph.

    ``adj[v]`` is the sorted tuple of neighbours of ``v``. Construct through
    :func:`from_edge_list` (or the generators) rather than directly, unless
    the lists are already known to be symmetric and loop free.
    """

    n: int
    adj: tuple[tuple[int, ...], ...]
    duplicates_merged: int = field(default=0, compare=False)

    def __post_init__(self):
        if len(self.adj) != self.n:
            raise GraphError(f"expected {self.n} adjacency lists, got {len(self.adj)}")

    @property
    def degrees(self) -> list[int]:
        return [len(nb) for nb in self.adj]

    @property
    def num_edges(self) -> int:
        return sum(len(nb) for nb in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.adj[u]
        i = bisect_left(nb, v)
        return i < len(nb) and nb[i] == v

    def check_invariants(self) -> None:
        """Raise :class:`GraphError` unless the graph is simple and symmetric."""
        for v, nb in enumerate(self.adj):
            if list(nb) != sorted(set(nb)):
                raise GraphError(f"adjacency list of {v} not sorted/unique")
            for u in nb:
                if not 0 <= u < self.n:
                    raise OutOfRange(f"neighbour {u} of {v} out of range")
                if u == v:
                    raise SelfLoop(f"self-loop at {v}")
                if v not in self.adj[u]:
                    raise GraphError(f"asymmetric edge {v}->{u}")


def from_edge_list(n: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Build a graph from unordered vertex pairs.

    Duplicate edges (in either orientation) are merged and counted in
    ``Graph.duplicates_merged``; self-loops and out-of-range indices raise.
    """
    if n < 0:
        raise GraphError("vertex count must be nonnegative")
    nbrs: list[set[int]] = [set() for _ in range(n)]
    dups = 0
    for e in edges:
        u, v = int(e[0]), int(e[1])
        if not (0 <= u < n and 0 <= v < n):
            raise OutOfRange(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        if v in nbrs[u]:
            dups += 1
            continue
        nbrs[u].add(v)
        nbrs[v].add(u)
    if dups:
        logger.warning("merged %d duplicate edge(s)", dups)
    return Graph(n, tuple(tuple(sorted(s)) for s in nbrs), duplicates_merged=dups)


def regularity(g: Graph) -> Optional[int]:
    """Common degree if ``g`` is regular, else ``None``.

    The empty graph on zero vertices is reported as 0-regular.
    """
    degs = set(g.degrees)
    if not degs:
        return 0
    if len(degs) == 1:
        return degs.pop()
    return None


def adjacency_matrix(g: Graph, dtype=np.int64) -> np.ndarray:
    a = np.zeros((g.n, g.n), dtype=dtype)
    for v, nb in enumerate(g.adj):
        if nb:
            a[v, list(nb)] = 1
    return a


def connected_components(g: Graph) -> tuple[int, list[int]]:
    """Return ``(count, labels)``; labels are assigned in order of first vertex."""
    labels = [-1] * g.n
    count = 0
    for root in range(g.n):
        if labels[root] >= 0:
            continue
        labels[root] = count
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if labels[w] < 0:
                    labels[w] = count
                    queue.append(w)
        count += 1
    return count, labels


@dataclass(frozen=True)
class BipartiteResult:
    bipartite: bool
    coloring: Optional[list[int]] = None
    odd_walk: Optional[list[int]] = None  # closed: first vertex repeated at the end

    def __bool__(self) -> bool:
        return self.bipartite


def is_bipartite(g: Graph) -> BipartiteResult:
    """BFS 2-colouring.

    On failure the witness is a closed walk of odd length, built from the two
    BFS tree paths meeting at the offending edge.
    """
    color = [-1] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if color[root] >= 0:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in g.adj[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    return BipartiteResult(False, odd_walk=_odd_walk(parent, u, w))
    return BipartiteResult(True, coloring=color)


def _odd_walk(parent: list[int], u: int, w: int) -> list[int]:
    def path_to_root(x):
        out = [x]
        while parent[x] >= 0:
            x = parent[x]
            out.append(x)
        return out

    pu, pw = path_to_root(u), path_to_root(w)
    # trim the common ancestry down to the lowest common ancestor
    while len(pu) > 1 and len(pw) > 1 and pu[-2] == pw[-2]:
        pu.pop()
        pw.pop()
    # pu: u .. lca, pw: w .. lca
    return pu + pw[-2::-1] + [u]


def ball(g: Graph, v: int, r: int) -> set[int]:
    """Vertices at distance at most ``r`` from ``v``."""
    if not 0 <= v < g.n:
        raise OutOfRange(f"vertex {v} out of range")
    if r < 0:
        raise ValueError("radius must be nonnegative")
    seen = {v}
    frontier = [v]
    for _ in range(r):
        nxt = []
        for u in frontier:
            for w in g.adj[u]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        if not nxt:
            break
        frontier = nxt
    return seen


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
    """Induced subgraph plus ``index_map`` (new index -> original vertex)."""
    index_map = sorted(set(vertices))
    for v in index_map:
        if not 0 <= v < g.n:
            raise OutOfRange(f"vertex {v} out of range")
    pos = {v: i for i, v in enumerate(index_map)}
    adj = tuple(
        tuple(sorted(pos[w] for w in g.adj[v] if w in pos)) for v in index_map
    )
    return Graph(len(index_map), adj), index_map


def parse_graph(text: str) -> Graph:
    """Parse the edge-list format: header ``n m`` then ``m`` lines ``u v``."""
    header = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected two integers, got {line!r}", lineno)
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"non-integer token in {line!r}", lineno) from None
        if header is None:
            if a < 0 or b < 0:
                raise ParseError("negative header value", lineno)
            header = (a, b)
            continue
        n = header[0]
        if not (0 <= a < n and 0 <= b < n):
            raise ParseError(f"vertex index out of range [0, {n})", lineno)
        if a == b:
            raise ParseError(f"self-loop at vertex {a}", lineno)
        edges.append((a, b))
    if header is None:
        raise ParseError("missing 'n m' header")
    if len(edges) != header[1]:
        raise ParseError(f"header announces {header[1]} edges, found {len(edges)}")
    return from_edge_list(header[0], edges)


def format_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.num_edges}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def read_graph(path) -> Graph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))


def write_graph(g: Graph, path) -> None:
    Path(path).write_text(format_graph(g), encoding="utf-8", newline="\n")
