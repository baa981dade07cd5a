"""Girth, odd girth, cycle census and bipartite-ball surveys.

The last two operations check the proof steps about odd cycles: closed odd
walks vanish at vertices whose radius-``r`` ball is bipartite, and the
vertices whose ball is not bipartite are controlled by short odd cycles.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .graph_core import Graph, ball, induced_subgraph, is_bipartite, regularity
from .walks import NotRegular, walk_table

INF = math.inf
DEFAULT_CENSUS_CAP = 11


class CensusCapExceeded(ValueError):
    pass


def _bfs(g: Graph, root: int) -> tuple[list[int], list[int]]:
    dist = [-1] * g.n
    parent = [-1] * g.n
    dist[root] = 0
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if dist[w] < 0:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
    return dist, parent


def girth(g: Graph) -> float:
    """Length of a shortest cycle (``math.inf`` for forests).

    From every root, a non-tree edge ``uw`` closes a closed walk of length
    ``dist(u) + dist(w) + 1`` through the root; the minimum over all roots
    is attained by a cycle through its own vertices.
    """
    best = INF
    for root in range(g.n):
        if best == 3:
            break
        dist, parent = _bfs(g, root)
        for u in range(g.n):
            if dist[u] < 0:
                continue
            for w in g.adj[u]:
                if u < w and parent[w] != u and parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def oddgirth(g: Graph) -> float:
    """Length of a shortest odd cycle (``math.inf`` iff bipartite).

    An edge joining two vertices at equal BFS depth closes an odd closed walk
    of length ``2 dist + 1``; a shortest odd closed walk is always a cycle.
    """
    if is_bipartite(g):
        return INF
    best = INF
    for root in range(g.n):
        if best == 3:
            break
        dist, _ = _bfs(g, root)
        for u in range(g.n):
            du = dist[u]
            if du < 0 or 2 * du + 1 >= best:
                continue
            for w in g.adj[u]:
                if dist[w] == du:
                    best = 2 * du + 1
                    break
    return best


def triangle_count(g: Graph) -> int:
    adj = [set(nb) for nb in g.adj]
    count = 0
    for u in range(g.n):
        for v in g.adj[u]:
            if v > u:
                count += sum(1 for w in adj[u] & adj[v] if w > v)
    return count


@dataclass(frozen=True)
class CycleCensus:
    r_max: int
    counts: tuple[int, ...]  # counts[r] = number of r-cycles

    def __getitem__(self, r: int) -> int:
        return self.counts[r]


def cycle_census(g: Graph, r_max: int, cap: int = DEFAULT_CENSUS_CAP) -> CycleCensus:
    """Count cycles of each length up to ``r_max`` by canonical DFS.

    A cycle is enumerated only from its smallest vertex, and only in the
    direction where the second vertex is smaller than the last one, so each
    cycle subgraph is seen exactly once.
    """
    if r_max > cap:
        raise CensusCapExceeded(f"r_max={r_max} exceeds census cap {cap}")
    counts = [0] * (max(r_max, 0) + 1)
    if r_max < 3:
        return CycleCensus(r_max, tuple(counts))
    adj = g.adj
    on_path = [False] * g.n

    for start in range(g.n):
        on_path[start] = True
        # iterative DFS: stack of (vertex, neighbour iterator, path length)
        for second in adj[start]:
            if second <= start:
                continue
            on_path[second] = True
            stack = [(second, iter(adj[second]))]
            while stack:
                u, it = stack[-1]
                depth = len(stack) + 1  # vertices on the path
                advanced = False
                for w in it:
                    if w == start:
                        if depth >= 3 and u > second:
                            counts[depth] += 1
                        continue
                    if w < start or on_path[w] or depth >= r_max:
                        continue
                    on_path[w] = True
                    stack.append((w, iter(adj[w])))
                    advanced = True
                    break
                if not advanced:
                    stack.pop()
                    on_path[u] = False
        on_path[start] = False
    return CycleCensus(r_max, tuple(counts))


@dataclass(frozen=True)
class BallSurvey:
    r: int
    bipartite_vertices: frozenset[int]

    @property
    def n_count(self) -> int:
        return len(self.bipartite_vertices)


def ball_survey(g: Graph, r: int) -> BallSurvey:
    """Vertices whose radius-``r`` ball induces a bipartite subgraph."""
    if r < 1:
        raise ValueError("radius must be >= 1")
    keep = set()
    for v in range(g.n):
        sub, _ = induced_subgraph(g, ball(g, v, r))
        if is_bipartite(sub):
            keep.add(v)
    return BallSurvey(r, frozenset(keep))


@dataclass
class OddTraceReport:
    r: int
    k: int
    n: int
    n_bipartite: int
    phi_odd: int
    theta: float
    nonzero_on_bipartite: list[int] = field(default_factory=list)
    passed: bool = True

    @property
    def margins(self) -> dict[str, float]:
        return {
            "vanishing": float(-len(self.nonzero_on_bipartite)),
            "theta_lower": float(self.theta),
            "theta_upper": float(self.k ** (2 * self.r + 1) - self.theta),
        }


def verify_odd_trace_vanishing(
    g: Graph, r: int, survey: Optional[BallSurvey] = None, override: bool = False
) -> OddTraceReport:
    """Check ``(A^(2r+1))_vv = 0`` on bipartite-ball vertices and bound ``theta``.

    ``theta = Phi_(2r+1) / (n - n_bip)`` is the average odd-walk count over
    the remaining vertices; it is 0 by convention when every ball is
    bipartite.
    """
    k = regularity(g)
    if k is None:
        raise NotRegular("odd-trace check needs a regular graph")
    survey = survey or ball_survey(g, r)
    table = walk_table(g, 2 * r + 1, override=override)
    length = 2 * r + 1
    bad = sorted(v for v in survey.bipartite_vertices if table.diag[v][length] != 0)
    phi = table.phi[length]
    rest = g.n - survey.n_count
    theta = phi / rest if rest else 0.0
    ok = not bad and 0 <= theta <= k**length and (rest > 0 or phi == 0)
    return OddTraceReport(r, k, g.n, survey.n_count, phi, theta, bad, ok)


@dataclass
class AlphaReport:
    """Both readings of the odd-cycle covering inequality.

    ``literal`` sums odd cycles of length 3..2r-1, ``extended`` of length
    3..2r+1. A failing literal form is a recorded finding, not an error.
    """

    r: int
    k: int
    lhs: int
    rhs_literal: int
    rhs_extended: int
    census: tuple[int, ...]

    @property
    def literal_pass(self) -> bool:
        return self.lhs <= self.rhs_literal

    @property
    def extended_pass(self) -> bool:
        return self.lhs <= self.rhs_extended

    @property
    def margins(self) -> dict[str, float]:
        return {
            "literal": float(self.rhs_literal - self.lhs),
            "extended": float(self.rhs_extended - self.lhs),
        }


def alpha_bound(l: int, r: int, k: int) -> int:
    """Upper bound ``3 (2l+1) (k-1)^r`` on the vertices near one ``(2l+1)``-cycle."""
    return 3 * (2 * l + 1) * (k - 1) ** r


def verify_alpha_inequality(
    g: Graph, r: int, survey: Optional[BallSurvey] = None, cap: int = DEFAULT_CENSUS_CAP
) -> AlphaReport:
    k = regularity(g)
    if k is None:
        raise NotRegular("alpha inequality needs a regular graph")
    if r < 1:
        raise ValueError("r must be >= 1")
    survey = survey or ball_survey(g, r)
    census = cycle_census(g, 2 * r + 1, cap=cap)
    lhs = g.n - survey.n_count
    literal = sum(alpha_bound(l, r, k) * census[2 * l + 1] for l in range(1, r))
    extended = literal + alpha_bound(r, r, k) * census[2 * r + 1]
    return AlphaReport(r, k, lhs, literal, extended, census.counts)
