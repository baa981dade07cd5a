"""Exact closed-walk counts and the tree-walk lower bounds.

All counts are exact Python integers. Entries of ``A^r`` are at most
``maxdeg^r``, so matrix powers run in ``float64`` (BLAS, exact for
nonnegative integers below 2**53), then ``int64``, then object arrays of
Python ints as that bound grows.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Optional

import numpy as np

from .graph_core import Graph, OutOfRange, adjacency_matrix, regularity

MAX_MATRIX_N = 512
MAX_R = 64
ORACLE_MAX_N = 16
ORACLE_MAX_R = 10
# explicit enumeration keeps every partial walk in memory
ORACLE_MAX_FRONTIER = 60_000_000

_FLOAT64_EXACT = 2**53
_INT64_SAFE = 2**62


class ResourceLimit(RuntimeError):
    pass


class OracleCapExceeded(ResourceLimit):
    pass


class NotRegular(ValueError):
    pass


@dataclass(frozen=True)
class WalkTable:
    r_max: int
    phi: tuple[int, ...]
    diag: tuple[tuple[int, ...], ...]  # diag[v][r] = (A^r)_{vv}

    def to_json(self) -> str:
        return json.dumps({"r_max": self.r_max, "phi": [str(x) for x in self.phi]})

    @staticmethod
    def phi_from_json(text: str) -> list[int]:
        return [int(x) for x in json.loads(text)["phi"]]


def _check_caps(n: int, r: int, override: bool) -> None:
    if override:
        return
    if n > MAX_MATRIX_N or r > MAX_R:
        raise ResourceLimit(
            f"exact walk counts refused for n={n}, r={r} "
            f"(caps n<={MAX_MATRIX_N}, r<={MAX_R}; pass override=True)"
        )


def walk_table(g: Graph, r_max: int, override: bool = False) -> WalkTable:
    """Exact ``Phi_r = Tr(A^r)`` and per-vertex diagonals for ``r <= r_max``."""
    if r_max < 0:
        raise ValueError("r_max must be nonnegative")
    _check_caps(g.n, r_max, override)
    n = g.n
    maxdeg = max(g.degrees, default=0)
    a = adjacency_matrix(g, dtype=np.float64)
    power = np.eye(n, dtype=np.float64)
    diags = [np.ones(n, dtype=object)]
    for r in range(1, r_max + 1):
        bound = maxdeg**r
        if power.dtype == np.float64 and bound >= _FLOAT64_EXACT:
            power = power.astype(np.int64)
            a = a.astype(np.int64)
        if power.dtype == np.int64 and bound >= _INT64_SAFE:
            power = power.astype(object)
            a = a.astype(object)
        power = power @ a
        diags.append(np.array([int(x) for x in np.diagonal(power)], dtype=object))
    phi = tuple(int(sum(d)) for d in diags)
    diag = tuple(tuple(int(diags[r][v]) for r in range(r_max + 1)) for v in range(n))
    return WalkTable(r_max, phi, diag)


def closed_walks_from(g: Graph, v: int, r: int, override: bool = False) -> int:
    """``(A^r)_{vv}`` by propagating an exact count vector along edges."""
    if not 0 <= v < g.n:
        raise OutOfRange(f"vertex {v} out of range")
    if r < 0:
        raise ValueError("r must be nonnegative")
    _check_caps(g.n, r, override)
    counts = {v: 1}
    for _ in range(r):
        nxt: dict[int, int] = {}
        for u, c in counts.items():
            for w in g.adj[u]:
                nxt[w] = nxt.get(w, 0) + c
        counts = nxt
    return counts.get(v, 0)


def enumerate_walks_oracle(g: Graph, v: int, r: int) -> int:
    """Brute-force count of closed walks of length ``r`` at ``v``.

    Every walk ``v = w0, w1, ..., w_{r-1}`` is materialised as one entry of
    an array of current endpoints; a closed walk is one whose last vertex is
    adjacent to ``v`` (for ``r >= 1``). No matrix arithmetic is involved.
    """
    if g.n > ORACLE_MAX_N or r > ORACLE_MAX_R:
        raise OracleCapExceeded(f"oracle limited to n<={ORACLE_MAX_N}, r<={ORACLE_MAX_R}")
    if not 0 <= v < g.n:
        raise OutOfRange(f"vertex {v} out of range")
    if r == 0:
        return 1
    nbr_lists = [np.array(nb, dtype=np.int16) for nb in g.adj]
    degrees = np.array(g.degrees, dtype=np.int64)
    ends = np.array([v], dtype=np.int16)
    for _ in range(r - 1):
        if int(degrees[ends].sum()) > ORACLE_MAX_FRONTIER:
            raise OracleCapExceeded("walk frontier too large for explicit enumeration")
        ends = _expand(ends, nbr_lists, g.n)
    closes = np.zeros(g.n, dtype=bool)
    closes[list(g.adj[v])] = True
    return int(np.count_nonzero(closes[ends]))


def _expand(ends: np.ndarray, nbr_lists: list[np.ndarray], n: int) -> np.ndarray:
    # walk order is irrelevant to the count, so group walks by endpoint
    counts = np.bincount(ends, minlength=n)
    parts = [np.tile(nbr_lists[u], counts[u]) for u in range(n) if counts[u]]
    return np.concatenate(parts) if parts else np.empty(0, dtype=np.int16)


@lru_cache(maxsize=None)
def catalan(s: int) -> int:
    if s < 0:
        raise ValueError("s must be nonnegative")
    return math.comb(2 * s, s) // (s + 1)


def tree_walk_lower_bound(s: int, k: int) -> int:
    """``C_s * k * (k-1)^(s-1)``: the per-vertex bound on closed ``2s``-walks."""
    if s < 1 or k < 1:
        raise ValueError("need s >= 1 and k >= 1")
    return catalan(s) * k * (k - 1) ** (s - 1)


@lru_cache(maxsize=None)
def tree_walks_exact(s: int, k: int) -> int:
    """Closed ``2s``-walks at the root of the infinite ``k``-regular tree.

    Dynamic programme over the distance from the root: stepping out has ``k``
    choices at the root and ``k-1`` elsewhere, stepping back has one.
    """
    if s < 0 or k < 1:
        raise ValueError("need s >= 0 and k >= 1")
    steps = 2 * s
    ways = [1] + [0] * steps  # ways[d] after i steps
    for _ in range(steps):
        nxt = [0] * (steps + 1)
        for d, w in enumerate(ways):
            if not w:
                continue
            if d + 1 <= steps:
                nxt[d + 1] += w * (k if d == 0 else k - 1)
            if d > 0:
                nxt[d - 1] += w
        ways = nxt
    return ways[0]


@dataclass
class TraceBoundReport:
    s: int
    k: int
    n: int
    phi: int
    exact: bool  # False when phi came from the floating spectrum fallback
    lemma_bound: int
    aggregate_bound: Fraction
    margins: dict[str, float]
    passed: bool


def check_trace_bound(
    g: Graph,
    s: int,
    spectrum=None,
    override: bool = False,
    table: Optional[WalkTable] = None,
) -> TraceBoundReport:
    """Check ``Phi_2s >= n C_s k (k-1)^(s-1)`` and ``Phi_2s > n (2 sqrt(k-1))^(2s) / (s+1)^2``.

    Also checks ``C(2s, s) (s+1) >= 4^s``. ``Phi_2s`` is exact when the graph
    is within the walk caps; otherwise it is the power sum of ``spectrum``
    (which must then be supplied) and the report is marked inexact.
    """
    k = regularity(g)
    if k is None:
        raise NotRegular("trace bound needs a regular graph")
    if s < 1:
        raise ValueError("s must be >= 1")
    n = g.n
    try:
        if table is None or table.r_max < 2 * s:
            table = walk_table(g, 2 * s, override=override)
        phi = table.phi[2 * s]
        exact = True
    except ResourceLimit:
        if spectrum is None:
            raise
        phi = float(np.sum(np.asarray(spectrum.values, dtype=np.longdouble) ** (2 * s)))
        exact = False
    lemma = n * tree_walk_lower_bound(s, k)
    # (2 sqrt(k-1))^(2s) = 4^s (k-1)^s is an integer
    aggregate = Fraction(n * 4**s * (k - 1) ** s, (s + 1) ** 2)
    binom_margin = math.comb(2 * s, s) * (s + 1) - 4**s
    margins = {
        "lemma": float(phi - lemma),
        "aggregate": float(Fraction(phi) - aggregate) if exact else float(phi - float(aggregate)),
        "binomial": float(binom_margin),
    }
    if exact:
        passed = phi >= lemma and Fraction(phi) > aggregate and binom_margin >= 0
    else:
        passed = margins["lemma"] >= 0 and margins["aggregate"] > 0 and binom_margin >= 0
    return TraceBoundReport(s, k, n, phi, exact, lemma, aggregate, margins, bool(passed))


def binomial_bound_holds(s: int) -> bool:
    """``C(2s, s) >= 4^s / (s+1)`` in exact integer form."""
    return math.comb(2 * s, s) * (s + 1) >= 4**s


@dataclass
class LemmaChainReport:
    k: int
    s_max: int
    violations: list[tuple[int, int, str]]  # (vertex, s, which inequality)
    min_graph_margin: int  # min over v, s of (A^2s)_vv - tree_walks_exact(s, k)
    min_tree_margin: int  # min over s of tree_walks_exact - tree_walk_lower_bound

    @property
    def passed(self) -> bool:
        return not self.violations


def lemma_chain(g: Graph, s_max: int, table: Optional[WalkTable] = None) -> LemmaChainReport:
    """Per-vertex ``(A^2s)_vv >= tree_walks_exact(s,k) >= C_s k (k-1)^(s-1)`` for ``1 <= s <= s_max``."""
    k = regularity(g)
    if k is None:
        raise NotRegular("lemma chain needs a regular graph")
    table = table or walk_table(g, 2 * s_max)
    violations = []
    graph_margin = tree_margin = None
    for s in range(1, s_max + 1):
        tree = tree_walks_exact(s, k)
        lower = tree_walk_lower_bound(s, k)
        if tree < lower:
            violations.append((-1, s, "tree<lower"))
        tree_margin = tree - lower if tree_margin is None else min(tree_margin, tree - lower)
        for v in range(g.n):
            d = table.diag[v][2 * s] - tree
            if d < 0:
                violations.append((v, s, "walks<tree"))
            graph_margin = d if graph_margin is None else min(graph_margin, d)
    return LemmaChainReport(k, s_max, violations, graph_margin or 0, tree_margin or 0)
