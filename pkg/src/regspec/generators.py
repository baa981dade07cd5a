"""Regular graph families, the pairing-model sampler and two graph transforms.

Random graphs use numpy's ``PCG64`` bit generator seeded directly with the
64-bit seed, so a seed fully determines the output on every platform.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .graph_core import Graph, GraphError, from_edge_list, read_graph

RNG_ALGORITHM = "numpy.random.PCG64"
# acceptance per attempt is about exp(-(k*k-1)/4), ~1/400 at k=5
MAX_PAIRING_ATTEMPTS = 1000

FAMILIES = (
    "cycle",
    "complete",
    "complete_bipartite",
    "hypercube",
    "petersen",
    "random_regular",
    "line_of",
    "double_of",
)

# parameter names per family, in positional order
_PARAM_NAMES = {
    "cycle": ("n",),
    "complete": ("n",),
    "complete_bipartite": ("a", "b"),
    "hypercube": ("d",),
    "petersen": (),
    "random_regular": ("n", "k"),
}


class InvalidParams(GraphError):
    pass


class GenerationFailed(RuntimeError):
    pass


@dataclass(frozen=True)
class FamilySpec:
    """A named construction plus its integer parameters.

    ``source`` is only used by the two transforms: it is either a path to an
    edge-list file or a nested spec string.
    """

    family: str
    params: tuple[int, ...] = ()
    seed: Optional[int] = None
    source: Optional[str] = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise InvalidParams(f"unknown family {self.family!r}")
        if self.family in ("line_of", "double_of"):
            if not self.source:
                raise InvalidParams(f"{self.family} needs a source graph")
            return
        names = _PARAM_NAMES[self.family]
        if len(self.params) != len(names):
            raise InvalidParams(
                f"{self.family} takes {len(names)} parameter(s) {names}, got {self.params}"
            )
        if self.family == "random_regular":
            if self.seed is None or not 0 <= self.seed < 2**64:
                raise InvalidParams("random_regular needs a 64-bit unsigned seed")
        elif self.seed is not None:
            raise InvalidParams(f"{self.family} takes no seed")

    def __str__(self) -> str:
        if self.family in ("line_of", "double_of"):
            return f"{self.family}:{self.source}"
        parts = [f"{k}={v}" for k, v in zip(_PARAM_NAMES[self.family], self.params)]
        if self.seed is not None:
            parts.append(f"seed={self.seed}")
        return self.family + (":" + ",".join(parts) if parts else "")


_KV = re.compile(r"^\s*([a-z_]+)\s*=\s*(-?\d+)\s*$")


def parse_spec(text: str) -> FamilySpec:
    """Parse ``family:key=value,...`` (e.g. ``random_regular:n=100,k=3,seed=7``)."""
    text = text.strip()
    family, _, rest = text.partition(":")
    family = family.strip()
    if family in ("line_of", "double_of"):
        return FamilySpec(family, source=rest.strip())
    if family not in _PARAM_NAMES:
        raise InvalidParams(f"unknown family {family!r}")
    values: dict[str, int] = {}
    if rest.strip():
        for item in rest.split(","):
            m = _KV.match(item)
            if not m:
                raise InvalidParams(f"cannot parse parameter {item!r}")
            values[m.group(1)] = int(m.group(2))
    seed = values.pop("seed", None)
    names = _PARAM_NAMES[family]
    unknown = set(values) - set(names)
    if unknown:
        raise InvalidParams(f"unknown parameter(s) {sorted(unknown)} for {family}")
    missing = [p for p in names if p not in values]
    if missing:
        raise InvalidParams(f"missing parameter(s) {missing} for {family}")
    return FamilySpec(family, tuple(values[p] for p in names), seed)


def generate(spec: FamilySpec | str) -> Graph:
    if isinstance(spec, str):
        spec = parse_spec(spec)
    f, p = spec.family, spec.params
    if f == "cycle":
        return cycle(*p)
    if f == "complete":
        return complete(*p)
    if f == "complete_bipartite":
        return complete_bipartite(*p)
    if f == "hypercube":
        return hypercube(*p)
    if f == "petersen":
        return petersen()
    if f == "random_regular":
        return random_regular(p[0], p[1], spec.seed)
    base = _load_source(spec.source)
    return line_graph(base) if f == "line_of" else bipartite_double(base)


def _load_source(source: str) -> Graph:
    path = Path(source)
    if path.is_file():
        return read_graph(path)
    try:
        return generate(parse_spec(source))
    except InvalidParams:
        raise InvalidParams(f"source {source!r} is neither a file nor a family spec") from None


def cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidParams("cycle needs n >= 3")
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    if n < 2:
        raise InvalidParams("complete needs n >= 2")
    return from_edge_list(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b}; only regular when ``a == b``, which is all the corpus uses."""
    if a < 1 or b < 1:
        raise InvalidParams("complete_bipartite needs a, b >= 1")
    if a != b:
        raise InvalidParams("complete_bipartite must have a == b to be regular")
    return from_edge_list(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def hypercube(d: int) -> Graph:
    if d < 1:
        raise InvalidParams("hypercube needs d >= 1")
    n = 1 << d
    return from_edge_list(n, [(v, v ^ (1 << i)) for v in range(n) for i in range(d) if v < v ^ (1 << i)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_list(10, outer + spokes + inner)


def random_regular(n: int, k: int, seed: int, max_attempts: int = MAX_PAIRING_ATTEMPTS) -> Graph:
    """Uniform pairing of ``n*k`` half-edges, resampled until simple.

    Each attempt is a full fresh permutation; after ``max_attempts``
    rejections :class:`GenerationFailed` is raised. Raising the cap never
    changes the graph for a seed that already succeeds.
    """
    if (n * k) % 2:
        raise InvalidParams(f"n*k must be even (n={n}, k={k})")
    if k < 0 or n < k + 1:
        raise InvalidParams(f"random_regular needs n >= k+1 (n={n}, k={k})")
    if seed is None or not 0 <= seed < 2**64:
        raise InvalidParams("seed must be a 64-bit unsigned integer")
    rng = np.random.Generator(np.random.PCG64(seed))
    points = np.repeat(np.arange(n, dtype=np.int64), k)
    if max_attempts < 1:
        raise InvalidParams("max_attempts must be >= 1")
    for _ in range(max_attempts):
        pairs = rng.permutation(points).reshape(-1, 2)
        u, v = pairs[:, 0], pairs[:, 1]
        if np.any(u == v):
            continue
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        keys = lo * n + hi
        if np.unique(keys).size != keys.size:
            continue
        return from_edge_list(n, zip(lo.tolist(), hi.tolist()))
    raise GenerationFailed(
        f"no simple pairing for n={n}, k={k}, seed={seed} in {max_attempts} attempts"
    )


def line_graph(g: Graph) -> Graph:
    """Vertices are the edges of ``g`` in lexicographic ``(min, max)`` order."""
    edges = g.edges()
    index = {e: i for i, e in enumerate(edges)}
    out = []
    for v in range(g.n):
        incident = [index[(min(v, w), max(v, w))] for w in g.adj[v]]
        out.extend(itertools.combinations(incident, 2))
    return from_edge_list(len(edges), out)


def bipartite_double(g: Graph) -> Graph:
    """Tensor product with K2: vertex ``(v, side)`` has index ``v + side*n``."""
    n = g.n
    return from_edge_list(2 * n, [(u, v + n) for u in range(n) for v in g.adj[u]])
