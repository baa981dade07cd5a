"""Adjacency spectra and eigenvalue order statistics.

Eigenvalues come from LAPACK's symmetric driver (``numpy.linalg.eigh``).
The eigenvectors are used once, to measure the achieved residual
``max ||A v - lambda v||``, and then dropped.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .graph_core import Graph, adjacency_matrix, connected_components, regularity

DEFAULT_TOL = 1e-10
DEFAULT_CTOL = 1e-8


class ConvergenceFailure(ArithmeticError):
    pass


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues in non-increasing order, with multiplicity."""

    values: np.ndarray
    residual_tol: float
    n: int = field(init=False)

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "n", int(vals.size))

    def to_json(self) -> str:
        return json.dumps(
            {"n": self.n, "values": [float(x) for x in self.values], "tol": self.residual_tol}
        )

    @classmethod
    def from_json(cls, text: str) -> "Spectrum":
        d = json.loads(text)
        return cls(np.array(d["values"], dtype=float), float(d["tol"]))


def eigenvalues(a: np.ndarray, tol: float = DEFAULT_TOL) -> Spectrum:
    """Spectrum of a symmetric 0/1 matrix.

    Raises :class:`ConvergenceFailure` if LAPACK fails or if the achieved
    residual exceeds ``tol * n * max_degree``.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = np.asarray(a, dtype=float)
    n = a.shape[0]
    if n == 0:
        return Spectrum(np.zeros(0), 0.0)
    if not np.array_equal(a, a.T):
        raise ValueError("matrix is not symmetric")
    try:
        w, v = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceFailure(str(exc)) from exc
    resid = float(np.max(np.linalg.norm(a @ v - v * w, axis=0)))
    max_degree = float(a.sum(axis=1).max())
    if resid > tol * n * max(max_degree, 1.0):
        raise ConvergenceFailure(f"residual {resid:.3e} exceeds contract")
    return Spectrum(w[::-1].copy(), resid)


def graph_spectrum(g: Graph, tol: float = DEFAULT_TOL) -> Spectrum:
    return eigenvalues(adjacency_matrix(g, dtype=float), tol)


def lambda_l(s: Spectrum, l: int) -> float:
    """The ``l``-th greatest eigenvalue (1-based)."""
    if not 1 <= l <= s.n:
        raise IndexError(f"l={l} outside [1, {s.n}]")
    return float(s.values[l - 1])


def mu_l(s: Spectrum, l: int) -> float:
    """The ``l``-th least eigenvalue (1-based)."""
    if not 1 <= l <= s.n:
        raise IndexError(f"l={l} outside [1, {s.n}]")
    return float(s.values[s.n - l])


def count_at_least(s: Spectrum, t: float, ctol: float = DEFAULT_CTOL) -> int:
    if ctol < 0:
        raise ValueError("ctol must be nonnegative")
    return int(np.count_nonzero(s.values >= t - ctol))


def count_at_most(s: Spectrum, t: float, ctol: float = DEFAULT_CTOL) -> int:
    if ctol < 0:
        raise ValueError("ctol must be nonnegative")
    return int(np.count_nonzero(s.values <= t + ctol))


@dataclass
class MomentReport:
    passed: bool
    sums: dict[str, float]
    expected: dict[str, float]
    margins: dict[str, float]
    k_multiplicity: Optional[int] = None
    components: Optional[int] = None


def moment_check(s: Spectrum, g: Graph, rtol: float = 1e-8) -> MomentReport:
    """Compare the first three power sums with edge and triangle counts.

    The allowed error for each power sum is ``rtol * max(1, sum |lambda|^r)``.
    For regular graphs the multiplicity of ``k`` must equal the number of
    components (counted with ``DEFAULT_CTOL``).
    """
    from .cycles_girth import triangle_count

    vals = s.values
    sums = {f"p{r}": float(np.sum(vals**r)) for r in (1, 2, 3)}
    expected = {"p1": 0.0, "p2": 2.0 * g.num_edges, "p3": 6.0 * triangle_count(g)}
    margins = {}
    ok = True
    for r in (1, 2, 3):
        key = f"p{r}"
        allowed = rtol * max(1.0, float(np.sum(np.abs(vals) ** r)))
        err = abs(sums[key] - expected[key])
        margins[key] = allowed - err
        ok &= err <= allowed
    k = regularity(g)
    mult = comps = None
    if k is not None and g.n:
        comps, _ = connected_components(g)
        mult = int(np.count_nonzero(np.abs(vals - k) <= DEFAULT_CTOL))
        margins["k_multiplicity"] = float(-abs(mult - comps))
        ok &= mult == comps
    return MomentReport(bool(ok), sums, expected, margins, mult, comps)
