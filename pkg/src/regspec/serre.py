"""Explicit eigenvalue-count constants for k-regular graphs and their checks.

For ``0 < eps <= 2`` and ``k >= 2`` put ``a = k + (2 - eps) sqrt(k-1)`` and
``b = k + 2 sqrt(k-1)``. ``s0`` is the least ``s >= 1`` with

    b^(2s) / (2 (s+1)^2)  >  2 a^(2s),

``g = 2 s0`` and ``c = a^(2 s0) / ((2k)^(2 s0) - a^(2 s0))``. Every k-regular
graph on ``n`` vertices has more than ``c n`` eigenvalues ``>= (2-eps) sqrt(k-1)``,
and more than ``c n`` eigenvalues ``<= -(2-eps) sqrt(k-1)`` once its odd girth
exceeds ``g``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Optional

import mpmath
import numpy as np

from .cycles_girth import cycle_census, oddgirth
from .generators import FamilySpec, generate, parse_spec
from .graph_core import Graph, regularity
from .spectra import (
    DEFAULT_CTOL,
    Spectrum,
    count_at_least,
    count_at_most,
    graph_spectrum,
    lambda_l,
    mu_l,
)
from .walks import NotRegular

S0_SCAN_CAP = 10**6
# near-ties in the s0 inequality are re-decided at this working precision
_TIE_DPS = 60
_TIE_WINDOW = 1e-9
# eigenvalue slack used when forming traces for certificates
CERT_EIGEN_SLACK = 1e-9


class DomainError(ValueError):
    pass


class ScanCapExceeded(RuntimeError):
    pass


def _check_domain(epsilon: float, k: int) -> None:
    if not (isinstance(k, (int, np.integer)) and k >= 2):
        raise DomainError(f"k must be an integer >= 2, got {k!r}")
    if not (0 < epsilon <= 2) or math.isnan(epsilon):
        raise DomainError(f"epsilon must lie in (0, 2], got {epsilon!r}")


def threshold(epsilon: float, k: int) -> float:
    return (2 - epsilon) * math.sqrt(k - 1)


def s0_gap(s: int, epsilon: float, k: int) -> float:
    """``2s ln(b/a) - ln 4 - 2 ln(s+1)``; positive exactly when ``s`` qualifies."""
    root = math.sqrt(k - 1)
    a = k + (2 - epsilon) * root
    b = k + 2 * root
    return 2 * s * math.log(b / a) - math.log(4) - 2 * math.log(s + 1)


def _s0_holds(s: int, epsilon: float, k: int) -> bool:
    gap = s0_gap(s, epsilon, k)
    if abs(gap) > _TIE_WINDOW:
        return gap > 0
    with mpmath.workdps(_TIE_DPS):
        eps = mpmath.mpf(epsilon)
        root = mpmath.sqrt(k - 1)
        a = k + (2 - eps) * root
        b = k + 2 * root
        precise = 2 * s * mpmath.log(b / a) - mpmath.log(4) - 2 * mpmath.log(s + 1)
        return precise > mpmath.mpf(10) ** (-(_TIE_DPS - 10))


def s0_inequality_holds(s: int, epsilon: float, k: int) -> bool:
    """Whether ``b^(2s) / (2(s+1)^2) > 2 a^(2s)`` (exact ties count as failure)."""
    _check_domain(epsilon, k)
    return _s0_holds(s, epsilon, k)


def compute_s0(epsilon: float, k: int) -> int:
    _check_domain(epsilon, k)
    for s in range(1, S0_SCAN_CAP + 1):
        if _s0_holds(s, epsilon, k):
            return s
    raise ScanCapExceeded(f"no s0 below {S0_SCAN_CAP} for eps={epsilon}, k={k}")


@dataclass(frozen=True)
class SerreConstants:
    epsilon: float
    k: int
    s0: int
    g: int
    c: float
    threshold: float
    log_inv_c: float  # ln(1/c), kept for scale tables where c underflows

    def as_dict(self) -> dict[str, Any]:
        return {
            "epsilon": self.epsilon,
            "k": self.k,
            "s0": self.s0,
            "g": self.g,
            "c": self.c,
            "threshold": self.threshold,
        }


def constants(epsilon: float, k: int) -> SerreConstants:
    s0 = compute_s0(epsilon, k)
    a = k + threshold(epsilon, k)
    x = 2 * s0 * math.log(2 * k / a)
    # c = 1 / ((2k/a)^(2 s0) - 1) = 1 / expm1(x)
    log_inv_c = x + math.log(-math.expm1(-x))
    c = math.exp(-log_inv_c)
    return SerreConstants(float(epsilon), int(k), s0, 2 * s0, c, threshold(epsilon, k), log_inv_c)


@dataclass
class VerificationReport:
    """Outcome of one check on one graph.

    ``verdict`` is ``pass`` exactly when every margin is positive; margins
    named in ``nonstrict`` only need to be nonnegative.
    """

    graph_id: str
    theorem: str  # T1 | T3 | T4_step | walk_bound | certificate
    verdict: str  # pass | fail | hypothesis-not-met
    params: dict[str, Any] = field(default_factory=dict)
    m: Optional[int] = None
    bound: Optional[float] = None
    margins: dict[str, float] = field(default_factory=dict)
    nonstrict: tuple[str, ...] = ()
    witnesses: dict[str, Any] = field(default_factory=dict)

    @staticmethod
    def verdict_from(margins: dict[str, float], nonstrict: Iterable[str] = ()) -> str:
        nonstrict = set(nonstrict)
        ok = all(v >= 0 if name in nonstrict else v > 0 for name, v in margins.items())
        return "pass" if ok else "fail"

    def to_dict(self) -> dict[str, Any]:
        d: dict[str, Any] = {"graph_id": self.graph_id, "theorem": self.theorem}
        d.update(self.params)
        if self.m is not None:
            d["m"] = self.m
        if self.bound is not None:
            d["cn"] = self.bound
        d["verdict"] = self.verdict
        d["margins"] = dict(self.margins)
        if self.witnesses:
            d["witnesses"] = self.witnesses
        return d


def _regular_degree(g: Graph) -> int:
    k = regularity(g)
    if k is None:
        raise NotRegular("graph is not regular")
    if k < 2:
        raise DomainError(f"degree {k} < 2")
    return k


def verify_theorem1(
    g: Graph,
    epsilon: float,
    graph_id: str = "",
    spectrum: Optional[Spectrum] = None,
    ctol: float = DEFAULT_CTOL,
) -> VerificationReport:
    k = _regular_degree(g)
    const = constants(epsilon, k)
    spectrum = spectrum or graph_spectrum(g)
    m = count_at_least(spectrum, const.threshold, ctol)
    cn = const.c * g.n
    margins = {"m_minus_cn": m - cn}
    return VerificationReport(
        graph_id,
        "T1",
        VerificationReport.verdict_from(margins),
        params=const.as_dict() | {"n": g.n},
        m=m,
        bound=cn,
        margins=margins,
    )


def verify_theorem3(
    g: Graph,
    epsilon: float,
    graph_id: str = "",
    spectrum: Optional[Spectrum] = None,
    odd_girth: Optional[float] = None,
    ctol: float = DEFAULT_CTOL,
) -> VerificationReport:
    k = _regular_degree(g)
    const = constants(epsilon, k)
    og = oddgirth(g) if odd_girth is None else odd_girth
    witnesses = {"oddgirth": "inf" if math.isinf(og) else int(og)}
    params = const.as_dict() | {"n": g.n}
    if og <= const.g:
        return VerificationReport(
            graph_id, "T3", "hypothesis-not-met", params=params, witnesses=witnesses
        )
    spectrum = spectrum or graph_spectrum(g)
    m = count_at_most(spectrum, -const.threshold, ctol)
    cn = const.c * g.n
    margins = {"m_minus_cn": m - cn}
    return VerificationReport(
        graph_id,
        "T3",
        VerificationReport.verdict_from(margins),
        params=params,
        m=m,
        bound=cn,
        margins=margins,
        witnesses=witnesses,
    )


@dataclass(frozen=True)
class BoundCertificate:
    l: int
    s_used: int
    kind: str  # lambda_lower | mu_upper
    value: float
    vacuous: bool = False


def _certificate_root(values: np.ndarray, k: int, l: int, s: int, sign: int, slack: float) -> Optional[float]:
    """``((T - l (2k)^(2s)) / (n - l))^(1/(2s))`` with ``T = sum (k + sign*lambda)^(2s)``.

    Every eigenvalue is moved by ``slack`` towards the centre before
    summing, so floating error can only shrink ``T`` and the certificate
    stays on the safe side. Terms are scaled by ``(2k)^(2s)``.
    """
    n = values.size
    base = np.clip((k + sign * values - slack) / (2 * k), 0.0, None)
    scaled = math.fsum((base ** (2 * s)).tolist()) - l
    if scaled <= 0:
        return None
    return 2 * k * (scaled / (n - l)) ** (1 / (2 * s))


def _cert_args(g: Graph, l: int, s: int, spectrum: Optional[Spectrum]):
    k = regularity(g)
    if k is None:
        raise NotRegular("certificates need a regular graph")
    if not 1 <= l < g.n:
        raise ValueError(f"l must satisfy 1 <= l < n (l={l}, n={g.n})")
    if s < 1:
        raise ValueError("s must be >= 1")
    spectrum = spectrum or graph_spectrum(g)
    slack = max(CERT_EIGEN_SLACK, 10 * spectrum.residual_tol)
    return k, spectrum, slack


def mu_certificate(g: Graph, l: int, s: int, spectrum: Optional[Spectrum] = None) -> BoundCertificate:
    """Upper bound on the ``l``-th least eigenvalue from ``Tr((kI - A)^(2s))``.

    The ``l`` smallest eigenvalues contribute at most ``(2k)^(2s)`` each and
    the others at most ``(k - mu_l)^(2s)``. Returns ``+k`` when vacuous.
    """
    k, spectrum, slack = _cert_args(g, l, s, spectrum)
    root = _certificate_root(spectrum.values, k, l, s, -1, slack)
    if root is None:
        return BoundCertificate(l, s, "mu_upper", float(k), vacuous=True)
    return BoundCertificate(l, s, "mu_upper", k - root)


def lambda_certificate(g: Graph, l: int, s: int, spectrum: Optional[Spectrum] = None) -> BoundCertificate:
    """Lower bound on the ``l``-th greatest eigenvalue from ``Tr((kI + A)^(2s))``.

    Returns ``-k`` when vacuous.
    """
    k, spectrum, slack = _cert_args(g, l, s, spectrum)
    root = _certificate_root(spectrum.values, k, l, s, +1, slack)
    if root is None:
        return BoundCertificate(l, s, "lambda_lower", float(-k), vacuous=True)
    return BoundCertificate(l, s, "lambda_lower", root - k)


def default_s_range(k: int, epsilon: float = 1.0) -> range:
    return range(1, max(40, 2 * compute_s0(epsilon, k)) + 1)


def best_certificates(
    g: Graph, l: int, s_values: Iterable[int], spectrum: Optional[Spectrum] = None
) -> tuple[BoundCertificate, BoundCertificate]:
    """Best ``(lambda_lower, mu_upper)`` over the scanned ``s`` values."""
    spectrum = spectrum or graph_spectrum(g)
    lam = [lambda_certificate(g, l, s, spectrum) for s in s_values]
    mu = [mu_certificate(g, l, s, spectrum) for s in s_values]
    return max(lam, key=lambda c: c.value), min(mu, key=lambda c: c.value)


def verify_certificates(
    g: Graph,
    l: int,
    s_values: Iterable[int],
    graph_id: str = "",
    spectrum: Optional[Spectrum] = None,
    ctol: float = 1e-6,
) -> VerificationReport:
    """Soundness of every certificate in the scan against the spectrum."""
    spectrum = spectrum or graph_spectrum(g)
    s_values = list(s_values)
    lam_l, mu_ll = lambda_l(spectrum, l), mu_l(spectrum, l)
    lam = [lambda_certificate(g, l, s, spectrum) for s in s_values]
    mu = [mu_certificate(g, l, s, spectrum) for s in s_values]
    best_lam = max(lam, key=lambda c: c.value)
    best_mu = min(mu, key=lambda c: c.value)
    margins = {
        "lambda_sound": min(lam_l + ctol - c.value for c in lam),
        "mu_sound": min(c.value - (mu_ll - ctol) for c in mu),
    }
    return VerificationReport(
        graph_id,
        "certificate",
        VerificationReport.verdict_from(margins, nonstrict=margins),
        params={"l": l, "s_min": min(s_values), "s_max": max(s_values), "n": g.n},
        margins=margins,
        nonstrict=tuple(margins),
        witnesses={
            "lambda_l": lam_l,
            "mu_l": mu_ll,
            "best_lambda_lower": best_lam.value,
            "best_lambda_s": best_lam.s_used,
            "best_mu_upper": best_mu.value,
            "best_mu_s": best_mu.s_used,
        },
    )


def binomial_split_identity(s: int, k: int, x: int) -> bool:
    """``sum_j C(2s,2j) k^(2j) x^(2s-2j) == ((k+x)^(2s) + (k-x)^(2s)) / 2`` exactly."""
    lhs = sum(math.comb(2 * s, 2 * j) * k ** (2 * j) * x ** (2 * s - 2 * j) for j in range(s + 1))
    return Fraction(lhs) == Fraction((k + x) ** (2 * s) + (k - x) ** (2 * s), 2)


def constant_scale_table(eps_values: Iterable[float], k_values: Iterable[int]) -> list[dict[str, float]]:
    """``log2(1/c)`` beside ``x log x`` with ``x = sqrt(k)/eps``, for trend inspection."""
    rows = []
    for eps in eps_values:
        for k in k_values:
            const = constants(eps, k)
            x = math.sqrt(k) / eps
            scale = x * math.log(x) if x > 1 else float("nan")
            log2_inv_c = const.log_inv_c / math.log(2)
            rows.append(
                {
                    "epsilon": eps,
                    "k": k,
                    "s0": const.s0,
                    "log2_inv_c": log2_inv_c,
                    "x_log_x": scale,
                    "ratio": log2_inv_c / scale if x > 1 else float("nan"),
                }
            )
    return rows


def sequence_diagnostics(
    specs: Iterable[FamilySpec | str],
    epsilon: float,
    l: int,
    r_list: Iterable[int] = (3, 5),
    s_values: Optional[Iterable[int]] = None,
    graphs: Optional[dict[str, Graph]] = None,
) -> list[dict[str, Any]]:
    """One row of spectral and cycle statistics per graph of a size ladder.

    Rows only record values; no limit is asserted. ``graphs`` may supply
    prebuilt graphs keyed by spec string.
    """
    r_list = sorted(set(r_list))
    for r in r_list:
        if r < 3 or r % 2 == 0:
            raise ValueError(f"r_list holds odd cycle lengths >= 3, got {r}")
    rows = []
    for spec in specs:
        spec = parse_spec(spec) if isinstance(spec, str) else spec
        key = str(spec)
        g = graphs[key] if graphs and key in graphs else generate(spec)
        k = _regular_degree(g)
        spectrum = graph_spectrum(g)
        const = constants(epsilon, k)
        og = oddgirth(g)
        census = cycle_census(g, max(r_list)) if r_list else None
        s_scan = list(s_values) if s_values is not None else list(default_s_range(k, epsilon))
        best_lam, best_mu = best_certificates(g, l, s_scan, spectrum)
        row: dict[str, Any] = {
            "graph": key,
            "n": g.n,
            "k": k,
            f"lambda_{l}": lambda_l(spectrum, l),
            f"mu_{l}": mu_l(spectrum, l),
            "oddgirth": "inf" if math.isinf(og) else int(og),
        }
        for r in r_list:
            row[f"c{r}_per_n"] = census[r] / g.n
        row["m_upper_per_n"] = count_at_least(spectrum, const.threshold) / g.n
        row["m_lower_per_n"] = count_at_most(spectrum, -const.threshold) / g.n
        row["lambda_cert"] = best_lam.value
        row["mu_cert"] = best_mu.value
        rows.append(row)
    return rows
