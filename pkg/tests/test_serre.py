import math

import mpmath
import numpy as np
import pytest

from regspec.generators import (
    bipartite_double,
    complete,
    cycle,
    hypercube,
    line_graph,
    petersen,
    random_regular,
)
from regspec.graph_core import from_edge_list
from regspec.serre import (
    DomainError,
    VerificationReport,
    binomial_split_identity,
    best_certificates,
    compute_s0,
    constant_scale_table,
    constants,
    default_s_range,
    lambda_certificate,
    mu_certificate,
    s0_inequality_holds,
    sequence_diagnostics,
    verify_certificates,
    verify_theorem1,
    verify_theorem3,
)
from regspec.spectra import graph_spectrum, lambda_l, mu_l
from regspec.walks import NotRegular


def s0_oracle(eps, k, dps=80):
    """Scan the defining inequality in its original (non-log) form."""
    with mpmath.workdps(dps):
        eps = mpmath.mpf(eps)
        a = k + (2 - eps) * mpmath.sqrt(k - 1)
        b = k + 2 * mpmath.sqrt(k - 1)
        s = 1
        while True:
            lhs = b ** (2 * s) / (2 * (s + 1) ** 2)
            rhs = 2 * a ** (2 * s)
            if lhs - rhs > mpmath.mpf(10) ** (-(dps - 20)) * rhs:
                return s
            s += 1


def c_oracle(eps, k, s0, dps=50):
    with mpmath.workdps(dps):
        a = k + (2 - mpmath.mpf(eps)) * mpmath.sqrt(k - 1)
        return 1 / ((2 * k / a) ** (2 * s0) - 1)


def test_s0_example():
    assert compute_s0(1, 3) == 12
    assert s0_inequality_holds(12, 1, 3)
    assert not s0_inequality_holds(11, 1, 3)


def test_s0_exact_tie_is_not_strict():
    # b = 4, a = 2: at s = 3 both sides equal 64 (in ratio form)
    assert not s0_inequality_holds(3, 2, 2)
    assert compute_s0(2, 2) == 4


@pytest.mark.parametrize("eps", [0.25, 0.5, 1.0, 1.5, 2.0])
@pytest.mark.parametrize("k", [2, 3, 4, 5, 8])
def test_s0_matches_oracle_and_is_minimal(eps, k):
    s0 = compute_s0(eps, k)
    assert s0 == s0_oracle(eps, k)
    if s0 > 1:
        assert not s0_inequality_holds(s0 - 1, eps, k)
    for extra in (1, 2, 5, 17, 100):
        assert s0_inequality_holds(s0 + extra, eps, k)


def test_domain_errors():
    for eps, k in ((0, 3), (-1, 3), (2.5, 3), (1, 1), (float("nan"), 3)):
        with pytest.raises(DomainError):
            compute_s0(eps, k)


def test_constants_example():
    const = constants(1, 3)
    assert const.s0 == 12 and const.g == 24
    oracle = c_oracle(1, 3, 12)
    assert abs(const.c - float(oracle)) <= 1e-9 * float(oracle)
    assert const.c == pytest.approx(6.3e-4, rel=0.01)


@pytest.mark.parametrize("k", [2, 3, 7])
def test_constants_at_eps_two(k):
    const = constants(2, k)
    assert const.threshold == 0
    assert const.c == pytest.approx(1 / (2 ** (2 * const.s0) - 1), rel=1e-12)


def test_c_monotone_spot():
    assert constants(1.5, 3).c > constants(1, 3).c


@pytest.mark.parametrize("eps", [0.25, 0.5, 1.0, 2.0])
@pytest.mark.parametrize("k", [2, 3, 6, 10])
def test_constants_invariants(eps, k):
    const = constants(eps, k)
    assert const.g == 2 * const.s0
    assert 0 < const.c < 1
    oracle = c_oracle(eps, k, const.s0)
    assert abs(const.c - float(oracle)) <= 1e-9 * float(oracle)


def test_theorem1_examples(pet, k4):
    rep = verify_theorem1(pet, 1)
    assert rep.m == 1 and rep.verdict == "pass"
    assert rep.bound == pytest.approx(10 * constants(1, 3).c)
    rep = verify_theorem1(cycle(100), 1)
    assert rep.m == 33 and rep.verdict == "pass"
    rep = verify_theorem1(k4, 0.5)
    assert rep.m == 1 and rep.verdict == "pass"


def test_cycle100_count_is_analytic():
    # 2 cos(2 pi j / 100) >= 1 iff |j| <= 16
    vals = [2 * math.cos(2 * math.pi * j / 100) for j in range(100)]
    assert sum(v >= 1 for v in vals) == 33


def test_theorem3_examples(q3):
    rep = verify_theorem3(q3, 1)
    assert rep.m == 1 and rep.verdict == "pass" and rep.witnesses["oddgirth"] == "inf"
    rep = verify_theorem3(line_graph(petersen()), 0.5)
    assert rep.verdict == "hypothesis-not-met" and rep.witnesses["oddgirth"] == 3
    rep = verify_theorem3(bipartite_double(random_regular(50, 3, 1)), 1)
    assert rep.verdict == "pass"


def test_theorem3_odd_cycle_long_enough():
    g = cycle(1001)
    const = constants(1, 2)
    assert 1001 > const.g
    assert verify_theorem3(g, 1).verdict == "pass"


def test_theorem_checks_need_regular_graph():
    path = from_edge_list(3, [(0, 1), (1, 2)])
    with pytest.raises(NotRegular):
        verify_theorem1(path, 1)
    with pytest.raises(DomainError):
        verify_theorem1(petersen(), 0)


def test_report_json_shape(pet):
    d = verify_theorem1(pet, 1, graph_id="petersen").to_dict()
    for key in ("graph_id", "theorem", "epsilon", "k", "s0", "g", "c", "m", "cn", "verdict", "margins"):
        assert key in d
    assert d["theorem"] == "T1" and d["graph_id"] == "petersen"


def test_verdict_rule():
    assert VerificationReport.verdict_from({"a": 1.0, "b": 0.5}) == "pass"
    assert VerificationReport.verdict_from({"a": 1.0, "b": 0.0}) == "fail"
    assert VerificationReport.verdict_from({"a": 0.0}, nonstrict=["a"]) == "pass"


def test_certificate_vacuous_branch():
    g = complete(3)
    cert = mu_certificate(g, 2, 40)
    assert cert.vacuous and cert.value == 2.0
    cert = lambda_certificate(g, 2, 40)
    assert cert.vacuous and cert.value == -2.0


def test_certificate_first_eigenvalue(pet):
    cert = lambda_certificate(pet, 1, 1)
    assert cert.value <= 3 + 1e-9


def test_certificate_on_bipartite():
    g = bipartite_double(random_regular(40, 3, 2))
    sp = graph_spectrum(g)
    for s in range(1, 21):
        cert = mu_certificate(g, 1, s, sp)
        assert cert.value >= mu_l(sp, 1) - 1e-6


def test_certificate_cycle1000():
    g = cycle(1000)
    sp = graph_spectrum(g)
    lam2 = 2 * math.cos(2 * math.pi / 1000)
    assert lambda_l(sp, 2) == pytest.approx(lam2, abs=1e-9)
    best, _ = best_certificates(g, 2, range(1, 41), sp)
    assert best.value <= lam2 + 1e-6


def test_certificate_random_500():
    g = random_regular(500, 3, 1)
    sp = graph_spectrum(g)
    lam, mu = best_certificates(g, 1, range(1, 31), sp)
    assert mu.value >= mu_l(sp, 1) - 1e-6
    lam2, _ = best_certificates(g, 2, range(1, 41), sp)
    assert lam2.value <= lambda_l(sp, 2) + 1e-6
    assert lam2.value > 0  # recorded: non-vacuous at this size


def test_certificate_cancellation_is_safe():
    # (k + lambda_2) / 2k is tiny for K_12; naive subtraction at large s is noise
    g = complete(12)
    sp = graph_spectrum(g)
    for s in range(1, 41):
        assert lambda_certificate(g, 2, s, sp).value <= lambda_l(sp, 2) + 1e-6
        assert mu_certificate(g, 2, s, sp).value >= mu_l(sp, 2) - 1e-6


def test_verify_certificates_report(pet):
    rep = verify_certificates(pet, 2, range(1, 41))
    assert rep.verdict == "pass" and rep.theorem == "certificate"


def test_default_s_range():
    assert list(default_s_range(3)) == list(range(1, 41))
    assert max(default_s_range(3, 0.25)) == 2 * compute_s0(0.25, 3)


def test_binomial_split_identity():
    for s in range(0, 13):
        for k in range(1, 7):
            for x in (1, 2, 3):
                assert binomial_split_identity(s, k, x)


def test_constant_scale_table():
    rows = constant_scale_table([0.25, 0.5, 1.0], range(3, 11))
    assert len(rows) == 24
    for row in rows:
        assert row["log2_inv_c"] > 0 and row["x_log_x"] > 0
    # smaller eps needs a larger s0 and gives a smaller constant
    by = {(r["epsilon"], r["k"]): r for r in rows}
    for k in range(3, 11):
        assert by[(0.25, k)]["log2_inv_c"] > by[(0.5, k)]["log2_inv_c"] > by[(1.0, k)]["log2_inv_c"]


def test_sequence_diagnostics_cycles():
    rows = sequence_diagnostics(["cycle:n=11", "cycle:n=101", "cycle:n=1001"], 1.0, 2, (3, 5), range(1, 11))
    lam = [r["lambda_2"] for r in rows]
    assert lam == sorted(lam)
    for row, n in zip(rows, (11, 101, 1001)):
        assert row["lambda_2"] == pytest.approx(2 * math.cos(2 * math.pi / n), abs=1e-9)


def test_sequence_diagnostics_doubles():
    specs = [f"double_of:random_regular:n={n},k=3,seed=1" for n in (20, 40)]
    rows = sequence_diagnostics(specs, 1.0, 1, (3,), range(1, 6))
    assert all(r["oddgirth"] == "inf" and r["c3_per_n"] == 0 for r in rows)
    with pytest.raises(ValueError):
        sequence_diagnostics(specs, 1.0, 1, (4,))
