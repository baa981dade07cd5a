import math

import pytest

from oracles import cycles_by_subsets, shortest_cycle
from regspec.cycles_girth import (
    CensusCapExceeded,
    alpha_bound,
    ball_survey,
    cycle_census,
    girth,
    oddgirth,
    triangle_count,
    verify_alpha_inequality,
    verify_odd_trace_vanishing,
)
from regspec.generators import (
    bipartite_double,
    complete,
    complete_bipartite,
    cycle,
    hypercube,
    line_graph,
    petersen,
    random_regular,
)
from regspec.graph_core import from_edge_list, is_bipartite
from regspec.walks import NotRegular, walk_table

INF = math.inf
SMALL = [
    petersen(),
    complete(5),
    complete(6),
    cycle(7),
    hypercube(3),
    complete_bipartite(3, 3),
    random_regular(10, 3, 1),
    random_regular(10, 4, 2),
    line_graph(complete(4)),
    bipartite_double(complete(4)),
]


def test_girth_examples(pet, k4):
    forest = from_edge_list(5, [(0, 1), (1, 2), (1, 3)])
    assert girth(forest) == INF and oddgirth(forest) == INF
    assert girth(pet) == 5 and girth(k4) == 3
    assert oddgirth(cycle(7)) == 7
    assert oddgirth(hypercube(4)) == INF
    assert oddgirth(pet) == 5


def test_girth_of_even_and_odd_mixtures():
    # a 4-cycle sharing a vertex with a 7-cycle
    edges = [(0, 1), (1, 2), (2, 3), (3, 0)] + [(0, 4), (4, 5), (5, 6), (6, 7), (7, 8), (8, 9), (9, 0)]
    g = from_edge_list(10, edges)
    assert girth(g) == 4 and oddgirth(g) == 7


@pytest.mark.parametrize("g", SMALL, ids=range(len(SMALL)))
def test_girth_against_oracle(g):
    assert girth(g) == shortest_cycle(g)
    assert oddgirth(g) == shortest_cycle(g, odd_only=True)
    og = oddgirth(g)
    assert (og == INF) == bool(is_bipartite(g))
    assert girth(g) <= og
    if og != INF:
        assert og % 2 == 1


def test_census_examples(pet, k4):
    c = cycle_census(k4, 4)
    assert c[3] == 4 and c[4] == 3
    c = cycle_census(pet, 5)
    assert c.counts == (0, 0, 0, 0, 0, 12)
    c = cycle_census(cycle(9), 9)
    assert c[9] == 1 and sum(c.counts) == 1


@pytest.mark.parametrize("g", SMALL, ids=range(len(SMALL)))
def test_census_against_subset_oracle(g):
    census = cycle_census(g, 9)
    for r in range(10):
        assert census[r] == cycles_by_subsets(g, r), r


def test_census_triangle_trace_identity():
    for g in SMALL + [random_regular(50, 5, 3)]:
        assert cycle_census(g, 3)[3] * 6 == walk_table(g, 3).phi[3] == 6 * triangle_count(g)


def test_census_cap():
    with pytest.raises(CensusCapExceeded):
        cycle_census(petersen(), 12)
    assert cycle_census(petersen(), 12, cap=12)[12] >= 0


def test_ball_survey_examples(pet):
    assert ball_survey(pet, 1).n_count == 10
    assert ball_survey(pet, 2).n_count == 0
    q4 = hypercube(4)
    assert ball_survey(q4, 3).n_count == q4.n


def test_ball_survey_monotone():
    for g in SMALL + [random_regular(60, 3, 2)]:
        prev = ball_survey(g, 1).bipartite_vertices
        for r in (2, 3):
            cur = ball_survey(g, r).bipartite_vertices
            assert cur <= prev
            prev = cur


def test_odd_trace_examples(pet, k4):
    rep = verify_odd_trace_vanishing(pet, 1)
    assert rep.passed and rep.phi_odd == 0 and rep.theta == 0.0 and rep.n_bipartite == 10
    rep = verify_odd_trace_vanishing(bipartite_double(random_regular(20, 3, 1)), 2)
    assert rep.passed and rep.phi_odd == 0
    rep = verify_odd_trace_vanishing(k4, 1)
    assert rep.n_bipartite == 0 and rep.theta == 6.0 and rep.passed


@pytest.mark.parametrize("seed", [1, 2, 3])
def test_odd_walks_vanish_on_bipartite_balls(seed):
    g = random_regular(80, 3, seed)
    for r in (1, 2, 3):
        rep = verify_odd_trace_vanishing(g, r)
        assert rep.passed and not rep.nonzero_on_bipartite
        assert rep.theta <= 3 ** (2 * r + 1)


def test_odd_trace_requires_regular():
    with pytest.raises(NotRegular):
        verify_odd_trace_vanishing(from_edge_list(3, [(0, 1), (1, 2)]), 1)


def test_alpha_petersen_finding(pet):
    rep = verify_alpha_inequality(pet, 2)
    assert rep.lhs == 10 and rep.rhs_literal == 0
    assert rep.rhs_extended == alpha_bound(2, 2, 3) * 12 == 720
    assert not rep.literal_pass and rep.extended_pass


def test_alpha_examples(k4):
    rep = verify_alpha_inequality(k4, 2)
    assert rep.lhs == 4 and rep.rhs_literal == 144 and rep.literal_pass
    for g in (hypercube(3), cycle(8), bipartite_double(petersen())):
        for r in (1, 2, 3):
            rep = verify_alpha_inequality(g, r)
            assert rep.lhs == 0 and rep.literal_pass and rep.extended_pass


@pytest.mark.parametrize("g", [g for g in SMALL if g.n <= 10])
def test_alpha_extended_form_holds(g):
    for r in (1, 2, 3):
        assert verify_alpha_inequality(g, r).extended_pass
