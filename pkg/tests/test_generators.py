import pytest

from regspec.cycles_girth import girth, oddgirth
from regspec.generators import (
    MAX_PAIRING_ATTEMPTS,
    FamilySpec,
    GenerationFailed,
    InvalidParams,
    bipartite_double,
    complete,
    complete_bipartite,
    cycle,
    generate,
    hypercube,
    line_graph,
    parse_spec,
    petersen,
    random_regular,
)
from regspec.graph_core import connected_components, format_graph, from_edge_list, is_bipartite, regularity, write_graph


@pytest.mark.parametrize(
    "spec, n, k",
    [
        ("cycle:n=5", 5, 2),
        ("complete:n=6", 6, 5),
        ("complete_bipartite:a=3,b=3", 6, 3),
        ("hypercube:d=3", 8, 3),
        ("petersen", 10, 3),
        ("random_regular:n=20,k=3,seed=1", 20, 3),
    ],
)
def test_documented_regularity(spec, n, k):
    g = generate(spec)
    g.check_invariants()
    assert g.n == n and regularity(g) == k


def test_cycle5_girth():
    assert girth(cycle(5)) == 5


def test_hypercube3_bipartite():
    assert is_bipartite(hypercube(3))


def test_random_regular_forced_k4():
    for seed in (0, 1, 99):
        assert random_regular(4, 3, seed) == complete(4)


def test_random_regular_invalid():
    with pytest.raises(InvalidParams):
        random_regular(3, 3, 5)
    with pytest.raises(InvalidParams):
        random_regular(3, 4, 5)


def test_random_regular_deterministic():
    a = random_regular(100, 3, 7)
    b = random_regular(100, 3, 7)
    assert format_graph(a) == format_graph(b)
    assert a != random_regular(100, 3, 8)


def test_line_graph_examples(pet):
    assert line_graph(cycle(3)) == cycle(3)
    star = from_edge_list(4, [(0, 1), (0, 2), (0, 3)])
    assert line_graph(star) == cycle(3)
    lp = line_graph(pet)
    assert lp.n == 15 and regularity(lp) == 4


def test_line_graph_edge_indexing():
    g = from_edge_list(4, [(2, 3), (0, 1), (1, 2)])
    # edges sorted: (0,1)=0, (1,2)=1, (2,3)=2 -> path 0-1-2
    assert line_graph(g).edges() == [(0, 1), (1, 2)]


def test_bipartite_double_examples(pet):
    assert connected_components(bipartite_double(cycle(3)))[0] == 1
    d = bipartite_double(cycle(3))
    assert regularity(d) == 2 and d.n == 6 and girth(d) == 6
    c6 = cycle(6)
    assert connected_components(bipartite_double(c6))[0] == 2
    des = bipartite_double(pet)
    assert des.n == 20 and regularity(des) == 3 and is_bipartite(des)
    assert girth(des) == 6


@pytest.mark.parametrize("g", [petersen(), complete(5), random_regular(30, 4, 2), hypercube(3)])
def test_transform_invariants(g):
    k = regularity(g)
    lg = line_graph(g)
    lg.check_invariants()
    assert lg.n == g.num_edges and regularity(lg) == 2 * k - 2
    d = bipartite_double(g)
    d.check_invariants()
    assert is_bipartite(d) and regularity(d) == k
    assert oddgirth(d) == float("inf")


def test_parse_spec_round_trip():
    for text in ("cycle:n=17", "random_regular:n=100,k=3,seed=7", "petersen", "line_of:petersen"):
        assert str(parse_spec(text)) == text


def test_parse_spec_errors():
    for bad in ("cycle", "cycle:m=3", "random_regular:n=10,k=3", "torus:n=3", "cycle:n=x", "petersen:n=3"):
        with pytest.raises(InvalidParams):
            parse_spec(bad)


def test_nested_and_file_sources(tmp_path, pet):
    assert generate("double_of:petersen") == bipartite_double(pet)
    path = tmp_path / "pet.g"
    write_graph(pet, path)
    assert generate(f"line_of:{path}") == line_graph(pet)
    with pytest.raises(InvalidParams):
        generate(f"line_of:{tmp_path / 'missing.g'}")


def test_complete_bipartite_requires_equal_sides():
    with pytest.raises(InvalidParams):
        complete_bipartite(2, 3)
    with pytest.raises(InvalidParams):
        FamilySpec("cycle", (3,), seed=1)


def test_retry_cap():
    assert MAX_PAIRING_ATTEMPTS == 1000
    # this seed needs more than 1000 pairings at k = 5
    with pytest.raises(GenerationFailed):
        random_regular(60, 5, 3)
    g = random_regular(60, 5, 3, max_attempts=100_000)
    assert regularity(g) == 5
    with pytest.raises(GenerationFailed):
        random_regular(20, 5, 1, max_attempts=1)
    with pytest.raises(InvalidParams):
        random_regular(20, 5, 1, max_attempts=0)


def test_raising_cap_keeps_graph():
    assert random_regular(100, 5, 2) == random_regular(100, 5, 2, max_attempts=100_000)
