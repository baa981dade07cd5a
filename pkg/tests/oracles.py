"""Brute-force oracles shared by the test modules."""

import itertools


def cycles_by_subsets(g, r):
    """Number of r-cycles: Hamiltonian cycles of every r-vertex subset.

    For each subset, fix its smallest vertex first and try every ordering of
    the rest; each cycle appears twice (two directions).
    """
    if r < 3:
        return 0
    total = 0
    for subset in itertools.combinations(range(g.n), r):
        first, rest = subset[0], subset[1:]
        if any(not set(g.adj[v]) & set(subset) for v in subset):
            continue
        found = 0
        for perm in itertools.permutations(rest):
            order = (first,) + perm
            if all(g.has_edge(order[i], order[(i + 1) % r]) for i in range(r)):
                found += 1
        total += found // 2
    return total


def shortest_cycle(g, odd_only=False, r_max=None):
    r_max = r_max or g.n
    for r in range(3, r_max + 1):
        if odd_only and r % 2 == 0:
            continue
        if cycles_by_subsets(g, r):
            return r
    return float("inf")
