import random
from fractions import Fraction

import pytest

from conftest import random_connected_graph, random_multigraph
from oracles import spanning_trees, subtree_coeffs
from subtree_mean.engine import (
    LocalProfile,
    NotATreeError,
    ProfileCache,
    added_edge_local_coeffs,
    bareiss_det,
    local_polynomial_edge,
    local_polynomial_edge_contracted,
    local_polynomial_vertex,
    mu_star,
    spanning_tree_count,
    subtree_polynomial,
    tree_local_polynomial_vertex,
    tree_moments,
    tree_subtree_polynomial,
)
from subtree_mean.exact import IntPolynomial, UndefinedMeanError
from subtree_mean.families import make_complete, make_cycle, make_path, make_smallest_counterexample
from subtree_mean.generate import enumerate_connected_graphs, enumerate_trees
from subtree_mean.graph import Edge, GraphSizeError, MissingEdgeError, MultiGraph, add_edge, delete_edge

K1 = MultiGraph.empty(1)
STAR3 = MultiGraph.from_edges(4, [(0, 1), (0, 2), (0, 3)])


def random_tree(rng: random.Random, n: int) -> MultiGraph:
    return MultiGraph.from_edges(n, [(rng.randrange(v), v) for v in range(1, n)])


def test_bareiss():
    assert bareiss_det([]) == 1
    assert bareiss_det([[2, -1], [-1, 2]]) == 3
    assert bareiss_det([[0, 1], [1, 0]]) == -1
    assert bareiss_det([[1, 2], [2, 4]]) == 0


def test_small_examples():
    p3 = subtree_polynomial(make_path(3))
    assert p3.poly.coeffs == (0, 3, 2, 1)
    assert p3.mean == Fraction(5, 3)
    assert p3.density == Fraction(5, 9)
    c3 = subtree_polynomial(make_cycle(3))
    assert c3.poly.coeffs == (0, 3, 3, 3)
    assert c3.spanning_proportion == Fraction(1, 3)
    star = subtree_polynomial(STAR3)
    assert star.poly.coeffs == (0, 4, 3, 3, 1)
    assert star.mean == Fraction(23, 11)
    k1 = subtree_polynomial(K1)
    assert k1.poly.coeffs == (0, 1) and k1.mean == 1 and k1.density == 1


def test_local_examples():
    assert local_polynomial_vertex(make_path(3), 1).poly.coeffs == (0, 1, 2, 1)
    assert local_polynomial_vertex(make_path(3), 0).mean == 2
    loc = local_polynomial_edge(make_cycle(3), (0, 1))
    assert loc.poly.coeffs == (0, 0, 1, 2)
    assert loc.mean == Fraction(8, 3)


def test_seven_vertex_counterexample_polynomials():
    g, (a, b) = make_smallest_counterexample()
    assert subtree_polynomial(g).poly.coeffs == (0, 7, 12, 33, 92, 234, 402, 320)
    assert subtree_polynomial(add_edge(g, a, b)).poly.coeffs == (0, 7, 13, 43, 140, 362, 594, 448)
    assert spanning_tree_count(g) == 320


def test_complete_graph_spanning_counts():
    assert spanning_tree_count(K1) == 1
    for n in range(2, 9):
        assert spanning_tree_count(make_complete(n)) == n ** (n - 2)


def test_multigraph_spanning_count():
    g = MultiGraph.from_edges(3, [(0, 1, 2), (1, 2, 3)])
    assert spanning_tree_count(g) == 6
    assert subtree_polynomial(g).poly.coeffs == (0, 3, 5, 6)
    assert spanning_tree_count(MultiGraph.empty(3)) == 0


@pytest.mark.parametrize("n", range(1, 6))
def test_oracle_all_connected(n):
    for g in enumerate_connected_graphs(n):
        assert list(subtree_polynomial(g).poly.coeffs) == subtree_coeffs(g)
        assert spanning_tree_count(g) == spanning_trees(g)
        for v in range(n):
            assert list(local_polynomial_vertex(g, v).poly.coeffs) == subtree_coeffs(g, vertex=v)
        for u, v, _ in g.edge_list():
            expect = subtree_coeffs(g, edge=(u, v, 0))
            assert list(local_polynomial_edge(g, (u, v)).poly.coeffs) == expect
            assert list(local_polynomial_edge_contracted(g, (u, v)).poly.coeffs) == expect


def test_oracle_multigraphs(rng):
    for _ in range(40):
        g = random_multigraph(rng, rng.randint(2, 5), max_mult=3 if rng.random() < 0.5 else 2)
        assert list(subtree_polynomial(g).poly.coeffs) == subtree_coeffs(g)
        assert spanning_tree_count(g) == spanning_trees(g)
        v = rng.randrange(g.n)
        assert list(local_polynomial_vertex(g, v).poly.coeffs) == subtree_coeffs(g, vertex=v)
        for e in g.edges():
            expect = subtree_coeffs(g, edge=(e.u, e.v, e.copy))
            assert list(local_polynomial_edge(g, e).poly.coeffs) == expect
            assert list(local_polynomial_edge_contracted(g, e).poly.coeffs) == expect


def test_decomposition_and_weighted_average(rng):
    for _ in range(60):
        g = random_multigraph(rng, rng.randint(2, 7))
        if g.num_edges == 0:
            continue
        e = rng.choice(list(g.edges()))
        full = subtree_polynomial(g)
        rest = subtree_polynomial(delete_edge(g, e))
        local = local_polynomial_edge(g, e)
        assert full.poly == local.poly + rest.poly
        lhs = full.mean * full.total
        assert lhs == local.mean * sum(local.poly.coeffs) + rest.mean * rest.total


def test_added_edge_coeffs_match_subtraction(rng):
    for _ in range(40):
        g = random_connected_graph(rng, rng.randint(3, 8), 0.4)
        pairs = [(u, v) for u in range(g.n) for v in range(u + 1, g.n)]
        u, v = rng.choice(pairs)
        h = add_edge(g, u, v)
        new = Edge(u, v, h.multiplicity(u, v) - 1)
        assert IntPolynomial(added_edge_local_coeffs(g, u, v)) == local_polynomial_edge(h, new).poly


@pytest.mark.parametrize("n", range(1, 11))
def test_tree_dp_matches_general_engine(n):
    for t in enumerate_trees(n):
        prof = tree_subtree_polynomial(t)
        assert prof == subtree_polynomial(t)
        assert tree_moments(t) == (prof.total, prof.weight)
        for v in range(n):
            assert tree_local_polynomial_vertex(t, v) == local_polynomial_vertex(t, v)


def test_tree_dp_random_larger_trees(rng):
    for n in (11, 12):
        for _ in range(10):
            t = random_tree(rng, n)
            assert tree_subtree_polynomial(t) == subtree_polynomial(t)
            v = rng.randrange(n)
            assert tree_local_polynomial_vertex(t, v) == local_polynomial_vertex(t, v)


def test_tree_dp_path_closed_form():
    for n in (1, 2, 50, 300):
        assert tree_subtree_polynomial(make_path(n)).poly.coeffs == tuple([0] + [n - k + 1 for k in range(1, n + 1)])


def test_tree_dp_rejects_non_trees():
    with pytest.raises(NotATreeError):
        tree_subtree_polynomial(make_cycle(4))
    with pytest.raises(NotATreeError):
        tree_moments(MultiGraph.from_edges(2, [(0, 1, 2)]))


def test_mu_star_exceeds_mu(rng):
    assert mu_star(make_path(3)) == Fraction(7, 3)
    for _ in range(30):
        g = random_connected_graph(rng, rng.randint(2, 7))
        assert mu_star(g) > subtree_polynomial(g).mean
    with pytest.raises(UndefinedMeanError):
        mu_star(K1)


def test_local_profile_undefined_mean():
    with pytest.raises(UndefinedMeanError):
        LocalProfile(0, 3, IntPolynomial()).mean


def test_errors():
    with pytest.raises(MissingEdgeError):
        local_polynomial_edge(make_path(3), (0, 2))
    with pytest.raises(MissingEdgeError):
        local_polynomial_edge(make_path(3), Edge(0, 1, 1))
    with pytest.raises(IndexError):
        local_polynomial_vertex(make_path(3), 3)
    with pytest.raises(GraphSizeError):
        subtree_polynomial(make_path(21))
    with pytest.raises(GraphSizeError):
        subtree_polynomial(make_path(9), max_order=8)


def test_disconnected_input():
    g = MultiGraph.from_edges(4, [(0, 1), (2, 3)])
    prof = subtree_polynomial(g)
    assert prof.poly.coeffs == (0, 4, 2)
    assert prof.spanning_count == 0 and prof.spanning_proportion == 0


def test_profile_cache():
    cache = ProfileCache()
    a = cache.get(make_path(4))
    b = cache.get(MultiGraph.from_edges(4, [(2, 0), (0, 3), (3, 1)]))
    assert a is b and len(cache) == 1
    assert (cache.hits, cache.misses) == (1, 1)
