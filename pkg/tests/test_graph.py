import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oscopt.graph import (GraphError, build_graph, check_distance_matrix, complement, complete_graph,
                          cycle_graph, disjoint_union, max_degree, mobius_ladder, petersen_graph,
                          random_graph, star_graph)


def test_build_graph_canonicalizes():
    g = build_graph(3, [(2, 0), (1, 0, 2.5)])
    assert g.edges == ((0, 1, 2.5), (0, 2, 1.0))
    assert g.m == 2 and not g.is_unweighted


@pytest.mark.parametrize("edges, msg", [
    ([(0, 0)], "self-loop"),
    ([(0, 1), (1, 0)], "duplicate"),
    ([(0, 5)], "out of range"),
    ([(0, 1, 0.0)], "positive"),
    ([(0, 1, -1.0)], "positive"),
    ([(0, 1, 1, 1)], "must be"),
])
def test_build_graph_rejects(edges, msg):
    with pytest.raises(GraphError, match=msg):
        build_graph(3, edges)


def test_build_graph_idempotent():
    g = random_graph(9, 0.4, seed=3)
    assert build_graph(g.n, g.edges) == g


def test_mobius_ladder_examples():
    assert mobius_ladder(8).m == 12
    m6 = mobius_ladder(6)
    assert m6.m == 9
    # K_{3,3}: bipartite with parts of size 3, every cross pair joined
    side = np.array([0, 1, 0, 1, 0, 1])
    assert all(side[i] != side[j] for i, j, _ in m6.edges)


@pytest.mark.parametrize("n", [5, 7, 4, 2])
def test_mobius_ladder_rejects(n):
    with pytest.raises(GraphError):
        mobius_ladder(n)


@given(st.integers(3, 30).map(lambda k: 2 * k))
def test_mobius_ladder_is_cubic(n):
    g = mobius_ladder(n)
    assert g.m == 3 * n // 2
    assert set(g.degrees().tolist()) == {3}


@settings(max_examples=40)
@given(st.integers(0, 12), st.floats(0, 1), st.integers(0, 10_000))
def test_complement_is_involution(n, p, seed):
    g = random_graph(n, p, seed)
    c = complement(g)
    assert c.m + g.m == n * (n - 1) // 2
    assert complement(c) == g


def test_complement_rejects_weighted():
    with pytest.raises(GraphError):
        complement(build_graph(2, [(0, 1, 3.0)]))


def test_random_graph_deterministic():
    assert random_graph(15, 0.3, 7) == random_graph(15, 0.3, 7)
    assert random_graph(15, 0.3, 7) != random_graph(15, 0.3, 8)


def test_named_graphs():
    assert complete_graph(4).m == 6
    assert cycle_graph(5).m == 5
    assert max_degree(star_graph(4)) == 4
    p = petersen_graph()
    assert p.m == 15 and set(p.degrees().tolist()) == {3}
    two = disjoint_union(complete_graph(3), complete_graph(3))
    assert two.n == 6 and two.m == 6 and not two.has_edge(0, 3)


def test_adjacency_symmetric():
    g = random_graph(7, 0.5, 1)
    a = g.adjacency()
    assert np.array_equal(a, a.T)
    assert a.sum() == 2 * g.m


def test_check_distance_matrix():
    check_distance_matrix([[0, 5], [5, 0]])
    with pytest.raises(GraphError, match="asymmetric"):
        check_distance_matrix([[0, 1], [2, 0]])
    with pytest.raises(GraphError, match="diagonal"):
        check_distance_matrix([[0.1, 1], [1, 0]])
    with pytest.raises(GraphError, match="negative"):
        check_distance_matrix([[0, -1], [-1, 0]])
