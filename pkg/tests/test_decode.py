import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oscopt.coupling import TWO_PI
from oscopt.decode import (canonical_tour, check_hamiltonian, cut_value, decode_partition, decode_tour,
                           grid_phases, independent_sets_from, is_clique, is_independent,
                           partition_report, snap_phases, tour_length, tour_phases)
from oscopt.energy import objective_value
from oscopt.graph import (build_graph, complete_graph, cycle_graph, disjoint_union, path_graph,
                          random_graph, star_graph)


def test_snap_examples():
    labels, d = snap_phases([0.01], 2)
    assert labels.tolist() == [0] and d == pytest.approx(0.01)
    labels, d = snap_phases([TWO_PI / 3], 3)
    assert labels.tolist() == [1] and d == pytest.approx(0.0, abs=1e-15)
    assert snap_phases([math.pi / 2], 2)[0].tolist() == [0]


def test_snap_wraps_near_two_pi():
    labels, d = snap_phases([TWO_PI - 0.02, -0.02], 4)
    assert labels.tolist() == [0, 0] and d == pytest.approx(0.02)


def test_snap_rejects_order_one():
    with pytest.raises(ValueError):
        snap_phases([0.0], 1)


@given(st.integers(2, 64), st.lists(st.integers(0, 63), min_size=1, max_size=40))
def test_snap_inverts_grid_embedding(K, raw):
    labels = np.array(raw) % K
    got, d = snap_phases(grid_phases(labels, K), K)
    assert np.array_equal(got, labels)
    assert d < 1e-12


def test_cut_value_examples():
    assert cut_value([0, 1, 2], complete_graph(3))[:2] == (3, 0)
    assert cut_value([0, 1, 0, 1], cycle_graph(4))[0] == 4
    g = random_graph(9, 0.5, 0)
    assert cut_value(np.zeros(9, int), g)[0] == 0


def test_cut_value_weighted_and_shape_check():
    g = build_graph(3, [(0, 1, 2.5), (1, 2, 1.0)])
    assert cut_value([0, 1, 1], g) == (1, 1, 2.5)
    with pytest.raises(ValueError):
        cut_value([0, 1], g)


@given(st.integers(2, 5), st.integers(0, 5000))
def test_cut_counts_match_objective(K, seed):
    g = random_graph(8, 0.5, seed)
    labels = np.random.default_rng(seed).integers(0, K, 8)
    d = decode_partition(grid_phases(labels, K), g, K)
    assert d.cut_edges + d.internal_edges == g.m
    assert d.internal_edges - d.cut_edges == pytest.approx(objective_value(labels, g, "maxkcut", K=K))


def test_decode_tour_examples():
    d = decode_tour([0.0, math.pi / 2, math.pi, 3 * math.pi / 2], 4)
    assert d.order == (0, 1, 2, 3) and d.valid
    shifted = decode_tour(np.array([0.0, math.pi / 2, math.pi, 3 * math.pi / 2]) + 1.1, 4)
    assert shifted.order == d.order


def test_decode_tour_collision_falls_back_to_rank_order():
    d = decode_tour([0.0, 0.05, 2.0, 4.0], 4)
    assert not d.valid
    assert d.order == (0, 1, 2, 3)


def test_decode_tour_length_check():
    with pytest.raises(ValueError):
        decode_tour([0.0, 1.0], 3)


@given(st.permutations(list(range(7))), st.integers(0, 6), st.booleans())
def test_canonical_tour_symmetries(perm, shift, flip):
    t = perm[shift:] + perm[:shift]
    if flip:
        t = t[::-1]
    assert canonical_tour(t) == canonical_tour(perm)
    c = canonical_tour(perm)
    assert c[0] == 0 and c[1] < c[-1]


@given(st.permutations(list(range(6))), st.floats(0, 10))
def test_tour_phases_decode_back(perm, offset):
    d = decode_tour(tour_phases(perm) + offset)
    assert d.valid and d.order == canonical_tour(perm)


def test_tour_length_examples():
    pts = np.array([[0, 0], [1, 0], [1, 1], [0, 1]], float)
    D = np.linalg.norm(pts[:, None] - pts[None], axis=-1)
    assert tour_length([0, 1, 2, 3], D) == pytest.approx(4.0)
    assert tour_length([3, 2, 1, 0], D) == pytest.approx(4.0)
    D3 = np.array([[0, 2, 3], [2, 0, 4], [3, 4, 0]], float)
    assert tour_length([2, 0, 1], D3) == 9.0
    with pytest.raises(ValueError):
        tour_length([0, 1, 2], D3 + np.triu(np.ones((3, 3)), 1))


def test_check_hamiltonian_examples():
    assert check_hamiltonian([0, 1, 2, 3], cycle_graph(4)) == ("cycle", 0)
    assert check_hamiltonian([0, 1, 2, 3], path_graph(4)) == ("path_only", 1)
    assert check_hamiltonian([0, 1, 2, 3, 4], star_graph(4))[0] == "neither"
    with pytest.raises(ValueError):
        check_hamiltonian([0, 0, 1, 2], cycle_graph(4))


def test_partition_report_examples():
    assert partition_report([0, 0, 1, 1], cycle_graph(4)) == (0, 2)
    two = disjoint_union(complete_graph(3), complete_graph(3))
    assert partition_report([0, 0, 0, 1, 1, 1], two) == (0, 0)
    assert partition_report([0, 0, 0, 0], cycle_graph(4)) == (4, 0)
    with pytest.raises(ValueError):
        partition_report([0, 2, 1, 1], cycle_graph(4))


def test_independent_sets_examples():
    internal, best = independent_sets_from([0, 1, 2], complete_graph(3))
    assert set(internal.values()) == {0} and len(best) == 1
    internal, best = independent_sets_from([0, 1, 0, 1], cycle_graph(4))
    assert best == [0, 2]
    internal, best = independent_sets_from([0, 0, 1], complete_graph(3))
    assert internal == {0: 1, 1: 0} and best == [2]


def test_set_predicates():
    g = cycle_graph(5)
    assert is_independent([0, 2], g) and not is_independent([0, 1], g)
    assert is_clique([0, 1], g) and not is_clique([0, 1, 2], g)
