import numpy as np
import pytest
from hypothesis import given, strategies as st

from hardcut.graph import (
    Graph,
    GraphError,
    check_regular,
    check_srg,
    common_neighbors,
    cut_value,
    edge_common_neighbors,
    edge_profile,
    is_connected,
    is_triangle_free,
    magnitude_range,
)
from hardcut.params import SrgParams

from conftest import C4, C5, K2, TRIANGLE, graphs
from oracles import common_neighbor_count


def test_from_edges_canonicalises():
    g = Graph.from_edges(3, [(2, 0), (1, 0)])
    assert g.edges.tolist() == [[0, 1], [0, 2]]
    assert not g.edges.flags.writeable


@pytest.mark.parametrize("edges, msg", [
    ([(0, 0)], "self-loop"),
    ([(0, 1), (1, 0)], "duplicate"),
    ([(0, 5)], "range"),
])
def test_from_edges_rejects(edges, msg):
    with pytest.raises(GraphError, match=msg):
        Graph.from_edges(3, edges)


def test_rejects_nonfinite_weight():
    with pytest.raises(GraphError):
        Graph.from_edges(2, [(0, 1)], [np.nan])


def test_cut_value_examples():
    assert cut_value(K2, [1, -1]) == 1.0
    assert cut_value(TRIANGLE, [1, 1, 1]) == 0.0
    assert cut_value(TRIANGLE, [1, 1, -1]) == 2.0


def test_common_neighbors_examples(j631):
    assert common_neighbors(TRIANGLE, 0, 1) == 1
    assert common_neighbors(C4, 0, 1) == 0
    u, v = j631.edges[0]
    assert common_neighbors(j631, int(u), int(v)) == 4


def test_regular_and_srg():
    assert check_regular(C4) == 2
    assert check_regular(Graph.from_edges(3, [(0, 1), (1, 2)])) is None
    assert check_srg(C5) == SrgParams(5, 2, 0, 1)
    k4 = Graph.from_edges(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
    assert check_srg(k4) is None


def test_triangle_free(j631):
    assert is_triangle_free(C4)
    assert not is_triangle_free(j631)


def test_magnitude_range():
    assert magnitude_range(C4) == 0.0
    two = Graph.from_edges(3, [(0, 1), (1, 2)], [10.0, -0.1])
    assert magnitude_range(two) == pytest.approx(2.0)
    three = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)], [100.0, -0.1, 3.0])
    assert magnitude_range(three) == pytest.approx(3.0)


@given(graphs(max_n=12))
def test_handshaking(g):
    assert int(g.degrees.sum()) == 2 * g.m


@given(graphs(max_n=10, weighted=True), st.data())
def test_cut_sign_flip_invariance(g, data):
    sides = np.array(data.draw(st.lists(st.sampled_from([-1, 1]), min_size=g.n, max_size=g.n)))
    assert cut_value(g, sides) == pytest.approx(cut_value(g, -sides), abs=1e-12)


@given(graphs(max_n=10))
def test_edge_common_neighbors_matches_sets(g):
    lam = edge_common_neighbors(g)
    for (u, v), c in zip(g.edges.tolist(), lam.tolist()):
        assert c == common_neighbor_count(g, u, v)


@given(graphs(max_n=9))
def test_srg_implies_regular_and_lambda(g):
    s = check_srg(g)
    if s is None:
        return
    assert check_regular(g) == s.k
    assert all(c == s.lam for c in edge_common_neighbors(g).tolist())


@given(graphs(max_n=10))
def test_edge_profile_counts_every_edge(g):
    prof = edge_profile(g)
    assert sum(prof.values()) == g.m
    for du, dv, lam in prof:
        assert du <= dv and 0 <= lam <= du


def test_connected():
    assert is_connected(C5)
    assert not is_connected(Graph.from_edges(4, [(0, 1), (2, 3)]))
