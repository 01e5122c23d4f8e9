"""Tests for the bitset graph type and its structural operations."""

from math import comb

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from pancycle import graph as G
from pancycle.errors import (
    CapacityError,
    GraphError,
    InvalidVertexError,
    NotAnEdgeError,
    SelfLoopError,
)


@st.composite
def graphs(draw, max_n=9):
    n = draw(st.integers(0, max_n))
    pairs = [(i, j) for j in range(n) for i in range(j)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return G.build(n, [p for p, keep in zip(pairs, chosen) if keep])


class TestBuild:
    def test_edges_and_size(self):
        g = G.build(4, [(0, 1), (1, 2), (2, 3)])
        assert g.size == 3
        assert g.has_edge(2, 1)
        assert not g.has_edge(0, 3)
        assert g.neighbors(1) == [0, 2]

    def test_duplicates_collapse(self):
        g = G.build(3, [(0, 1), (1, 0), (0, 1)])
        assert g.size == 1

    def test_edges_listed_once(self):
        g = G.build(4, [(3, 0), (2, 1)])
        assert sorted(g.edges()) == [G.Edge(0, 3), G.Edge(1, 2)]

    @pytest.mark.parametrize("edge", [(0, 4), (-1, 2), (7, 1)])
    def test_vertex_out_of_range(self, edge):
        with pytest.raises(InvalidVertexError):
            G.build(4, [edge])

    def test_self_loop(self):
        with pytest.raises(SelfLoopError):
            G.build(3, [(1, 1)])

    def test_order_above_cap(self):
        with pytest.raises(CapacityError):
            G.empty(33)
        assert G.empty(33, cap=40).n == 33

    def test_cap_above_maximum(self):
        with pytest.raises(CapacityError):
            G.empty(3, cap=65)

    @pytest.mark.parametrize(
        "n, adj, error",
        [
            (2, (0b10, 0b00), GraphError),
            (2, (0b01, 0b00), SelfLoopError),
            (2, (0b100, 0b00), InvalidVertexError),
            (3, (0b10, 0b01), GraphError),
            (-1, (), InvalidVertexError),
            (65, (0,) * 65, CapacityError),
        ],
    )
    def test_direct_construction_is_checked(self, n, adj, error):
        with pytest.raises(error):
            G.Graph(n, adj)

    def test_direct_construction_matches_build(self):
        assert G.Graph(3, (0b110, 0b001, 0b001)) == G.build(3, [(0, 1), (0, 2)])

    def test_zero_order(self):
        g = G.empty(0)
        assert g.n == 0 and g.size == 0
        assert G.degree_sequence(g) == []


class TestOperations:
    @given(graphs())
    def test_complement_is_an_involution(self, g):
        h = G.complement(g)
        assert G.complement(h) == g
        assert g.size + h.size == comb(g.n, 2)

    def test_disjoint_union_and_join(self):
        a, b = G.build(3, [(0, 1)]), G.build(2, [(0, 1)])
        u = G.disjoint_union(a, b)
        assert (u.n, u.size) == (5, 2)
        assert u.has_edge(3, 4)
        j = G.join(a, b)
        assert j.size == 2 + 3 * 2
        assert j.has_edge(0, 4)

    def test_induced_subgraph_relabels(self):
        g = G.build(5, [(1, 3), (3, 4), (0, 2)])
        h = G.induced_subgraph(g, [1, 3, 4])
        assert h.n == 3
        assert sorted(h.edges()) == [G.Edge(0, 1), G.Edge(1, 2)]
        assert G.induced_size(g, [1, 3, 4]) == 2
        assert G.induced_size(g, G.mask_of([0, 2])) == 1

    def test_induced_subgraph_bad_vertex(self):
        with pytest.raises(InvalidVertexError):
            G.induced_subgraph(G.empty(3), [0, 3])

    @given(graphs(), st.randoms())
    def test_permute_preserves_degrees(self, g, rnd):
        perm = list(range(g.n))
        rnd.shuffle(perm)
        h = G.permute(g, perm)
        assert h.size == g.size
        assert sorted(G.degree_sequence(h)) == sorted(G.degree_sequence(g))
        for u, v in g.edges():
            assert h.has_edge(perm[u], perm[v])

    def test_add_then_delete_vertex(self):
        g = G.build(3, [(0, 1)])
        h = G.add_vertex(g, G.mask_of([0, 2]))
        assert h.n == 4 and h.neighbors(3) == [0, 2]
        assert G.delete_vertex(h, 3) == g

    def test_delete_vertex_shifts_labels(self):
        g = G.build(4, [(0, 3), (2, 3)])
        h = G.delete_vertex(g, 1)
        assert sorted(h.edges()) == [G.Edge(0, 2), G.Edge(1, 2)]

    def test_add_and_remove_edge(self):
        g = G.add_edge(G.empty(3), 0, 2)
        assert g.has_edge(0, 2)
        assert G.remove_edge(g, 2, 0) == G.empty(3)

    def test_require_edge(self):
        g = G.build(3, [(0, 1)])
        assert G.require_edge(g, 1, 0) == G.Edge(0, 1)
        with pytest.raises(NotAnEdgeError):
            G.require_edge(g, 0, 2)
        with pytest.raises(InvalidVertexError):
            G.require_edge(g, 0, 5)

    def test_degree_sequence_is_non_increasing(self):
        g = G.build(4, [(0, 1), (0, 2), (0, 3)])
        assert G.degree_sequence(g) == [3, 1, 1, 1]


class TestNetworkx:
    @settings(max_examples=50)
    @given(graphs())
    def test_round_trip(self, g):
        assert G.from_networkx(g.to_networkx()) == g

    def test_from_networkx_sorts_nodes(self):
        h = nx.Graph([("b", "c")])
        h.add_node("a")
        g = G.from_networkx(h)
        assert g.n == 3
        assert sorted(g.edges()) == [G.Edge(1, 2)]
