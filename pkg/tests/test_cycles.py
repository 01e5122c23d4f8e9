"""Tests for cycle spectra, pancyclic predicates and Hamilton-cycle counting."""

import random
from itertools import permutations

import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from pancycle import cycles as C
from pancycle import families as F
from pancycle import graph as G
from pancycle.errors import BudgetError, InvalidVertexError, NotAnEdgeError, PreconditionError


@st.composite
def graphs(draw, min_n=3, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for j in range(n) for i in range(j)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return G.build(n, [p for p, keep in zip(pairs, chosen) if keep])


def _edge_lengths(g, u, v):
    h = g.to_networkx()
    return sorted({len(p) for p in nx.all_simple_paths(h, u, v) if len(p) >= 3})


def _hamilton_cycles(g):
    count = 0
    for rest in permutations(range(1, g.n)):
        if rest[0] > rest[-1]:
            continue
        tour = (0,) + rest
        if all(g.has_edge(a, b) for a, b in zip(tour, tour[1:] + tour[:1])):
            count += 1
    return count


def _all_graphs(n):
    pairs = [(i, j) for j in range(n) for i in range(j)]
    for bits in range(1 << len(pairs)):
        yield G.build(n, [p for k, p in enumerate(pairs) if bits >> k & 1])


def _random_graph(rng, n):
    return G.build(n, [(i, j) for j in range(n) for i in range(j) if rng.random() < 0.5])


def _assert_spectra_match_paths(g):
    by_edge = {e: _edge_lengths(g, *e) for e in g.edges()}
    spectra = C.all_edge_spectra(g)
    assert {e: s.as_list() for e, s in spectra.items()} == by_edge
    for v in range(g.n):
        at_v = set().union(*(by_edge[e] for e in by_edge if v in e))
        assert C.vertex_cycle_spectrum(g, v).as_list() == sorted(at_v)
    assert C.graph_cycle_spectrum(g).as_list() == sorted(set().union(*by_edge.values()))


class TestEdgeSpectra:
    @settings(max_examples=60)
    @given(graphs())
    def test_matches_path_enumeration(self, g):
        spectra = C.all_edge_spectra(g)
        assert set(spectra) == set(g.edges())
        for (u, v), spec in spectra.items():
            assert spec.as_list() == _edge_lengths(g, u, v)
            assert C.edge_cycle_spectrum(g, (v, u)) == spec

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_every_small_labelled_graph(self, n):
        for g in _all_graphs(n):
            _assert_spectra_match_paths(g)

    @pytest.mark.slow
    def test_seeded_random_graphs(self):
        rng = random.Random(20240601)
        for _ in range(500):
            _assert_spectra_match_paths(_random_graph(rng, rng.choice((6, 7))))

    @pytest.mark.parametrize("n", [3, 5, 8])
    def test_cycle_edge_lies_on_one_cycle(self, n):
        assert C.edge_cycle_spectrum(F.cycle(n), (0, 1)).as_list() == [n]

    def test_complete_graph_is_edge_pancyclic(self):
        g = F.complete(6)
        assert C.is_edge_pancyclic(g)
        assert C.edge_cycle_spectrum(g, (2, 4)).is_full()

    def test_a_cyclic(self):
        g = F.wheel(5)
        assert C.is_A_cyclic(g, (0, 1), [3])
        with pytest.raises(PreconditionError):
            C.is_A_cyclic(g, (0, 1), [2, 3])
        with pytest.raises(PreconditionError):
            C.is_A_cyclic(g, (0, 1), [7])

    def test_non_edge(self):
        with pytest.raises(NotAnEdgeError):
            C.edge_cycle_spectrum(F.cycle(5), (0, 2))

    def test_order_budget(self):
        with pytest.raises(BudgetError) as info:
            C.edge_cycle_spectrum(F.complete(21), (0, 1))
        assert info.value.estimate == 1 << 20


class TestPancyclicEdges:
    def test_bt_is_pancyclic_without_a_pancyclic_edge(self):
        g = F.bt(7)
        assert C.is_pancyclic(g)
        assert C.find_pancyclic_edge(g) is None
        assert not C.has_pancyclic_edge(g)
        assert C.pancyclic_edges(g) == []

    def test_first_pancyclic_edge_is_lexicographic(self):
        g = F.complete(5)
        assert C.find_pancyclic_edge(g) == G.Edge(0, 1)
        assert len(C.pancyclic_edges(g)) == 10

    @given(graphs())
    def test_find_agrees_with_full_listing(self, g):
        listed = C.pancyclic_edges(g)
        assert C.find_pancyclic_edge(g) == (listed[0] if listed else None)
        for e in listed:
            assert C.is_pancyclic_edge(g, e)

    @given(graphs())
    def test_edge_pancyclic_implies_vertex_pancyclic(self, g):
        if C.is_edge_pancyclic(g):
            assert C.is_vertex_pancyclic(g)
        if C.is_vertex_pancyclic(g):
            assert C.is_pancyclic(g)

    def test_small_orders_are_rejected(self):
        with pytest.raises(PreconditionError):
            C.find_pancyclic_edge(F.complete(2))
        with pytest.raises(PreconditionError):
            C.is_pancyclic(F.complete(2))


class TestVertexAndGraphSpectra:
    def test_petersen_lengths(self):
        assert C.graph_cycle_spectrum(F.petersen()).as_list() == [5, 6, 8, 9]

    def test_remark1_is_pancyclic_but_not_vertex_pancyclic(self):
        g = F.remark1(7)
        assert C.is_pancyclic(g)
        assert not C.is_vertex_pancyclic(g)
        assert 3 not in C.vertex_cycle_spectrum(g, 2)

    @given(graphs())
    def test_vertex_spectrum_is_union_of_edge_spectra(self, g):
        spectra = C.all_edge_spectra(g)
        for v in range(g.n):
            union = 0
            for (a, b), spec in spectra.items():
                if v in (a, b):
                    union |= spec.lengths
            assert C.vertex_cycle_spectrum(g, v).lengths == union

    @given(graphs())
    def test_graph_spectrum_is_union_of_edge_spectra(self, g):
        union = 0
        for spec in C.all_edge_spectra(g).values():
            union |= spec.lengths
        assert C.graph_cycle_spectrum(g).lengths == union

    def test_tiny_graph_has_no_cycles(self):
        assert C.graph_cycle_spectrum(G.build(2, [(0, 1)])).as_list() == []

    def test_bad_vertex(self):
        with pytest.raises(InvalidVertexError):
            C.vertex_cycle_spectrum(F.cycle(5), 5)


class TestHamilton:
    @pytest.mark.parametrize(
        "g, count",
        [
            (F.complete(4), 3),
            (F.complete(5), 12),
            (F.complete_bipartite(3, 3), 6),
            (F.cycle(6), 1),
            (F.petersen(), 0),
            (F.barbell(8), 0),
        ],
    )
    def test_known_counts(self, g, count):
        assert C.hamilton_count(g, cap=100).count_capped == count

    @settings(max_examples=60)
    @given(graphs())
    def test_matches_permutation_count(self, g):
        assert C.hamilton_count(g, cap=1000).count_capped == _hamilton_cycles(g)

    def test_cap_saturates(self):
        res = C.hamilton_count(F.complete(6), cap=2)
        assert res.count_capped == 2
        assert res.saturated

    def test_uniquely_hamiltonian(self):
        assert C.is_uniquely_hamiltonian(F.cycle(7))
        assert not C.is_uniquely_hamiltonian(F.complete(4))
        assert not C.is_hamiltonian(F.petersen())

    def test_bad_cap(self):
        with pytest.raises(PreconditionError):
            C.hamilton_count(F.complete(4), cap=0)
