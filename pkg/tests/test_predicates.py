"""Tests for pruning predicates, their extension tests and string forms."""

import pickle

import pytest
from hypothesis import given, settings, strategies as st

from pancycle import families as F
from pancycle import graph as G
from pancycle import predicates as P
from pancycle.errors import PredicateMisuseError


@st.composite
def graphs(draw, min_n=0, max_n=7):
    n = draw(st.integers(min_n, max_n))
    pairs = [(i, j) for j in range(n) for i in range(j)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return G.build(n, [p for p, keep in zip(pairs, chosen) if keep])


HEREDITARY = [
    P.st_closed(4, 2),
    P.st_closed(3, 1),
    P.st_closed(5, 3),
    P.triangle_free(),
    P.alpha_at_most_k(2),
    P.alpha_at_most_k(3),
]


class TestExtensionTests:
    @settings(max_examples=150)
    @given(graphs(), st.sampled_from(HEREDITARY), st.data())
    def test_extension_agrees_with_the_full_check(self, parent, pred, data):
        neighborhood = data.draw(st.integers(0, (1 << parent.n) - 1))
        child = G.add_vertex(parent, neighborhood)
        test = pred.extender(parent)
        if pred(parent):
            got = True if test is None else test(neighborhood)
            assert got == pred(child)
        else:
            assert not pred(child)

    def test_no_test_below_threshold(self):
        assert P.st_closed(4, 2).extender(G.empty(2)) is None
        assert P.st_closed(4, 2).extender(G.empty(3)) is not None

    def test_filters_have_no_extension(self):
        assert P.connected().extender(F.cycle(5)) is None


class TestPredicates:
    @pytest.mark.parametrize(
        "pred, g, holds",
        [
            (P.st_closed(4, 2), G.empty(3), True),
            (P.st_closed(4, 2), G.empty(4), False),
            (P.triangle_free(), F.cycle(5), True),
            (P.alpha_at_most_k(2), F.cycle(5), True),
            (P.alpha_at_most_k(2), F.cycle(7), False),
            (P.connected(), G.empty(0), False),
            (P.two_connected(), F.barbell(8), False),
            (P.min_degree_at_least(2), F.cycle(4), True),
            (P.min_degree_at_least(1), G.empty(0), False),
            (P.min_size_at_least(5), F.cycle(5), True),
            (P.max_size_at_most(4), F.cycle(5), False),
            (P.size_between(4, 6), F.cycle(5), True),
            (P.nonbipartite(), F.cycle(5), True),
            (P.hamiltonian(), F.petersen(), False),
            (P.hamiltonian(), F.complete(2), False),
        ],
    )
    def test_holds(self, pred, g, holds):
        assert pred(g) is holds

    def test_predicates_pickle(self):
        pred = pickle.loads(pickle.dumps(P.st_closed(4, 2)))
        assert pred.name == "st_closed:4:2"
        assert pred(F.cycle(5))


class TestParse:
    @pytest.mark.parametrize(
        "text, name, hereditary",
        [
            ("st_closed:4:2", "st_closed:4:2", True),
            ("triangle_free", "triangle_free", True),
            ("alpha_at_most:3", "alpha_at_most:3", True),
            ("connected", "connected", False),
            (" two_connected ", "two_connected", False),
            ("size_between:3:9", "size_between:3:9", False),
            ("hamiltonian", "hamiltonian", False),
        ],
    )
    def test_forms(self, text, name, hereditary):
        pred = P.parse_predicate(text)
        assert pred.name == name
        assert pred.hereditary is hereditary

    def test_unknown(self):
        with pytest.raises(PredicateMisuseError):
            P.parse_predicate("planar")

    def test_pruner_must_be_hereditary(self):
        assert P.parse_pruner("triangle_free").hereditary
        with pytest.raises(PredicateMisuseError):
            P.parse_pruner("connected")

    def test_listed_forms_cover_the_hereditary_names(self):
        forms = P.get_predicate_forms()
        assert "st_closed:N:N" in forms
        assert "two_connected" in forms
        assert P.get_hereditary_names() == ["st_closed:S:T", "triangle_free", "alpha_at_most:K"]
