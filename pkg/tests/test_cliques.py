import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from krhom import generators as gen
from krhom.cliques import (
    ThresholdParams,
    find_clique,
    in_class_F,
    is_kr_free,
    is_maximal_krfree,
    maximal_krfree_completion,
)
from krhom.errors import PreconditionError
from krhom.graph import Graph, VertexSet

from conftest import c5_blowup, graphs
from oracles import brute_has_clique, brute_is_maximal_krfree, naive_lex_completion


def test_find_clique_examples(c5):
    assert find_clique(gen.complete(4), 4).sorted() == [0, 1, 2, 3]
    assert find_clique(c5, 3) is None
    t = gen.turan(12, 3)
    assert find_clique(t, 4) is None
    assert not brute_has_clique(t, 4)
    tri = find_clique(t, 3).sorted()
    # one vertex from each part of size 4
    assert sorted(v // 4 for v in tri) == [0, 1, 2]


def test_find_clique_respects_within():
    g = gen.complete(5)
    got = find_clique(g, 2, VertexSet.of(5, [3, 4]))
    assert got.sorted() == [3, 4]
    assert find_clique(g, 3, VertexSet.of(5, [3, 4])) is None


@given(graphs(max_n=10), st.integers(1, 5))
def test_find_clique_matches_exhaustive_search(g, size):
    got = find_clique(g, size)
    assert (got is not None) == brute_has_clique(g, size)
    if got is not None:
        vs = got.sorted()
        assert len(vs) == size
        assert all(g.has_edge(a, b) for a, b in itertools.combinations(vs, 2))


def test_completion_examples(c5, k33):
    assert maximal_krfree_completion(c5, 3) == c5
    assert maximal_krfree_completion(k33, 3) == k33
    # lexicographic greedy on the empty graph keeps every pair through 0
    done = maximal_krfree_completion(Graph.empty(4), 3)
    assert sorted(done.edges()) == naive_lex_completion(4, [], 3) == [(0, 1), (0, 2), (0, 3)]


def test_completion_rejects_graph_with_clique():
    with pytest.raises(PreconditionError):
        maximal_krfree_completion(gen.complete(3), 3)


@settings(max_examples=40)
@given(graphs(max_n=9), st.integers(3, 4), st.sampled_from(["lex", "random"]), st.integers(0, 2**16))
def test_completion_properties(g, r, order, seed):
    if brute_has_clique(g, r):
        return
    done = maximal_krfree_completion(g, r, order=order, seed=seed)
    assert all(done.has_edge(u, v) for u, v in g.edges())
    assert brute_is_maximal_krfree(done, r)
    assert is_maximal_krfree(done, r)
    assert maximal_krfree_completion(done, r, order=order, seed=seed) == done
    if order == "lex":
        assert sorted(done.edges()) == naive_lex_completion(g.n, list(g.edges()), r)


@given(graphs(max_n=8), st.integers(3, 4))
def test_is_maximal_matches_oracle(g, r):
    assert is_maximal_krfree(g, r) == brute_is_maximal_krfree(g, r)


def test_in_class_F_examples():
    g, _ = c5_blowup(10)
    assert in_class_F(g, ThresholdParams(3, Fraction(1, 15)))
    assert not in_class_F(g, ThresholdParams(3, Fraction(1, 14)))
    assert not in_class_F(gen.complete(4), ThresholdParams(4, Fraction(1, 100)))


def test_threshold_params_guards():
    with pytest.raises(PreconditionError):
        ThresholdParams(2, Fraction(1, 10))
    with pytest.raises(PreconditionError):
        ThresholdParams(3, Fraction(0))
    with pytest.raises(PreconditionError):
        ThresholdParams(3, Fraction(3, 4))
    assert ThresholdParams(3, Fraction(2, 3)).threshold == Fraction(1, 3)


def test_completion_never_lowers_membership():
    g, _ = c5_blowup(4)
    sparse = g.without_edges([next(g.edges())])
    p = ThresholdParams(3, Fraction(1, 20))
    done = maximal_krfree_completion(sparse, 3)
    assert is_kr_free(done, 3)
    assert min(done.degree(v) for v in range(done.n)) >= min(sparse.degree(v) for v in range(sparse.n))
    assert in_class_F(done, p) or not in_class_F(sparse, p)
