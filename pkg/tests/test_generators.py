from fractions import Fraction

import pytest

from krhom import generators as gen
from krhom.cliques import ThresholdParams, find_clique, in_class_F, is_kr_free, is_maximal_krfree
from krhom.errors import PreconditionError
from krhom.graph import Graph, min_degree
from krhom.homomorphism import are_isomorphic, is_blowup, quotient


def regular(g, d):
    return all(g.degree(v) == d for v in range(g.n))


def test_blow_up_examples():
    c5 = gen.cycle(5)
    assert gen.blow_up(c5, [1] * 5)[0] == c5
    g, parts = gen.blow_up(c5, [2] * 5)
    assert g.n == 10 and regular(g, 4) and is_blowup(g, parts)
    assert gen.blow_up(gen.complete(2), [3, 3])[0] == gen.complete_multipartite([3, 3])
    with pytest.raises(PreconditionError):
        gen.blow_up(c5, [1, 2])


def test_blow_up_round_trip():
    h = gen.petersen()
    sizes = [1, 2, 3, 1, 2, 3, 1, 2, 3, 1]
    g, parts = gen.blow_up(h, sizes)
    assert quotient(g, parts)[0] == h


def test_join_examples():
    w5 = gen.join(gen.complete(1), gen.cycle(5))
    assert w5.n == 6 and w5.degree(0) == 5
    assert all(w5.degree(v) == 3 for v in range(1, 6))
    c5 = gen.cycle(5)
    assert gen.join(Graph.empty(0), c5) == c5


@pytest.mark.parametrize("r", [4, 5])
def test_join_with_clique_is_kr_free_iff_triangle_free(r):
    c5 = gen.cycle(5)
    assert is_kr_free(gen.join(gen.complete(r - 3), c5), r)
    with_triangle = gen.complete(3)
    assert not is_kr_free(gen.join(gen.complete(r - 3), with_triangle), r)


def test_turan_examples():
    t = gen.turan(6, 3)
    assert t == gen.complete_multipartite([2, 2, 2]) and min_degree(t) == 4
    assert are_isomorphic(gen.turan(4, 2), gen.cycle(4))
    assert gen.turan(3, 3) == gen.complete(3)
    assert sorted(len(c) for c in gen.turan_parts(11, 3).classes) == [3, 4, 4]


def test_andrasfai_examples():
    assert gen.andrasfai(1) == gen.complete(2)
    assert are_isomorphic(gen.andrasfai(2), gen.cycle(5))
    a3 = gen.andrasfai(3)
    assert a3.n == 8 and regular(a3, 3) and is_kr_free(a3, 3)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_andrasfai_maximal_triangle_free(k):
    g = gen.andrasfai(k)
    assert g.n == 3 * k - 1 and regular(g, k) and is_maximal_krfree(g, 3)


def test_kneser_examples():
    p = gen.kneser(5, 2)
    assert p.n == 10 and regular(p, 3) and is_kr_free(p, 3)
    assert gen.kneser(3, 1) == gen.complete(3)
    k42 = gen.kneser(4, 2)
    assert k42.n == 6 and k42.edge_count() == 3


def test_goddard_lyle_examples():
    h = gen.cycle(5)
    assert gen.goddard_lyle(3, h, [], [2] * 5) == gen.blow_up(h, [2] * 5)[0]
    a, b = gen.balanced_sizes(4, Fraction(1, 40), h)
    g = gen.goddard_lyle(4, h, [a], [b] * 5)
    assert (a, b) == (3, 1)
    assert Fraction(min_degree(g), g.n) == Fraction(3, 5) + Fraction(1, 40)
    assert in_class_F(g, ThresholdParams(4, Fraction(1, 40)))
    assert not in_class_F(g, ThresholdParams(4, Fraction(1, 39)))
    a, b = gen.balanced_sizes(5, Fraction(1, 77), h)
    g = gen.goddard_lyle(5, h, [a, a], [b] * 5)
    assert Fraction(min_degree(g), g.n) == Fraction(8, 11) == Fraction(5, 7) + Fraction(1, 77)
    assert in_class_F(g, ThresholdParams(5, Fraction(1, 77)))


def test_balanced_sizes_infeasible():
    with pytest.raises(PreconditionError):
        gen.balanced_sizes(4, Fraction(1, 30), gen.cycle(5), max_n=200)
    with pytest.raises(PreconditionError):
        gen.balanced_sizes(4, Fraction(1, 40), gen.complete(3))


def test_balanced_sizes_respects_min_n():
    a, b = gen.balanced_sizes(4, Fraction(1, 40), gen.cycle(5), min_n=60)
    assert a + 5 * b >= 60 and a == 3 * b


@pytest.mark.parametrize("name, n, m", [
    ("C5", 5, 5), ("K4", 4, 6), ("E3", 3, 0), ("K3,3", 6, 9), ("T12,3", 12, 48),
    ("And3", 8, 12), ("Kn5,2", 10, 15), ("Petersen", 10, 15), ("C5*20", 100, 2000),
    ("GL4,3:C5*1", 8, 20),
])
def test_named_graphs(name, n, m):
    g = gen.named_graph(name)
    assert (g.n, g.edge_count()) == (n, m)


def test_named_graph_unknown():
    with pytest.raises(PreconditionError):
        gen.named_graph("Q7")


def test_random_triangle_free_is_deterministic_and_free():
    a = gen.random_triangle_free(30, seed=3)
    assert a == gen.random_triangle_free(30, seed=3)
    assert find_clique(a, 3) is None and a.edge_count() > 0
