import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from krhom import generators as gen
from krhom.cliques import find_clique
from krhom.errors import PreconditionError, StructureError
from krhom.graph import Graph
from krhom.homomorphism import (
    HomMap,
    Partition,
    are_isomorphic,
    count_hom_partitions,
    homomorphism_violation,
    is_blowup,
    isomorphism,
    min_hom_image_bruteforce,
    quotient,
    relabel,
    verify_homomorphism,
)

from conftest import c5_blowup, graphs
from oracles import brute_min_hom_image


def test_part_collapse_is_a_homomorphism(c5):
    g, parts = c5_blowup(2)
    assert verify_homomorphism(g, HomMap(c5, parts.assignment()))


@given(graphs(max_n=8))
def test_identity_is_a_homomorphism(g):
    assert verify_homomorphism(g, HomMap(g, range(g.n)))


def test_parity_map_onto_k2_fails(c5):
    hm = HomMap(gen.complete(2), [v % 2 for v in range(5)])
    assert not verify_homomorphism(c5, hm)
    # 4 and 0 are both even
    assert homomorphism_violation(c5, hm) == (0, 4)


def test_non_total_map_is_rejected(c5):
    with pytest.raises(PreconditionError):
        verify_homomorphism(c5, HomMap(c5, [0, 1, 2]))


def test_quotient_of_blowup_recovers_pattern(c5):
    g, parts = c5_blowup(3)
    h, hm = quotient(g, parts)
    assert h == c5
    assert verify_homomorphism(g, hm)


@given(graphs(max_n=8))
def test_singleton_quotient_is_identity(g):
    h, hm = quotient(g, Partition.singletons(g.n))
    assert h == g and list(hm.map) == list(range(g.n))


def test_quotient_rejects_dependent_class():
    with pytest.raises(StructureError) as info:
        quotient(gen.complete(3), Partition.from_lists(3, [[0, 1], [2]]))
    assert info.value.witness == {"class": 0, "edge": [0, 1]}


def test_is_blowup_examples(c5):
    g, parts = c5_blowup(4)
    assert is_blowup(g, parts)
    # parts of size 4: deleting one cross edge leaves 15 of 16
    cut = g.without_edges([(0, 4)])
    assert not is_blowup(cut, parts)
    assert is_blowup(cut, Partition.singletons(cut.n))


def test_partition_guards():
    with pytest.raises(PreconditionError):
        Partition.from_lists(3, [[0, 1], [1, 2]])
    with pytest.raises(PreconditionError):
        Partition.from_lists(3, [[0], []])


def test_oracle_examples(c5, k33):
    h, hm = min_hom_image_bruteforce(c5, 3, 5)
    assert h.n == 5 and are_isomorphic(h, c5)
    assert brute_min_hom_image(c5, 3, 5) == 5
    h, hm = min_hom_image_bruteforce(k33, 3, 2)
    assert h == gen.complete(2) and verify_homomorphism(k33, hm)
    g, _ = c5_blowup(2)
    h, hm = min_hom_image_bruteforce(g, 3, 5)
    assert h.n == 5 and verify_homomorphism(g, hm)


def test_oracle_returns_none_when_k_max_too_small(c5):
    assert min_hom_image_bruteforce(c5, 3, 4) is None


def test_oracle_size_guard():
    with pytest.raises(PreconditionError):
        min_hom_image_bruteforce(Graph.empty(15), 3, 2)


@settings(max_examples=30)
@given(graphs(max_n=6), st.integers(3, 4))
def test_oracle_matches_map_enumeration(g, r):
    if find_clique(g, r) is not None:
        assert min_hom_image_bruteforce(g, r, g.n) is None
        return
    found = min_hom_image_bruteforce(g, r, g.n)
    h, hm = found
    assert h.n == brute_min_hom_image(g, r, g.n)
    assert verify_homomorphism(g, hm) and find_clique(h, r) is None
    if h.n > 1:
        assert min_hom_image_bruteforce(g, r, h.n - 1) is None


def test_count_partitions_matches_bell_numbers():
    assert [count_hom_partitions(Graph.empty(5), k) for k in range(1, 6)] == [1, 15, 25, 10, 1]


@settings(max_examples=30)
@given(graphs(max_n=6), st.data())
def test_blowup_preserves_clique_containment(h, data):
    sizes = data.draw(st.lists(st.integers(1, 3), min_size=h.n, max_size=h.n))
    g, parts = gen.blow_up(h, sizes)
    assert is_blowup(g, parts)
    assert quotient(g, parts)[0] == h
    for r in (2, 3, 4):
        assert (find_clique(g, r) is None) == (find_clique(h, r) is None)


@given(graphs(max_n=6), st.data())
def test_quotient_always_homomorphic(g, data):
    # greedy colouring gives a partition into independent sets
    colour = [0] * g.n
    order = data.draw(st.permutations(range(g.n)))
    for v in order:
        used = {colour[u] for u in g.neighbors(v) if order.index(u) < order.index(v)}
        colour[v] = next(c for c in itertools.count() if c not in used)
    relabelled = {c: i for i, c in enumerate(dict.fromkeys(colour))}
    p = Partition.from_map([relabelled[c] for c in colour])
    h, hm = quotient(g, p)
    assert verify_homomorphism(g, hm)


def test_isomorphism_small():
    c5 = gen.cycle(5)
    perm = [0, 2, 4, 1, 3]
    assert isomorphism(relabel(c5, perm), c5) is not None
    assert are_isomorphic(gen.andrasfai(2), c5)
    assert not are_isomorphic(gen.path(5), c5)
    with pytest.raises(PreconditionError):
        isomorphism(gen.cycle(9), gen.cycle(9))


def test_hommap_json_round_trip(c5):
    g, parts = c5_blowup(2)
    h, hm = quotient(g, parts)
    data = hm.to_json()
    assert data["map"] == parts.assignment()
    back = HomMap.from_json(data)
    assert back == hm
