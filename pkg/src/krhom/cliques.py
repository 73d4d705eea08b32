"""Clique search, maximal K_r-free completion, and the dense class F(r, eps)."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import PreconditionError
from .graph import Graph, VertexSet, iter_bits, lowest_bit, min_degree


def degree_threshold(r: int) -> Fraction:
    """The fraction (2r-5)/(2r-3) that membership in F(r, eps) must beat by eps."""
    return Fraction(2 * r - 5, 2 * r - 3)


@dataclass(frozen=True)
class ThresholdParams:
    r: int
    eps: Fraction

    def __post_init__(self):
        object.__setattr__(self, "eps", Fraction(self.eps))
        if self.r < 3:
            raise PreconditionError(f"r must be at least 3, got {self.r}")
        if self.eps <= 0:
            raise PreconditionError("eps must be positive")
        if self.eps > Fraction(2, 2 * self.r - 3):
            # threshold + eps > 1: no graph qualifies
            raise PreconditionError(f"eps={self.eps} exceeds 2/(2r-3)={Fraction(2, 2 * self.r - 3)}")

    @property
    def threshold(self) -> Fraction:
        return degree_threshold(self.r)


def _clique_in(rows: tuple[int, ...] | list[int], cand: int, size: int) -> int | None:
    """Bitmask of a ``size``-clique inside candidate mask ``cand``, or None."""
    if size == 0:
        return 0
    if cand.bit_count() < size:
        return None
    if size == 1:
        return cand & -cand
    if size == 2:
        for v in iter_bits(cand):
            hit = rows[v] & cand
            if hit:
                return (1 << v) | (hit & -hit)
        return None
    while cand.bit_count() >= size:
        # branch on the candidate with fewest neighbours inside cand
        best, best_deg = -1, -1
        for v in iter_bits(cand):
            d = (rows[v] & cand).bit_count()
            if best < 0 or d < best_deg:
                best, best_deg = v, d
        if best_deg >= size - 1:
            found = _clique_in(rows, rows[best] & cand, size - 1)
            if found is not None:
                return found | (1 << best)
        cand &= ~(1 << best)
    return None


def find_clique(g: Graph, size: int, within: VertexSet | None = None) -> VertexSet | None:
    if size < 1:
        raise PreconditionError("clique size must be at least 1")
    cand = (1 << g.n) - 1 if within is None else within.bits
    if within is not None and within.n != g.n:
        raise PreconditionError("vertex set does not match graph size")
    found = _clique_in(g.rows, cand, size)
    return None if found is None else VertexSet(g.n, found)


def is_kr_free(g: Graph, r: int) -> bool:
    return find_clique(g, r) is None


def _closes_clique(rows, u: int, v: int, r: int) -> bool:
    return _clique_in(rows, rows[u] & rows[v], r - 2) is not None


def _non_edges(n: int, rows) -> list[tuple[int, int]]:
    out = []
    for u in range(n):
        missing = ~rows[u] & ((1 << n) - 1) & ~((1 << (u + 1)) - 1)
        out.extend((u, v) for v in iter_bits(missing))
    return out


def maximal_krfree_completion(
    g: Graph, r: int, order: str = "lex", seed: int | None = None
) -> Graph:
    """Add non-edges greedily while the graph stays K_r-free.

    ``order`` is ``"lex"`` (pairs ``(u, v)``, ``u < v``, lexicographic) or
    ``"random"`` (a seeded shuffle of the same list). One pass suffices:
    a pair rejected once stays rejected because edges are only added.
    """
    if r < 2:
        raise PreconditionError("r must be at least 2")
    if not is_kr_free(g, r):
        raise PreconditionError(f"input already contains K_{r}")
    rows = list(g.rows)
    pairs = _non_edges(g.n, rows)
    if order == "random":
        random.Random(seed).shuffle(pairs)
    elif order != "lex":
        raise PreconditionError(f"unknown edge order {order!r}")
    for u, v in pairs:
        if not _closes_clique(rows, u, v, r):
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return Graph(g.n, rows)


def added_edges(before: Graph, after: Graph) -> list[tuple[int, int]]:
    return [e for e in after.edges() if not before.has_edge(*e)]


def is_maximal_krfree(g: Graph, r: int) -> bool:
    if not is_kr_free(g, r):
        return False
    return all(_closes_clique(g.rows, u, v, r) for u, v in _non_edges(g.n, g.rows))


def in_class_F(g: Graph, p: ThresholdParams) -> bool:
    """K_r-free and ``delta(g) >= ((2r-5)/(2r-3) + eps) * n``, compared exactly."""
    if g.n == 0:
        return False
    if min_degree(g) < (p.threshold + p.eps) * g.n:
        return False
    return is_kr_free(g, p.r)


def cliques_of_size(g: Graph, size: int, within: Iterable[int] | None = None):
    """Yield every ``size``-clique (as a sorted tuple) among ``within``."""
    cand = (1 << g.n) - 1
    if within is not None:
        cand = 0
        for v in within:
            cand |= 1 << v

    def rec(prefix, cand, k):
        if k == 0:
            yield tuple(prefix)
            return
        while cand:
            v = lowest_bit(cand)
            cand &= cand - 1
            yield from rec(prefix + [v], cand & g.row(v), k - 1)

    yield from rec([], cand, size)
