"""Dense simple graphs stored as per-vertex bit rows.

Vertices are the integers ``0..n-1``. A neighbourhood row is a Python int
whose bit ``u`` is set when ``u`` is adjacent; all set algebra reduces to
``&``, ``|`` and ``int.bit_count``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import PreconditionError

DEFAULT_MAX_N = 4096


def iter_bits(bits: int) -> Iterator[int]:
    """Yield the indices of set bits in increasing order."""
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low


def lowest_bit(bits: int) -> int:
    return (bits & -bits).bit_length() - 1


@dataclass(frozen=True)
class VertexSet:
    """An immutable subset of ``0..n-1``."""

    n: int
    bits: int = 0

    def __post_init__(self):
        if self.bits < 0 or self.bits >> self.n:
            raise PreconditionError(f"vertex set exceeds ground size {self.n}")

    @classmethod
    def of(cls, n: int, vertices: Iterable[int]) -> "VertexSet":
        bits = 0
        for v in vertices:
            if not 0 <= v < n:
                raise PreconditionError(f"vertex {v} out of range for n={n}")
            bits |= 1 << v
        return cls(n, bits)

    @classmethod
    def full(cls, n: int) -> "VertexSet":
        return cls(n, (1 << n) - 1)

    @classmethod
    def empty(cls, n: int) -> "VertexSet":
        return cls(n, 0)

    def _check(self, other: "VertexSet") -> None:
        if not isinstance(other, VertexSet):
            raise TypeError(f"expected VertexSet, got {type(other).__name__}")
        if other.n != self.n:
            raise PreconditionError(f"mixing vertex sets over n={self.n} and n={other.n}")

    def __len__(self) -> int:
        return self.bits.bit_count()

    def __bool__(self) -> bool:
        return self.bits != 0

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self.bits)

    def __contains__(self, v: int) -> bool:
        return 0 <= v < self.n and bool(self.bits >> v & 1)

    def __and__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.n, self.bits & other.bits)

    def __or__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.n, self.bits | other.bits)

    def __sub__(self, other: "VertexSet") -> "VertexSet":
        self._check(other)
        return VertexSet(self.n, self.bits & ~other.bits)

    def __le__(self, other: "VertexSet") -> bool:
        self._check(other)
        return self.bits & ~other.bits == 0

    def complement(self) -> "VertexSet":
        return VertexSet(self.n, ((1 << self.n) - 1) & ~self.bits)

    def isdisjoint(self, other: "VertexSet") -> bool:
        self._check(other)
        return self.bits & other.bits == 0

    def first(self) -> int:
        if not self.bits:
            raise PreconditionError("empty vertex set has no first vertex")
        return lowest_bit(self.bits)

    def add(self, v: int) -> "VertexSet":
        return VertexSet.of(self.n, [v]) | self

    def sorted(self) -> list[int]:
        return list(iter_bits(self.bits))

    def __repr__(self) -> str:
        return f"VertexSet({self.sorted()})"


class Graph:
    """Immutable simple undirected graph on ``0..n-1``.

    Construct with :meth:`from_edges`; the raw constructor validates that
    the rows are symmetric and loop-free.
    """

    __slots__ = ("n", "_rows")

    def __init__(self, n: int, rows: Iterable[int], *, max_n: int = DEFAULT_MAX_N):
        if n < 0:
            raise PreconditionError("vertex count must be non-negative")
        if n > max_n:
            raise PreconditionError(f"n={n} exceeds the dense-representation limit {max_n}")
        rows = tuple(rows)
        if len(rows) != n:
            raise PreconditionError(f"expected {n} rows, got {len(rows)}")
        for v, row in enumerate(rows):
            if row < 0 or row >> n:
                raise PreconditionError(f"row {v} has bits outside 0..{n - 1}")
            if row >> v & 1:
                raise PreconditionError(f"loop at vertex {v}")
            for u in iter_bits(row):
                if not rows[u] >> v & 1:
                    raise PreconditionError(f"asymmetric adjacency between {v} and {u}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "_rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], *, max_n: int = DEFAULT_MAX_N) -> "Graph":
        rows = [0] * n
        for u, v in edges:
            if u == v:
                raise PreconditionError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u}, {v}) out of range for n={n}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, rows, max_n=max_n)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n)

    def row(self, v: int) -> int:
        return self._rows[v]

    @property
    def rows(self) -> tuple[int, ...]:
        return self._rows

    def neighbors(self, v: int) -> VertexSet:
        return VertexSet(self.n, self._rows[v])

    def degree(self, v: int) -> int:
        return self._rows[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._rows[u] >> v & 1)

    def vertices(self) -> VertexSet:
        return VertexSet.full(self.n)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, row in enumerate(self._rows):
            yield from ((u, v) for v in iter_bits(row >> (u + 1) << (u + 1)))

    def edge_count(self) -> int:
        return sum(r.bit_count() for r in self._rows) // 2

    def with_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = list(self._rows)
        for u, v in edges:
            if u == v:
                raise PreconditionError(f"self-loop at {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return Graph(self.n, rows)

    def without_edges(self, edges: Iterable[tuple[int, int]]) -> "Graph":
        rows = list(self._rows)
        for u, v in edges:
            rows[u] &= ~(1 << v)
            rows[v] &= ~(1 << u)
        return Graph(self.n, rows)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._rows == other._rows

    def __hash__(self) -> int:
        return hash((self.n, self._rows))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count()})"


def _as_bits(g: Graph, s: VertexSet) -> int:
    if s.n != g.n:
        raise PreconditionError(f"vertex set over n={s.n} used with graph on n={g.n}")
    return s.bits


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise PreconditionError("minimum degree of the empty graph is undefined")
    return min(r.bit_count() for r in g.rows)


def common_neighborhood(g: Graph, u: VertexSet) -> VertexSet:
    """Vertices adjacent to every member of ``u``.

    The intersection over an empty family is rejected rather than taken
    to be the whole vertex set.
    """
    bits = _as_bits(g, u)
    if not bits:
        raise PreconditionError("common neighbourhood of the empty set is undefined")
    acc = (1 << g.n) - 1
    for v in iter_bits(bits):
        acc &= g.row(v)
    return VertexSet(g.n, acc)


def edges_between(g: Graph, x: VertexSet, y: VertexSet) -> int:
    """Number of pairs ``(a, b)`` with ``a`` in x, ``b`` in y, ``ab`` an edge.

    For overlapping sets an edge inside the overlap is counted twice, once
    per orientation.
    """
    xb, yb = _as_bits(g, x), _as_bits(g, y)
    return sum((g.row(a) & yb).bit_count() for a in iter_bits(xb))


def density(g: Graph, x: VertexSet, y: VertexSet) -> Fraction:
    if not x or not y:
        raise PreconditionError("density needs nonempty sets")
    if not x.isdisjoint(y):
        raise PreconditionError("density needs disjoint sets")
    return Fraction(edges_between(g, x, y), len(x) * len(y))


def is_independent(g: Graph, s: VertexSet) -> bool:
    bits = _as_bits(g, s)
    return all(not (g.row(v) & bits) for v in iter_bits(bits))


def internal_edge(g: Graph, s: VertexSet) -> tuple[int, int] | None:
    """Some edge inside ``s`` (lowest endpoints first), or None."""
    bits = _as_bits(g, s)
    for v in iter_bits(bits):
        hit = g.row(v) & bits
        if hit:
            return v, lowest_bit(hit)
    return None


def induced_subgraph(g: Graph, u: VertexSet) -> tuple[Graph, list[int]]:
    """Return ``(g[u], labels)`` where new vertex ``i`` is old vertex ``labels[i]``."""
    bits = _as_bits(g, u)
    if not bits:
        raise PreconditionError("induced subgraph on the empty set")
    labels = list(iter_bits(bits))
    index = {old: new for new, old in enumerate(labels)}
    rows = []
    for old in labels:
        row = 0
        for w in iter_bits(g.row(old) & bits):
            row |= 1 << index[w]
        rows.append(row)
    return Graph(len(labels), rows), labels
