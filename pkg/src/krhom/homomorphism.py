"""Homomorphisms, quotients by vertex partitions, and a brute-force oracle."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cliques import _clique_in
from .errors import PreconditionError, StructureError
from .graph import Graph, VertexSet, internal_edge

ORACLE_MAX_N = 14
ISOMORPHISM_MAX_N = 8


@dataclass(frozen=True)
class Partition:
    """Ordered disjoint nonempty classes whose union is ``ground``."""

    classes: tuple[VertexSet, ...]
    ground: VertexSet

    def __post_init__(self):
        object.__setattr__(self, "classes", tuple(self.classes))
        seen = 0
        for i, c in enumerate(self.classes):
            if c.n != self.ground.n:
                raise PreconditionError(f"class {i} is over a different vertex range")
            if not c:
                raise PreconditionError(f"class {i} is empty")
            if seen & c.bits:
                raise PreconditionError(f"class {i} overlaps an earlier class")
            seen |= c.bits
        if seen != self.ground.bits:
            raise PreconditionError("classes do not cover the ground set exactly")

    @classmethod
    def from_lists(cls, n: int, classes: Iterable[Iterable[int]]) -> "Partition":
        cs = tuple(VertexSet.of(n, c) for c in classes)
        ground = 0
        for c in cs:
            ground |= c.bits
        return cls(cs, VertexSet(n, ground))

    @classmethod
    def from_map(cls, assignment: Sequence[int]) -> "Partition":
        """Fibres of ``assignment``, ordered by class index (which must be 0..k-1)."""
        n = len(assignment)
        k = max(assignment, default=-1) + 1
        bins = [[] for _ in range(k)]
        for v, c in enumerate(assignment):
            bins[c].append(v)
        return cls.from_lists(n, bins)

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls.from_lists(n, [[v] for v in range(n)])

    def __len__(self) -> int:
        return len(self.classes)

    def assignment(self) -> list[int]:
        """Class index per vertex; -1 for vertices outside ``ground``."""
        out = [-1] * self.ground.n
        for i, c in enumerate(self.classes):
            for v in c:
                out[v] = i
        return out

    def as_lists(self) -> list[list[int]]:
        return [c.sorted() for c in self.classes]


@dataclass(frozen=True)
class HomMap:
    image_graph: Graph
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))

    def to_json(self) -> dict:
        return {"image": [list(e) for e in self.image_graph.edges()], "map": list(self.map)}

    @classmethod
    def from_json(cls, data: dict, image_n: int | None = None) -> "HomMap":
        """Inverse of :meth:`to_json`; the image size defaults to ``max(map)+1``."""
        mp = [int(x) for x in data["map"]]
        edges = [tuple(int(x) for x in e) for e in data["image"]]
        if image_n is None:
            image_n = max([*mp, *(x for e in edges for x in e)], default=-1) + 1
        return cls(Graph.from_edges(image_n, edges), tuple(mp))


def _check_total(g: Graph, hm: HomMap) -> None:
    if len(hm.map) != g.n:
        raise PreconditionError(f"map has {len(hm.map)} entries for {g.n} vertices")
    h = hm.image_graph.n
    for v, x in enumerate(hm.map):
        if not 0 <= x < h:
            raise PreconditionError(f"vertex {v} maps to {x}, outside 0..{h - 1}")


def homomorphism_violation(g: Graph, hm: HomMap) -> tuple[int, int] | None:
    """First edge of ``g`` whose image is not an edge, or None."""
    _check_total(g, hm)
    h = hm.image_graph
    for u, v in g.edges():
        if not h.has_edge(hm.map[u], hm.map[v]):
            return u, v
    return None


def verify_homomorphism(g: Graph, hm: HomMap) -> bool:
    return homomorphism_violation(g, hm) is None


def _class_unions(g: Graph, p: Partition) -> list[int]:
    out = []
    for c in p.classes:
        acc = 0
        for v in c:
            acc |= g.row(v)
        out.append(acc)
    return out


def quotient(g: Graph, p: Partition) -> tuple[Graph, HomMap]:
    """Collapse every class to a vertex; classes are adjacent iff any cross edge exists.

    For a blow-up partition this inverts the blow-up; for any partition into
    independent sets it is the smallest graph making the collapse a
    homomorphism.
    """
    if p.ground.n != g.n or p.ground.bits != (1 << g.n) - 1:
        raise PreconditionError("partition must cover every vertex")
    for i, c in enumerate(p.classes):
        e = internal_edge(g, c)
        if e is not None:
            raise StructureError(f"class {i} is not independent (edge {e[0]}-{e[1]})",
                                 {"class": i, "edge": list(e)})
    unions = _class_unions(g, p)
    k = len(p.classes)
    rows = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            if unions[i] & p.classes[j].bits:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
    h = Graph(k, rows)
    return h, HomMap(h, tuple(p.assignment()))


def is_blowup(g: Graph, p: Partition) -> bool:
    """Every class independent and every class pair complete or empty."""
    if p.ground.n != g.n or p.ground.bits != (1 << g.n) - 1:
        raise PreconditionError("partition must cover every vertex")
    union, inter = [], []
    full = (1 << g.n) - 1
    for c in p.classes:
        u, x = 0, full
        for v in c:
            u |= g.row(v)
            x &= g.row(v)
        if u & c.bits:
            return False
        union.append(u)
        inter.append(x)
    for i, a in enumerate(p.classes):
        for j in range(i + 1, len(p.classes)):
            b = p.classes[j].bits
            if union[i] & b and b & ~inter[i]:
                return False
    return True


def _quotient_has_clique(rows: list[int], k_used: int, touched: int, r: int) -> bool:
    # any new K_r must contain class ``touched``
    return _clique_in(rows, rows[touched] & ((1 << k_used) - 1), r - 1) is not None


def min_hom_image_bruteforce(g: Graph, r: int, k_max: int) -> tuple[Graph, HomMap] | None:
    """Smallest K_r-free quotient of ``g`` over partitions into independent sets.

    Tries ``k = 1..k_max`` in order and, for each, enumerates restricted
    growth strings with exactly ``k`` blocks. A branch is cut as soon as a
    block stops being independent or the partial quotient contains K_r;
    quotient edges only accumulate, so the cut is sound.
    """
    n = g.n
    if n > ORACLE_MAX_N:
        raise PreconditionError(f"oracle limited to n <= {ORACLE_MAX_N}, got {n}")
    if n == 0:
        return None
    adj = g.rows
    for k in range(1, min(k_max, n) + 1):
        found = _search_exact_k(adj, n, r, k)
        if found is not None:
            p = Partition.from_map(found)
            return quotient(g, p)
    return None


def _search_exact_k(adj, n: int, r: int, k: int) -> list[int] | None:
    members = [0] * k
    qrows = [0] * k
    assign = [0] * n

    def rec(v: int, used: int) -> bool:
        if v == n:
            return used == k
        if k - used > n - v:
            return False
        bit = 1 << v
        for c in range(min(used + 1, k)):
            if members[c] & adj[v]:
                continue
            saved_m = members[c]
            saved_q = qrows[:]
            members[c] |= bit
            new_used = max(used, c + 1)
            for d in range(new_used):
                if d != c and adj[v] & members[d]:
                    qrows[c] |= 1 << d
                    qrows[d] |= 1 << c
            if r >= 2 and _quotient_has_clique(qrows, new_used, c, r):
                ok = False
            else:
                assign[v] = c
                ok = rec(v + 1, new_used)
            if ok:
                return True
            members[c] = saved_m
            qrows[:] = saved_q
        return False

    return assign[:] if rec(0, 0) else None


def count_hom_partitions(g: Graph, k: int) -> int:
    """Number of partitions of V(g) into exactly ``k`` independent blocks."""
    n, adj = g.n, g.rows
    members = [0] * k

    def rec(v, used):
        if v == n:
            return int(used == k)
        if k - used > n - v:
            return 0
        total = 0
        for c in range(min(used + 1, k)):
            if members[c] & adj[v]:
                continue
            members[c] |= 1 << v
            total += rec(v + 1, max(used, c + 1))
            members[c] &= ~(1 << v)
        return total

    return rec(0, 0)


def isomorphism(g: Graph, h: Graph) -> list[int] | None:
    """A vertex bijection ``g -> h`` preserving adjacency, by trying all permutations."""
    if g.n != h.n or g.edge_count() != h.edge_count():
        return None
    if g.n > ISOMORPHISM_MAX_N:
        raise PreconditionError(f"brute-force isomorphism limited to n <= {ISOMORPHISM_MAX_N}")
    if sorted(g.degree(v) for v in range(g.n)) != sorted(h.degree(v) for v in range(h.n)):
        return None
    edges = list(g.edges())
    for perm in itertools.permutations(range(h.n)):
        if all(g.degree(v) == h.degree(perm[v]) for v in range(g.n)) and \
                all(h.has_edge(perm[a], perm[b]) for a, b in edges):
            return list(perm)
    return None


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return isomorphism(g, h) is not None


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed ``perm[v]``."""
    return Graph.from_edges(g.n, [(perm[a], perm[b]) for a, b in g.edges()])


def preimage_bits(hm: HomMap) -> list[int]:
    out = [0] * hm.image_graph.n
    for v, x in enumerate(hm.map):
        out[x] |= 1 << v
    return out


def image_is_onto(hm: HomMap) -> bool:
    return all(preimage_bits(hm))

