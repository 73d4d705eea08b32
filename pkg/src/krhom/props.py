"""Common-neighbourhood facts for maximal K_r-free graphs, with witnesses.

Three checks, each constructive:

* two non-adjacent vertices share at least ``r*delta - (r-2)*n`` neighbours;
* inside that common neighbourhood, a K_{r-2} survives the removal of any
  set smaller than ``eps*n`` (dense maximal graphs only);
* every vertex set of size ``((2r-6)/(2r-3) + eps) * n`` contains a K_{r-2}.

The witness finders run the greedy selection (lowest index first) and fall
back to exact search if the greedy ever empties its candidate pool, so the
caller can tell "greedy stuck but witness exists" from "no witness".
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .cliques import ThresholdParams, _clique_in, in_class_F, is_maximal_krfree
from .errors import PreconditionError
from .graph import Graph, VertexSet, iter_bits, lowest_bit, min_degree


@dataclass(frozen=True)
class CliqueWitness:
    vertices: VertexSet
    context: str
    method: str = "greedy"
    greedy_stuck: bool = False

    def sorted(self) -> list[int]:
        return self.vertices.sorted()


def _require_nonadjacent(g: Graph, u: int, v: int) -> None:
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise PreconditionError(f"vertices {u}, {v} out of range")
    if u == v:
        raise PreconditionError("u and v must be distinct")
    if g.has_edge(u, v):
        raise PreconditionError(f"{u} and {v} are adjacent")


def nonadjacent_bound(g: Graph, r: int) -> int:
    return r * min_degree(g) - (r - 2) * g.n


def check_nonadjacent_bound(g: Graph, r: int, u: int, v: int, *, check_maximal: bool = True) -> tuple[int, int]:
    """Return ``(|N(u) & N(v)|, r*delta - (r-2)*n)`` for a non-adjacent pair."""
    _require_nonadjacent(g, u, v)
    if check_maximal and not is_maximal_krfree(g, r):
        raise PreconditionError(f"graph is not maximal K_{r}-free")
    actual = (g.row(u) & g.row(v)).bit_count()
    return actual, nonadjacent_bound(g, r)


def _greedy_clique(g: Graph, host: int, size: int) -> list[int] | None:
    chosen = []
    cand = host
    for _ in range(size):
        if not cand:
            return None
        w = lowest_bit(cand)
        chosen.append(w)
        cand &= g.row(w)
    return chosen


def _witness(g: Graph, host: int, size: int, context: str, method: str) -> CliqueWitness | None:
    if method not in ("auto", "greedy", "exact"):
        raise PreconditionError(f"unknown method {method!r}")
    stuck = False
    if method in ("auto", "greedy"):
        chosen = _greedy_clique(g, host, size)
        if chosen is not None:
            return CliqueWitness(VertexSet.of(g.n, chosen), context, "greedy")
        if method == "greedy":
            return None
        stuck = True
    found = _clique_in(g.rows, host, size)
    if found is None:
        return None
    return CliqueWitness(VertexSet(g.n, found), context, "exact", greedy_stuck=stuck)


def find_kr2_avoiding(
    g: Graph,
    r: int,
    u: int,
    v: int,
    avoid: VertexSet,
    eps,
    *,
    method: str = "auto",
    check: bool = True,
) -> CliqueWitness | None:
    """A K_{r-2} inside ``(N(u) & N(v)) - avoid``; None if none exists.

    Requires ``g`` maximal K_r-free in F(r, eps), ``uv`` a non-edge and
    ``|avoid| < eps*n``. ``check=False`` skips the costly graph-level
    checks when the caller already established them.
    """
    eps = Fraction(eps)
    _require_nonadjacent(g, u, v)
    if avoid.n != g.n:
        raise PreconditionError("avoid set does not match graph size")
    if len(avoid) >= eps * g.n:
        raise PreconditionError(f"|avoid|={len(avoid)} is not below eps*n={eps * g.n}")
    if check:
        if not in_class_F(g, ThresholdParams(r, eps)):
            raise PreconditionError(f"graph is not in F({r}, {eps})")
        if not is_maximal_krfree(g, r):
            raise PreconditionError(f"graph is not maximal K_{r}-free")
    host = g.row(u) & g.row(v) & ~avoid.bits
    return _witness(g, host, r - 2, f"N({u}) & N({v}) minus {len(avoid)} avoided", method)


def set_threshold_ok(n: int, size: int, r: int, eps) -> bool:
    """``size >= ((2r-6)/(2r-3) + eps) * n`` exactly."""
    return size * (2 * r - 3) >= ((2 * r - 6) + Fraction(eps) * (2 * r - 3)) * n


def min_set_size(n: int, r: int, eps) -> int:
    return math.ceil((Fraction(2 * r - 6, 2 * r - 3) + Fraction(eps)) * n)


def find_kr2_in_set(
    g: Graph, r: int, eps, z: VertexSet, *, method: str = "auto", check: bool = True
) -> CliqueWitness | None:
    """A K_{r-2} inside a large set ``z`` of a graph in F(r, eps)."""
    eps = Fraction(eps)
    if z.n != g.n:
        raise PreconditionError("set does not match graph size")
    if not set_threshold_ok(g.n, len(z), r, eps):
        raise PreconditionError(
            f"|Z|={len(z)} is below ((2r-6)/(2r-3)+eps)*n={(Fraction(2 * r - 6, 2 * r - 3) + eps) * g.n}"
        )
    if check and not in_class_F(g, ThresholdParams(r, eps)):
        raise PreconditionError(f"graph is not in F({r}, {eps})")
    return _witness(g, z.bits, r - 2, f"set of size {len(z)}", method)


def verify_clique_witness(g: Graph, w: CliqueWitness, size: int, host: VertexSet) -> bool:
    """Independent re-check: right size, pairwise adjacent, inside ``host``."""
    vs = w.sorted()
    if len(vs) != size or not all(x in host for x in vs):
        return False
    return all(g.has_edge(a, b) for i, a in enumerate(vs) for b in vs[i + 1:])


@dataclass
class PropCounts:
    checked: int = 0
    violations: int = 0
    greedy_stuck: int = 0
    first_counterexample: dict | None = None

    def fail(self, example: dict) -> None:
        self.violations += 1
        if self.first_counterexample is None:
            self.first_counterexample = example


@dataclass
class PropsSummary:
    n: int
    r: int
    eps: Fraction
    nonadjacent_bound: PropCounts = field(default_factory=PropCounts)
    avoiding_clique: PropCounts = field(default_factory=PropCounts)
    clique_in_set: PropCounts = field(default_factory=PropCounts)

    @property
    def ok(self) -> bool:
        return not (self.nonadjacent_bound.violations or self.avoiding_clique.violations
                    or self.clique_in_set.violations)

    def rows(self):
        for name in ("nonadjacent_bound", "avoiding_clique", "clique_in_set"):
            c = getattr(self, name)
            yield name, c


def run_proposition_suite(g: Graph, r: int, eps, *, random_sets: int = 8, seed: int = 0) -> PropsSummary:
    """Check all three facts over every non-adjacent pair and a family of sets.

    Avoid sets per pair: the empty set and the lowest-index
    ``ceil(eps*n) - 1`` common neighbours (the adversarial choice). Large
    sets: every neighbourhood, its lowest-index prefix of minimum admissible
    size, and ``random_sets`` seeded uniform subsets of that size.
    """
    eps = Fraction(eps)
    params = ThresholdParams(r, eps)
    if not in_class_F(g, params):
        raise PreconditionError(f"graph is not in F({r}, {eps})")
    if not is_maximal_krfree(g, r):
        raise PreconditionError(f"graph is not maximal K_{r}-free")
    summary = PropsSummary(g.n, r, eps)
    bound = nonadjacent_bound(g, r)
    avoid_cap = math.ceil(eps * g.n) - 1
    full = (1 << g.n) - 1

    for u in range(g.n):
        for v in iter_bits(~g.row(u) & full & ~((1 << (u + 1)) - 1)):
            common = g.row(u) & g.row(v)
            c = summary.nonadjacent_bound
            c.checked += 1
            if common.bit_count() < bound:
                c.fail({"u": u, "v": v, "actual": common.bit_count(), "bound": bound})
            prefix = 0
            for w in list(iter_bits(common))[:avoid_cap]:
                prefix |= 1 << w
            for avoid_bits in {0, prefix}:
                avoid = VertexSet(g.n, avoid_bits)
                w = find_kr2_avoiding(g, r, u, v, avoid, eps, check=False)
                c = summary.avoiding_clique
                c.checked += 1
                host = VertexSet(g.n, common & ~avoid_bits)
                if w is None or not verify_clique_witness(g, w, r - 2, host):
                    c.fail({"u": u, "v": v, "avoid": avoid.sorted()})
                elif w.greedy_stuck:
                    c.greedy_stuck += 1

    size = min_set_size(g.n, r, eps)
    sets = []
    for v in range(g.n):
        nb = g.neighbors(v)
        sets.append(nb)
        sets.append(VertexSet.of(g.n, nb.sorted()[:size]))
    rng = random.Random(seed)
    for _ in range(random_sets):
        sets.append(VertexSet.of(g.n, rng.sample(range(g.n), size)))
    for z in sets:
        if not set_threshold_ok(g.n, len(z), r, eps):
            continue
        w = find_kr2_in_set(g, r, eps, z, check=False)
        c = summary.clique_in_set
        c.checked += 1
        if w is None or not verify_clique_witness(g, w, r - 2, z):
            c.fail({"z": z.sorted()})
        elif w.greedy_stuck:
            c.greedy_stuck += 1
    return summary
