"""Deterministic test graphs with known structure.

Andrásfai convention: ``andrasfai(k)`` is the Cayley graph on Z_{3k-1}
with connection set ``{k, ..., 2k-1}``, so ``andrasfai(1) = K_2`` and
``andrasfai(2) = C_5``.

Named graphs (used by the CLI and the sweep harness)::

    C5  K4  E6            cycle, complete, edgeless
    T12,3                 Turán graph
    And3                  Andrásfai graph
    Kn5,2  Petersen       Kneser graph
    C5*10                 balanced blow-up of a named pattern
    GL4,3:C5*1            K_{r-3} (each apex blown up to 3) joined with C5*1
"""

from __future__ import annotations

import itertools
import random
import re
from fractions import Fraction
from typing import Sequence

from .cliques import degree_threshold, is_kr_free
from .errors import PreconditionError
from .graph import Graph, min_degree
from .homomorphism import Partition


def cycle(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def empty(n: int) -> Graph:
    return Graph.empty(n)


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    return blow_up(complete(len(sizes)), sizes)[0]


def blow_up(h: Graph, sizes: Sequence[int]) -> tuple[Graph, Partition]:
    """Replace vertex ``x`` of ``h`` by ``sizes[x]`` independent copies.

    Parts are laid out contiguously in vertex order of ``h``; the returned
    partition lists them in that order.
    """
    sizes = list(sizes)
    if len(sizes) != h.n:
        raise PreconditionError(f"{len(sizes)} sizes given for {h.n} vertices")
    if any(s < 1 for s in sizes):
        raise PreconditionError("every part size must be at least 1")
    starts = [0]
    for s in sizes:
        starts.append(starts[-1] + s)
    n = starts[-1]
    part_bits = [((1 << sizes[x]) - 1) << starts[x] for x in range(h.n)]
    rows = [0] * n
    for x in range(h.n):
        row = 0
        for y in range(h.n):
            if h.has_edge(x, y):
                row |= part_bits[y]
        for v in range(starts[x], starts[x + 1]):
            rows[v] = row
    parts = Partition.from_lists(n, [range(starts[x], starts[x + 1]) for x in range(h.n)])
    return Graph(n, rows), parts


def join(g: Graph, h: Graph) -> Graph:
    """Disjoint union plus every cross edge; ``g`` keeps labels ``0..|g|-1``."""
    n = g.n + h.n
    gmask = (1 << g.n) - 1
    hmask = ((1 << h.n) - 1) << g.n
    rows = [g.row(v) | hmask for v in range(g.n)]
    rows += [(h.row(v) << g.n) | gmask for v in range(h.n)]
    return Graph(n, rows)


def turan(n: int, parts: int) -> Graph:
    """Complete ``parts``-partite graph with part sizes differing by at most one."""
    if parts < 1:
        raise PreconditionError("need at least one part")
    if n < parts:
        raise PreconditionError("fewer vertices than parts")
    q, extra = divmod(n, parts)
    return complete_multipartite([q + 1 if i < extra else q for i in range(parts)])


def turan_parts(n: int, parts: int) -> Partition:
    q, extra = divmod(n, parts)
    sizes = [q + 1 if i < extra else q for i in range(parts)]
    return blow_up(complete(parts), sizes)[1]


def andrasfai(k: int) -> Graph:
    if k < 1:
        raise PreconditionError("Andrásfai index starts at 1")
    m = 3 * k - 1
    conn = set(range(k, 2 * k))
    return Graph.from_edges(m, [(i, j) for i in range(m) for j in range(i + 1, m) if (j - i) % m in conn])


def kneser(n: int, k: int) -> Graph:
    """Vertices are the k-subsets of range(n) in lexicographic order; edges join disjoint ones."""
    if not 0 < k <= n:
        raise PreconditionError("need 0 < k <= n")
    subsets = [frozenset(c) for c in itertools.combinations(range(n), k)]
    return Graph.from_edges(len(subsets), [
        (i, j) for i, j in itertools.combinations(range(len(subsets)), 2)
        if subsets[i].isdisjoint(subsets[j])
    ])


def petersen() -> Graph:
    return kneser(5, 2)


def goddard_lyle(r: int, h: Graph, apex_sizes: Sequence[int], sizes: Sequence[int]) -> Graph:
    """Blow-up of ``K_{r-3} v h``: apex ``i`` becomes ``apex_sizes[i]`` vertices.

    Apex parts come first in the vertex order, followed by the parts of ``h``.
    """
    return goddard_lyle_parts(r, h, apex_sizes, sizes)[0]


def goddard_lyle_parts(r: int, h: Graph, apex_sizes: Sequence[int], sizes: Sequence[int]):
    if r < 3:
        raise PreconditionError("r must be at least 3")
    if len(apex_sizes) != r - 3:
        raise PreconditionError(f"need {r - 3} apex sizes, got {len(apex_sizes)}")
    pattern = join(complete(r - 3), h)
    return blow_up(pattern, list(apex_sizes) + list(sizes))


def balanced_sizes(r: int, eps, h: Graph, *, min_n: int = 1, max_n: int = 4096) -> tuple[int, int]:
    """Smallest ``(apex_size, part_size)`` with ``goddard_lyle`` in F(r, eps).

    Every apex part gets ``apex_size`` vertices and every vertex of ``h``
    gets ``part_size``. Minimises ``n`` subject to ``min_n <= n <= max_n``;
    ties go to the smaller part size. For ``r = 3`` the apex size is 0.
    Raises PreconditionError if ``h`` has a triangle or nothing fits.
    """
    eps = Fraction(eps)
    if not is_kr_free(h, 3):
        raise PreconditionError("pattern graph must be triangle-free")
    if h.n == 0:
        raise PreconditionError("pattern graph must be nonempty")
    goal = degree_threshold(r) + eps
    num, den = goal.numerator, goal.denominator
    q = r - 3
    dmin = min(h.degree(x) for x in range(h.n))
    for n in range(max(min_n, 1), max_n + 1):
        for b in range(1, n // h.n + 1):
            rest = n - h.n * b
            if q == 0:
                if rest:
                    continue
                a, delta = 0, dmin * b
            else:
                if rest < q or rest % q:
                    continue
                a = rest // q
                delta = min(q * a + dmin * b, n - a)
            if delta * den >= num * n:
                return a, b
    raise PreconditionError(f"no balanced sizes with n <= {max_n} reach F({r}, {eps})")


def random_triangle_free(n: int, seed: int, attempts: int | None = None) -> Graph:
    """Random graph grown by inserting uniformly chosen pairs that close no triangle."""
    rng = random.Random(seed)
    rows = [0] * n
    attempts = n * n if attempts is None else attempts
    for _ in range(attempts):
        u, v = rng.sample(range(n), 2)
        if rows[u] >> v & 1 or rows[u] & rows[v]:
            continue
        if rng.random() < 0.5:
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return Graph(n, rows)


_NAMED = [
    (re.compile(r"C(\d+)$"), lambda m: cycle(int(m[1]))),
    (re.compile(r"K(\d+)$"), lambda m: complete(int(m[1]))),
    (re.compile(r"E(\d+)$"), lambda m: empty(int(m[1]))),
    (re.compile(r"K(\d+),(\d+)$"), lambda m: complete_multipartite([int(m[1]), int(m[2])])),
    (re.compile(r"T(\d+),(\d+)$"), lambda m: turan(int(m[1]), int(m[2]))),
    (re.compile(r"And(\d+)$"), lambda m: andrasfai(int(m[1]))),
    (re.compile(r"Kn(\d+),(\d+)$"), lambda m: kneser(int(m[1]), int(m[2]))),
    (re.compile(r"Petersen$"), lambda m: petersen()),
]


def named_graph(name: str) -> Graph:
    name = name.strip()
    gl = re.fullmatch(r"GL(\d+),(\d+):(.+)\*(\d+)", name)
    if gl:
        r, a, pat, b = int(gl[1]), int(gl[2]), gl[3], int(gl[4])
        h = named_graph(pat)
        return goddard_lyle(r, h, [a] * (r - 3), [b] * h.n)
    if "*" in name:
        pat, _, s = name.rpartition("*")
        h = named_graph(pat)
        try:
            size = int(s)
        except ValueError:
            raise PreconditionError(f"bad blow-up size in {name!r}") from None
        return blow_up(h, [size] * h.n)[0]
    for rx, build in _NAMED:
        m = rx.match(name)
        if m:
            return build(m)
    raise PreconditionError(f"unknown graph name {name!r}")


def fits_threshold(g: Graph, r: int, eps) -> bool:
    """Degree half of membership in F(r, eps), without the clique check."""
    return g.n > 0 and min_degree(g) >= (degree_threshold(r) + Fraction(eps)) * g.n


def max_eps(g: Graph, r: int) -> Fraction:
    """Largest eps for which the degree condition of F(r, eps) holds (may be <= 0)."""
    return Fraction(min_degree(g), g.n) - degree_threshold(r)

