"""Sample-and-partition construction of a bounded K_r-free homomorphic image.

Given a maximal K_r-free graph G in F(r, eps):

1. draw a uniform m-subset X of V and let U_X be the vertices with fewer
   than ``(theta + eps/2) * m`` neighbours in X (theta = (2r-5)/(2r-3));
   the sample is *good* when ``|U_X| <= eps*n/4`` and ``|X & U_X| < eps*m/4``;
2. set Y = X - U_X and let U_Y be the vertices with fewer than
   ``(theta + eps/4) * |Y|`` neighbours in Y;
3. group V - U_Y by neighbourhood in Y (the base classes V_1..V_t);
4. group U_Y by which base classes each vertex sees, every vertex seeing
   each base class completely or not at all (the remainder classes V_S);
5. check every class is independent and every class pair is complete or
   empty, then collapse the classes to get H and the homomorphism G -> H.

For a good sample every check in step 5 is forced by the hypotheses, so a
failure means the input is not maximal K_r-free in F(r, eps).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from decimal import ROUND_CEILING, Decimal, localcontext
from fractions import Fraction
from typing import NamedTuple

from .cliques import (
    ThresholdParams,
    added_edges,
    degree_threshold,
    find_clique,
    in_class_F,
    is_kr_free,
    is_maximal_krfree,
    maximal_krfree_completion,
)
from .errors import HypothesisViolation, PreconditionError, RetriesExhausted, StructureError
from .graph import Graph, VertexSet, iter_bits, lowest_bit
from .homomorphism import HomMap, Partition, homomorphism_violation, is_blowup, quotient


class SizeBounds(NamedTuple):
    m: int
    t_log2: int
    l_symbolic: str


def compute_params(r: int, eps) -> SizeBounds:
    """Sample size ``m = ceil(4 ln(8/eps) / eps^2) + 1`` with ``T = 2^m``, ``L = 2^T + T``.

    The logarithm is evaluated to 60 significant digits; if the ceiling
    argument lands within ``1e-50`` of an integer the ceiling is bumped up
    so ``m`` is never too small.
    """
    eps = Fraction(eps)
    if r < 3:
        raise PreconditionError("r must be at least 3")
    if eps <= 0:
        raise PreconditionError("eps must be positive")
    ratio = 8 / eps
    if ratio == 1:
        ceil_arg = 0
    else:
        with localcontext() as ctx:
            ctx.prec = 60
            e = Decimal(eps.numerator) / Decimal(eps.denominator)
            ln = (Decimal(ratio.numerator) / Decimal(ratio.denominator)).ln()
            arg = 4 * ln / (e * e)
            ceil_arg = int(arg.to_integral_value(rounding=ROUND_CEILING))
            if abs(arg - arg.to_integral_value()) < Decimal("1e-50"):
                ceil_arg = int(arg.to_integral_value()) + 1
    m = ceil_arg + 1
    if m < 1:
        raise PreconditionError(f"eps={eps} gives a degenerate sample size m={m}")
    return SizeBounds(m, m, f"2^(2^{m})+2^{m}")


@dataclass(frozen=True)
class ExtractionParams:
    r: int
    eps: Fraction
    m_override: int | None = None
    max_retries: int = 50
    seed: int = 0
    auto_complete: bool = False
    minimize: bool = False

    def __post_init__(self):
        object.__setattr__(self, "eps", Fraction(self.eps))
        ThresholdParams(self.r, self.eps)
        if self.max_retries < 1:
            raise PreconditionError("max_retries must be at least 1")
        if self.m_override is not None and self.m_override < 1:
            raise PreconditionError("m_override must be positive")

    @property
    def threshold(self) -> Fraction:
        return degree_threshold(self.r)


def low_degree_set(g: Graph, x: VertexSet, frac) -> VertexSet:
    """``{v : |N(v) & x| < frac * |x|}`` over all of V, compared exactly."""
    frac = Fraction(frac)
    if not x:
        raise PreconditionError("reference set must be nonempty")
    bound = frac * len(x)
    bits = 0
    for v in range(g.n):
        if (g.row(v) & x.bits).bit_count() < bound:
            bits |= 1 << v
    return VertexSet(g.n, bits)


def sample_low_degree(g: Graph, x: VertexSet, p: ExtractionParams) -> VertexSet:
    return low_degree_set(g, x, p.threshold + p.eps / 2)


def good_sample(g: Graph, x: VertexSet, p: ExtractionParams) -> bool:
    """``|U_X| <= eps*n/4`` and ``|X & U_X| < eps*m/4`` with ``m = |x|``."""
    u_x = sample_low_degree(g, x, p)
    return _is_good(g.n, x, u_x, p.eps)


def _is_good(n: int, x: VertexSet, u_x: VertexSet, eps: Fraction) -> bool:
    return 4 * len(u_x) <= eps * n and 4 * len(x & u_x) < eps * len(x)


def sample_subset(rng: random.Random, n: int, m: int) -> VertexSet:
    """Uniform m-subset of ``range(n)`` via a partial Fisher-Yates shuffle."""
    pool = list(range(n))
    for i in range(m):
        j = rng.randrange(i, n)
        pool[i], pool[j] = pool[j], pool[i]
    return VertexSet.of(n, pool[:m])


def equivalence_classes(g: Graph, y: VertexSet, ground: VertexSet) -> tuple[Partition, list[VertexSet]]:
    """Split ``ground`` by neighbourhood inside ``y``; classes ordered by first vertex."""
    groups: dict[int, int] = {}
    for v in ground:
        sig = g.row(v) & y.bits
        groups[sig] = groups.get(sig, 0) | (1 << v)
    # dict preserves insertion order, i.e. order of first vertex
    classes = [VertexSet(g.n, b) for b in groups.values()]
    return Partition(tuple(classes), ground), [VertexSet(g.n, s) for s in groups]


def classify_remainder(
    g: Graph, u_y: VertexSet, base: Partition
) -> tuple[Partition, list[frozenset[int]]]:
    """Group ``u_y`` by the set S of base classes each vertex sees.

    Each vertex must see every base class completely or not at all;
    otherwise StructureError carries ``(u, seen, unseen)``.
    """
    groups: dict[frozenset[int], int] = {}
    for u in u_y:
        row = g.row(u)
        seen = []
        for i, c in enumerate(base.classes):
            hit = row & c.bits
            if not hit:
                continue
            miss = c.bits & ~row
            if miss:
                w = {"u": u, "class": i, "seen": lowest_bit(hit), "unseen": lowest_bit(miss)}
                raise StructureError(
                    f"vertex {u} sees {w['seen']} but not {w['unseen']} in base class {i}", w
                )
            seen.append(i)
        key = frozenset(seen)
        groups[key] = groups.get(key, 0) | (1 << u)
    classes = [VertexSet(g.n, b) for b in groups.values()]
    return Partition(tuple(classes), u_y), list(groups)


@dataclass
class EquationCheck:
    equation: str
    checked: int = 0
    failures: list[dict] = field(default_factory=list)

    @property
    def status(self) -> str:
        return "pass" if not self.failures else "fail"

    def to_json(self) -> dict:
        return {"equation": self.equation, "status": self.status, "checked": self.checked,
                "witness": self.failures}


@dataclass
class ValidationReport:
    checks: list[EquationCheck]

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def __getitem__(self, name: str) -> EquationCheck:
        for c in self.checks:
            if c.equation == name:
                return c
        raise KeyError(name)

    def failures(self) -> list[tuple[str, dict]]:
        return [(c.equation, f) for c in self.checks for f in c.failures]

    def to_json(self) -> list[dict]:
        return [c.to_json() for c in self.checks]


EQUATIONS = (
    "base_class_independent",
    "base_pair_homogeneous",
    "remainder_base_homogeneous",
    "remainder_pair_homogeneous",
    "remainder_class_independent",
    "quotient_kr_free",
)


def validate_structure(g: Graph, r: int, full_partition: Partition, n_base: int | None = None) -> ValidationReport:
    """Independence of every class and complete-or-empty for every class pair.

    Classes ``0..n_base-1`` are base classes, the rest remainder classes
    (all classes are base when ``n_base`` is None). Failures carry an edge
    (and for pairs a non-edge) as witness. When all structural checks pass,
    the quotient is also searched for a K_r.
    """
    p = full_partition
    if p.ground.n != g.n or p.ground.bits != (1 << g.n) - 1:
        raise PreconditionError("partition must cover every vertex")
    t = len(p) if n_base is None else n_base
    checks = {name: EquationCheck(name) for name in EQUATIONS}
    full = (1 << g.n) - 1
    unions, inters = [], []
    for i, c in enumerate(p.classes):
        u, x = 0, full
        for v in c:
            u |= g.row(v)
            x &= g.row(v)
        unions.append(u)
        inters.append(x)
        chk = checks["base_class_independent" if i < t else "remainder_class_independent"]
        chk.checked += 1
        if u & c.bits:
            a = next(v for v in c if g.row(v) & c.bits)
            chk.failures.append({"classes": [i], "edge": [a, lowest_bit(g.row(a) & c.bits)]})
    k = len(p)
    for i in range(k):
        a_bits = p.classes[i].bits
        for j in range(i + 1, k):
            if j < t:
                name = "base_pair_homogeneous"
            elif i < t:
                name = "remainder_base_homogeneous"
            else:
                name = "remainder_pair_homogeneous"
            chk = checks[name]
            chk.checked += 1
            b_bits = p.classes[j].bits
            if unions[i] & b_bits and b_bits & ~inters[i]:
                a = next(v for v in iter_bits(a_bits) if g.row(v) & b_bits)
                c = next(v for v in iter_bits(a_bits) if b_bits & ~g.row(v))
                chk.failures.append({
                    "classes": [i, j],
                    "edge": [a, lowest_bit(g.row(a) & b_bits)],
                    "non_edge": [c, lowest_bit(b_bits & ~g.row(c))],
                })
    kr = checks["quotient_kr_free"]
    if all(not c.failures for c in checks.values()):
        h, _ = quotient(g, p)
        kr.checked = 1
        clique = find_clique(h, r)
        if clique is not None:
            kr.failures.append({"classes": clique.sorted()})
    return ValidationReport([checks[name] for name in EQUATIONS])


def merge_twins(g: Graph, p: Partition) -> tuple[Partition, list[int]]:
    """Merge classes whose quotient vertices have identical neighbourhoods, to a fixpoint.

    Returns the merged partition and, per original class, its merged index.
    Twins in a loopless graph are non-adjacent, so merged classes stay
    independent and the blow-up property survives.
    """
    owner = list(range(len(p)))
    current = p
    while True:
        h, _ = quotient(g, current)
        groups: dict[int, list[int]] = {}
        for x in range(h.n):
            groups.setdefault(h.row(x), []).append(x)
        if len(groups) == h.n:
            return current, owner
        new_index = {}
        for idx, members in enumerate(sorted(groups.values())):
            for x in members:
                new_index[x] = idx
        owner = [new_index[o] for o in owner]
        bins = [0] * len(groups)
        for x, c in enumerate(current.classes):
            bins[new_index[x]] |= c.bits
        current = Partition(tuple(VertexSet(g.n, b) for b in bins), current.ground)


@dataclass
class Attempt:
    index: int
    outcome: str
    sample_size: int
    low_degree_size: int
    sample_low_overlap: int
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"attempt": self.index, "outcome": self.outcome, "sample_size": self.sample_size,
                "low_degree_size": self.low_degree_size, "sample_low_overlap": self.sample_low_overlap,
                "detail": self.detail}


@dataclass
class ExtractionReport:
    r: int
    eps: Fraction
    seed: int
    m: int
    full_sample: bool
    sample: VertexSet
    low_degree: VertexSet
    y: VertexSet
    u_y: VertexSet
    classes: Partition
    n_base: int
    class_signatures: list
    quotient: Graph
    hom: HomMap
    validations: ValidationReport
    retries_used: int
    minimized: bool = False
    merged_into: list[int] | None = None
    added_edges: list[tuple[int, int]] = field(default_factory=list)
    attempts: list[Attempt] = field(default_factory=list)

    @property
    def t(self) -> int:
        return self.n_base

    @property
    def size_bound_ok(self) -> bool:
        return len(self.classes) <= self.t + 2 ** self.t

    @property
    def quotient_kr_free(self) -> bool:
        return is_kr_free(self.quotient, self.r)

    def to_json(self) -> dict:
        sigs = []
        for i, s in enumerate(self.class_signatures):
            if i < self.n_base:
                sigs.append({"kind": "base", "neighbours_in_y": s.sorted()})
            else:
                sigs.append({"kind": "remainder", "sees_base_classes": sorted(s)})
        return {
            "params": {"r": self.r, "eps": str(self.eps), "seed": self.seed, "m": self.m,
                       "full_sample": self.full_sample, "minimize": self.minimized},
            "n": self.classes.ground.n,
            "sample": self.sample.sorted(),
            "low_degree": self.low_degree.sorted(),
            "y": self.y.sorted(),
            "u_y": self.u_y.sorted(),
            "t": self.n_base,
            "classes": self.classes.as_lists(),
            "class_signatures": sigs,
            "merged_into": self.merged_into,
            "quotient": {"n": self.quotient.n, "edges": [list(e) for e in self.quotient.edges()]},
            "hom": self.hom.to_json(),
            "validations": self.validations.to_json(),
            "certificates": {"size_bound_ok": self.size_bound_ok,
                             "quotient_kr_free": self.quotient_kr_free},
            "added_edges": [list(e) for e in self.added_edges],
            "retries_used": self.retries_used,
            "attempts": [a.to_json() for a in self.attempts],
        }

    def dumps(self) -> str:
        return dumps(self.to_json())


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def prepare_graph(g: Graph, p: ExtractionParams) -> tuple[Graph, list[tuple[int, int]]]:
    """Check (or establish, with ``auto_complete``) the hypotheses of :func:`extract`."""
    if p.auto_complete:
        if not is_kr_free(g, p.r):
            raise PreconditionError(f"graph contains K_{p.r}")
        done = maximal_krfree_completion(g, p.r)
        extra = added_edges(g, done)
        g = done
    else:
        extra = []
        if not is_maximal_krfree(g, p.r):
            raise PreconditionError(f"graph is not maximal K_{p.r}-free (use auto_complete)")
    if not in_class_F(g, ThresholdParams(p.r, p.eps)):
        raise PreconditionError(f"graph is not in F({p.r}, {p.eps}): minimum degree too small")
    return g, extra


def extract(g: Graph, p: ExtractionParams) -> ExtractionReport:
    g, extra = prepare_graph(g, p)
    n = g.n
    if p.m_override is None:
        m = compute_params(p.r, p.eps).m
        if m > n:
            raise PreconditionError(f"sample size {m} exceeds n={n}; pass m_override")
    else:
        m = p.m_override
    full_sample = m >= n
    m = min(m, n)
    theta = p.threshold
    rng = random.Random(p.seed)
    everything = VertexSet.full(n)
    attempts: list[Attempt] = []
    validation_failed = False

    for index in range(p.max_retries):
        x = everything if full_sample else sample_subset(rng, n, m)
        u_x = low_degree_set(g, x, theta + p.eps / 2)
        att = Attempt(index, "ok", len(x), len(u_x), len(x & u_x))
        attempts.append(att)
        if not _is_good(n, x, u_x, p.eps):
            att.outcome = "bad_sample"
        else:
            y = x - u_x
            u_y = low_degree_set(g, y, theta + p.eps / 4)
            base, base_sigs = equivalence_classes(g, y, everything - u_y)
            try:
                rem, rem_sigs = classify_remainder(g, u_y, base)
            except StructureError as exc:
                att.outcome = "remainder_not_homogeneous"
                att.detail = exc.witness
                validation_failed = True
            else:
                full = Partition(base.classes + rem.classes, everything)
                checks = validate_structure(g, p.r, full, n_base=len(base))
                if not checks.ok:
                    att.outcome = "structure_failed"
                    att.detail = {"failures": [{"equation": e, **w} for e, w in checks.failures()[:5]]}
                    validation_failed = True
                else:
                    if p.minimize:
                        final, owner = merge_twins(g, full)
                    else:
                        final, owner = full, None
                    h, hom = quotient(g, final)
                    return ExtractionReport(
                        r=p.r, eps=p.eps, seed=p.seed, m=m, full_sample=full_sample,
                        sample=x, low_degree=u_x, y=y, u_y=u_y, classes=full,
                        n_base=len(base), class_signatures=base_sigs + rem_sigs,
                        quotient=h, hom=hom, validations=checks, retries_used=index,
                        minimized=p.minimize, merged_into=owner, added_edges=extra,
                        attempts=attempts,
                    )
        if full_sample:
            break

    diagnosis = _diagnosis(attempts, p, m)
    if validation_failed:
        raise HypothesisViolation(
            "good samples were found but the class structure failed; "
            "the graph is not maximal K_r-free in F(r, eps)", diagnosis)
    raise RetriesExhausted(f"no good sample in {len(attempts)} attempts", diagnosis)


def _diagnosis(attempts: list[Attempt], p: ExtractionParams, m: int) -> dict:
    best = min(attempts, key=lambda a: (a.outcome == "bad_sample", a.low_degree_size, a.index))
    counts: dict[str, int] = {}
    for a in attempts:
        counts[a.outcome] = counts.get(a.outcome, 0) + 1
    return {"r": p.r, "eps": str(p.eps), "seed": p.seed, "m": m, "attempts": len(attempts),
            "outcomes": dict(sorted(counts.items())), "best_attempt": best.to_json()}


@dataclass
class VerifyResult:
    checks: list[tuple[str, bool, str]]

    @property
    def ok(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def first_failure(self) -> tuple[str, bool, str] | None:
        return next((c for c in self.checks if not c[1]), None)


def verify_report(g: Graph, data: dict) -> VerifyResult:
    """Re-derive every claim of a serialized report from the graph alone."""
    checks: list[tuple[str, bool, str]] = []

    def record(name, ok, detail=""):
        checks.append((name, bool(ok), detail))
        return ok

    try:
        r = int(data["params"]["r"])
        extra = [tuple(e) for e in data.get("added_edges", [])]
        qn = int(data["quotient"]["n"])
        h = Graph.from_edges(qn, [tuple(e) for e in data["quotient"]["edges"]])
        hom = HomMap.from_json(data["hom"], image_n=qn)
    except (KeyError, TypeError, ValueError) as exc:
        record("schema", False, f"malformed report: {exc}")
        return VerifyResult(checks)
    record("schema", True)

    if int(data.get("n", g.n)) != g.n:
        record("vertex_count", False, f"report is for n={data.get('n')}, graph has n={g.n}")
        return VerifyResult(checks)
    bad = [e for e in extra if g.has_edge(*e)]
    if not record("added_edges_new", not bad, f"added edge {bad[0]} already present" if bad else ""):
        return VerifyResult(checks)
    gc = g.with_edges(extra)
    if not record("image_matches", hom.image_graph == h, "hom image differs from quotient"):
        return VerifyResult(checks)
    try:
        violation = homomorphism_violation(gc, hom)
    except PreconditionError as exc:
        record("homomorphism", False, str(exc))
        return VerifyResult(checks)
    record("homomorphism", violation is None,
           "" if violation is None else f"edge {violation[0]}-{violation[1]} maps to non-edge "
                                        f"{hom.map[violation[0]]}-{hom.map[violation[1]]}")
    if violation is not None:
        return VerifyResult(checks)

    fibres = [0] * h.n
    for v, x in enumerate(hom.map):
        fibres[x] |= 1 << v
    empty_fibre = next((i for i, b in enumerate(fibres) if not b), None)
    if not record("onto", empty_fibre is None, f"image vertex {empty_fibre} has empty preimage"):
        return VerifyResult(checks)
    fp = Partition(tuple(VertexSet(g.n, b) for b in fibres), VertexSet.full(g.n))
    record("blowup", is_blowup(gc, fp), "fibres are not a blow-up partition")
    q, _ = quotient(gc, fp) if checks[-1][1] else (None, None)
    record("quotient_exact", q == h, "image has edges with no preimage")
    clique = find_clique(h, r)
    record("image_kr_free", clique is None, "" if clique is None else f"K_{r} on {clique.sorted()}")
    record("maximal_krfree", is_maximal_krfree(gc, r), "input (after completion) is not maximal K_r-free")

    try:
        classes = Partition.from_lists(g.n, data["classes"])
        covers = classes.ground.bits == (1 << g.n) - 1
    except PreconditionError as exc:
        record("classes_partition", False, str(exc))
        return VerifyResult(checks)
    record("classes_partition", covers, "classes do not cover V")
    if covers:
        record("classes_blowup", is_blowup(gc, classes), "reported classes are not a blow-up partition")
        refines = all(len({hom.map[v] for v in c}) == 1 for c in classes.classes)
        record("classes_refine_image", refines, "a reported class is split by the map")
    return VerifyResult(checks)
