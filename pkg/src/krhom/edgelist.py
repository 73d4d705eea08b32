"""Plain-text edge lists.

Format::

    # comment
    p <n> <m>        optional; then labels must be integers 0..n-1
    u v              one edge per line
    w                (headerless files only) declares an isolated vertex

Without a header the labels are arbitrary tokens. They are mapped to
``0..n-1`` in sorted order (numerically when every label is an integer)
and the mapping is kept on the result.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import TextIO

from .errors import ParseError
from .graph import DEFAULT_MAX_N, Graph


@dataclass(frozen=True)
class LabeledGraph:
    graph: Graph
    labels: list[str] = field(default_factory=list)

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)


def _label_key(labels):
    try:
        ints = {lab: int(lab) for lab in labels}
    except ValueError:
        return lambda lab: (1, lab)
    return lambda lab: (0, ints[lab])


def parse_edgelist(text: str, *, max_n: int = DEFAULT_MAX_N) -> LabeledGraph:
    header: tuple[int, int, int] | None = None
    raw_edges: list[tuple[str, str, int]] = []
    isolated: list[tuple[str, int]] = []
    seen: dict[frozenset, int] = {}

    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        if tok[0] == "p":
            if header is not None:
                raise ParseError("duplicate header", lineno)
            if raw_edges or isolated:
                raise ParseError("header must precede edges", lineno)
            if len(tok) != 3:
                raise ParseError("header must be 'p <n> <m>'", lineno)
            try:
                n, m = int(tok[1]), int(tok[2])
            except ValueError:
                raise ParseError("header counts must be integers", lineno) from None
            if n < 0 or m < 0:
                raise ParseError("header counts must be non-negative", lineno)
            header = (n, m, lineno)
            continue
        if len(tok) == 1:
            if header is not None:
                raise ParseError("single-label lines are only allowed without a header", lineno)
            isolated.append((tok[0], lineno))
            continue
        if len(tok) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        a, b = tok
        if a == b:
            raise ParseError(f"self-loop at {a}", lineno)
        key = frozenset((a, b))
        if key in seen:
            raise ParseError(f"duplicate edge {a} {b} (first on line {seen[key]})", lineno)
        seen[key] = lineno
        raw_edges.append((a, b, lineno))

    if header is not None:
        n, m, hline = header
        edges = []
        for a, b, lineno in raw_edges:
            try:
                u, v = int(a), int(b)
            except ValueError:
                raise ParseError("labels must be integers when a header is given", lineno) from None
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"vertex out of range 0..{n - 1}", lineno)
            if u == v:
                raise ParseError(f"self-loop at {u}", lineno)
            edges.append((u, v))
        if len({frozenset(e) for e in edges}) != len(edges):
            raise ParseError("duplicate edge after integer normalisation")
        if len(edges) != m:
            raise ParseError(f"header declares {m} edges, found {len(edges)}", hline)
        return _build(n, edges, [], max_n)

    names = {a for a, _, _ in raw_edges} | {b for _, b, _ in raw_edges} | {w for w, _ in isolated}
    labels = sorted(names, key=_label_key(names))
    index = {lab: i for i, lab in enumerate(labels)}
    edges = [(index[a], index[b]) for a, b, _ in raw_edges]
    return _build(len(labels), edges, labels, max_n)


def _build(n, edges, labels, max_n) -> LabeledGraph:
    if n > max_n:
        raise ParseError(f"graph has {n} vertices, above the limit {max_n}")
    return LabeledGraph(Graph.from_edges(n, edges, max_n=max_n), labels)


def read_edgelist(path: str | Path, *, max_n: int = DEFAULT_MAX_N) -> LabeledGraph:
    return parse_edgelist(Path(path).read_text(), max_n=max_n)


def format_edgelist(g: Graph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.extend(f"# {c}" for c in comment.splitlines())
    lines.append(f"p {g.n} {g.edge_count()}")
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def write_edgelist(g: Graph, out: TextIO | str | Path, comment: str | None = None) -> None:
    text = format_edgelist(g, comment)
    if isinstance(out, (str, Path)):
        Path(out).write_text(text)
    else:
        out.write(text)
