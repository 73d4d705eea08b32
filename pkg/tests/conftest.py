from fractions import Fraction

import hypothesis
import pytest
from hypothesis import strategies as st

from krhom import generators as gen
from krhom.graph import Graph

hypothesis.settings.register_profile("ci", max_examples=60, deadline=None)
hypothesis.settings.register_profile("fast", max_examples=10, deadline=None)
hypothesis.settings.load_profile("ci")


@st.composite
def graphs(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Graph.from_edges(n, [p for p, keep in zip(pairs, chosen) if keep])


@pytest.fixture
def c5():
    return gen.cycle(5)


@pytest.fixture
def k33():
    return gen.complete_multipartite([3, 3])


def c5_blowup(size):
    return gen.blow_up(gen.cycle(5), [size] * 5)


EPS_15 = Fraction(1, 15)


def dense_suite(max_n):
    """Maximal K_r-free generator graphs in F(r, eps), eps the largest admissible value."""
    out = []

    def add(name, g, r):
        if g.n <= max_n:
            out.append((name, g, r, gen.max_eps(g, r)))

    add("K2", gen.complete(2), 3)
    for s in (1, 2, 3, 4, 6, 10, 12):
        add(f"C5*{s}", c5_blowup(s)[0], 3)
    for s in (3, 5):
        add(f"K{s},{s}", gen.complete_multipartite([s, s]), 3)
    for k in (2, 3, 4, 5, 8):
        add(f"And{k}", gen.andrasfai(k), 3)
    add("And3*2", gen.blow_up(gen.andrasfai(3), [2] * 8)[0], 3)
    for n in (6, 9, 12, 30):
        add(f"T{n},3", gen.turan(n, 3), 4)
    for n in (8, 12):
        add(f"T{n},4", gen.turan(n, 4), 5)
    for r, eps in ((4, Fraction(1, 40)), (5, Fraction(1, 77))):
        for min_n in (1, 40):
            a, b = gen.balanced_sizes(r, eps, gen.cycle(5), min_n=min_n)
            add(f"GL{r},{a}:C5*{b}", gen.goddard_lyle(r, gen.cycle(5), [a] * (r - 3), [b] * 5), r)
    return out


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
