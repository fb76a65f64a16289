import numpy as np
import pytest
from hypothesis import HealthCheck, settings, strategies as st

from hardcut.data import load_srgs
from hardcut.families import karloff_generate
from hardcut.graph import Graph
from hardcut.params import KarloffParams

settings.register_profile("default", deadline=None, max_examples=50,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def j631():
    return karloff_generate(KarloffParams(6, 1))


@pytest.fixture(scope="session")
def srg16():
    return load_srgs(1)


def cycle(n):
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


K2 = Graph.from_edges(2, [(0, 1)])
C4 = cycle(4)
C5 = cycle(5)
TRIANGLE = Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)])


@st.composite
def graphs(draw, min_n=2, max_n=10, weighted=False, min_edges=0):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    edges = [p for p, keep in zip(pairs, mask) if keep]
    if len(edges) < min_edges:
        edges = pairs[:max(min_edges, len(edges))]
    w = None
    if weighted:
        w = draw(st.lists(st.floats(-10, 10, allow_nan=False, allow_infinity=False),
                          min_size=len(edges), max_size=len(edges)))
    return Graph.from_edges(n, np.array(edges, dtype=np.int64).reshape(-1, 2), w)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
