import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from spandisc.graph import Graph, is_connected
from spandisc.labeling import Labeling

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def small_graphs(draw, min_n=1, max_n=7, connected=False):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    g = Graph(n, [p for p, k in zip(pairs, keep) if k])
    if connected and not is_connected(g):
        # chain the components together so the graph is connected
        extra = [(i, i + 1) for i in range(n - 1) if not g.has_edge(i, i + 1)]
        g = Graph(n, list(g.edges) + extra)
    return g


@st.composite
def graph_and_labeling(draw, **kw):
    g = draw(small_graphs(**kw))
    signs = draw(st.lists(st.sampled_from((1, -1)), min_size=g.m, max_size=g.m))
    return g, Labeling(signs)


@pytest.fixture
def rng():
    return random.Random(12345)


ACCEPTANCE_LINES: list[str] = []


def record_acceptance(line: str) -> None:
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
