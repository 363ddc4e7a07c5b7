import random

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pathcycle.graphs import CYCLE, PATH, Component, LabeledGraph

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def graphs(draw, max_size: int = 7, alphabet: str = "0123456789abcdef"):
    """Random graphs on distinct single-character labels."""
    n = draw(st.integers(0, max_size))
    labels = draw(st.permutations(alphabet))[:n]
    comps, i = [], 0
    while i < n:
        k = draw(st.integers(1, n - i))
        kind = draw(st.sampled_from([PATH, CYCLE]))
        comps.append(Component(kind, labels[i:i + k]))
        i += k
    return LabeledGraph(comps)


@st.composite
def graph_and_subset(draw, max_size: int = 7):
    g = draw(graphs(max_size))
    S = draw(st.sets(st.sampled_from(sorted(g.ground_set)))) if len(g) else set()
    return g, frozenset(S)


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
