import pytest
from hypothesis import strategies as st

from pubgoods.digraph import Digraph, parse_digraph

# hand-built fixtures; nodes are 0-indexed
CORE_PAIR8_EDGES = [(0, 7), (7, 3), (3, 2), (2, 1), (1, 0), (0, 1), (3, 4), (5, 4), (7, 6), (6, 5), (2, 6)]


@pytest.fixture
def three_cycle():
    return parse_digraph("3\n0 1\n1 2\n2 0")


@pytest.fixture
def two_clique():
    return parse_digraph("2\n0 1\n1 0")


@pytest.fixture
def dag():
    return parse_digraph("3\n0 2\n1 2")


@pytest.fixture
def two_hubs():
    return Digraph.from_edges(4, [(2, 0), (2, 1), (3, 0), (3, 1)])


@pytest.fixture
def core_pair8():
    return Digraph.from_edges(8, CORE_PAIR8_EDGES)


@pytest.fixture
def order_contrast7():
    return Digraph.from_edges(
        7, [(0, 2), (1, 3), (5, 3), (6, 4), (2, 0), (2, 1), (3, 5), (3, 6), (4, 0), (4, 5)]
    )


@st.composite
def digraphs(draw, min_nodes=0, max_nodes=6):
    n = draw(st.integers(min_nodes, max_nodes))
    pairs = [(i, j) for i in range(n) for j in range(n) if i != j]
    keep = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return Digraph.from_edges(n, [p for p, k in zip(pairs, keep) if k])


# acceptance reporting: one line per criterion in the terminal summary
_acceptance = {}


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome
    elif report.when == "setup" and report.outcome != "passed" and "test_acceptance.py" in report.nodeid:
        _acceptance[report.nodeid.split("::")[-1]] = report.outcome


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance.items():
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{mark}  {name}")
