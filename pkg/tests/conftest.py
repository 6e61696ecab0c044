import pytest

from locount.graph import Graph
from locount.pattern import validate_pattern


def complete_bipartite(s, t):
    return Graph.from_edges(s + t, [(i, s + j) for i in range(s) for j in range(t)])


def complete(n):
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def biclique_pattern(s, t):
    return validate_pattern(complete_bipartite(s, t), range(s), range(s, s + t))


def path(n):
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


@pytest.fixture
def k23():
    return biclique_pattern(2, 3)


@pytest.fixture
def k24_host():
    return complete_bipartite(2, 4)


@pytest.fixture
def triangle():
    return complete(3)


# one PASS/FAIL line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[2].rstrip(":"))):
            terminalreporter.write_line(line)
