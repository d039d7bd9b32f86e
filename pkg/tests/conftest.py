import os
import sys

import pytest

from seedcluster import Graph

sys.path.insert(0, os.path.dirname(__file__))

# Barbell on six nodes: triangles {0,1,2} and {3,4,5} joined by the edge 2-3.
B6_EDGES = [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5), (4, 5)]
PATH6_EDGES = [(i, i + 1) for i in range(5)]

_CRITERIA: dict[str, tuple[bool, str]] = {}


@pytest.fixture
def b6():
    return Graph.from_edges(B6_EDGES)


@pytest.fixture
def path6():
    return Graph.from_edges(PATH6_EDGES)


@pytest.fixture
def record_criterion():
    """Record an acceptance outcome; every outcome is echoed in the summary."""

    def record(name: str, ok: bool, detail: str) -> None:
        _CRITERIA[name] = (bool(ok), detail)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_CRITERIA, key=lambda k: int(k.split()[0])):
        ok, detail = _CRITERIA[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {name}: {detail}")
