import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from hrushovski import Graph  # noqa: E402


def make(edges, vertices=()):
    return Graph.from_edges(edges, vertices)


@pytest.fixture
def c4():
    return make([("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")])


@pytest.fixture
def triangle():
    return make([("a", "b"), ("b", "c"), ("c", "a")])


@pytest.fixture
def k6():
    return make([(str(i), str(j)) for i in range(6) for j in range(i + 1, 6)])


@pytest.fixture
def gadget_graph():
    return make(
        [("c", "l1"), ("l1", "l2"), ("l2", "l3"), ("l3", "l4"), ("l4", "l1"), ("l2", "a"), ("l4", "a"), ("l3", "b"), ("a", "b")]
    )


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if results:
        terminalreporter.section("acceptance criteria")
        for n in sorted(results):
            terminalreporter.write_line(results[n])
