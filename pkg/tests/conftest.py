import numpy as np
import pytest

from centcorr import Graph, Partition
from centcorr._backend import compiled_kernels, python_kernels


def graph_from_text(text):
    labels, edges = [], []
    index = {}
    for line in text.strip().splitlines():
        u, v = line.split()
        for x in (u, v):
            if x not in index:
                index[x] = len(labels)
                labels.append(x)
        edges.append((index[u], index[v]))
    return Graph.from_edges(len(labels), edges, labels)


@pytest.fixture
def triangle():
    return graph_from_text("a b\nb c\na c")


@pytest.fixture
def path3():
    return graph_from_text("a b\nb c")


@pytest.fixture
def path4():
    return graph_from_text("a b\nb c\nc d")


@pytest.fixture
def k4():
    return graph_from_text("a b\na c\na d\nb c\nb d\nc d")


@pytest.fixture
def star4():
    """Star S4: centre ``c`` with four leaves."""
    return graph_from_text("c l1\nc l2\nc l3\nc l4")


@pytest.fixture
def bridge_graph():
    """Two triangles {a,b,c} and {d,e,f} joined by the bridge c-d."""
    return graph_from_text("a b\na c\nb c\nc d\nd e\nd f\ne f")


@pytest.fixture
def bridge_partition(bridge_graph):
    return Partition([0 if lab in "abc" else 1 for lab in bridge_graph.labels])


def random_graph(rng, n, p, connected=False):
    while True:
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
        g = Graph.from_edges(n, edges)
        if not connected:
            return g
        from centcorr.graph import is_connected

        if is_connected(g):
            return g


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


BACKENDS = [python_kernels] + ([compiled_kernels] if compiled_kernels is not None else [])


@pytest.fixture(params=BACKENDS, ids=lambda k: k.__name__.rsplit(".", 1)[-1])
def backend(request):
    return request.param


ACCEPTANCE_RESULTS = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(ACCEPTANCE_RESULTS[key])
