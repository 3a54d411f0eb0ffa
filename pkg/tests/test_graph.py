import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from centcorr import (
    UNREACHABLE,
    Graph,
    Partition,
    bfs_distances,
    core_decomposition,
    edge_filtered_graphs,
    induced_subgraph,
    largest_connected_component,
    load_edgelist,
)
from centcorr import datasets
from centcorr.exceptions import DroppedRecordsWarning, EdgeListError, GraphError

from conftest import graph_from_text, random_graph
from oracles import floyd_warshall


def write(tmp_path, text, name="g.txt"):
    p = tmp_path / name
    p.write_text(text, encoding="utf-8")
    return p


class TestLoadEdgelist:
    def test_triangle(self, tmp_path):
        g = load_edgelist(write(tmp_path, "a b\nb c\na c"))
        assert (g.n, g.m) == (3, 3)
        assert g.labels == ("a", "b", "c")

    def test_loops_and_duplicates_dropped(self, tmp_path):
        with pytest.warns(DroppedRecordsWarning, match="dropped 2 records"):
            g = load_edgelist(write(tmp_path, "1 1\n1 2\n1 2"))
        assert (g.n, g.m) == (2, 1)

    def test_reversed_duplicate(self, tmp_path):
        with pytest.warns(DroppedRecordsWarning):
            g = load_edgelist(write(tmp_path, "x y\ny x\n"))
        assert g.m == 1

    def test_comments_blank_lines_and_third_column(self, tmp_path):
        with pytest.warns(DroppedRecordsWarning, match="extra columns"):
            g = load_edgelist(write(tmp_path, "# header\n\na b 0.5\nb c 2\n"))
        assert (g.n, g.m) == (3, 2)

    def test_percent_comments(self, tmp_path):
        g = load_edgelist(write(tmp_path, "% sym unweighted\n% 2 3 3\n1 2\n2 3\n"))
        assert g.labels == ("1", "2", "3")

    def test_malformed_line_reports_line_number(self, tmp_path):
        with pytest.raises(EdgeListError, match="line 3"):
            load_edgelist(write(tmp_path, "a b\nb c\nlonely\n"))

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_edgelist(tmp_path / "absent.txt")

    def test_karate(self):
        g = load_edgelist(datasets.path("karate"))
        assert (g.n, g.m) == (34, 78)

    def test_karate_edge_count_matches_distinct_pairs(self):
        pairs = set()
        for line in datasets.path("karate").read_text().splitlines():
            if line and not line.startswith("#"):
                u, v = line.split()
                pairs.add(frozenset((u, v)))
        assert len(pairs) == 78


def test_graph_invariants_on_random_graphs(rng):
    for _ in range(30):
        g = random_graph(rng, int(rng.integers(1, 20)), float(rng.random()))
        assert g.degrees.sum() == 2 * g.m
        for i in range(g.n):
            nb = g.neighbors(i)
            assert np.all(np.diff(nb) > 0)
            assert i not in nb
            for j in nb:
                assert g.has_edge(j, i)


def test_graph_is_immutable(triangle):
    with pytest.raises(ValueError):
        triangle.indices[0] = 2


class TestLargestComponent:
    def test_connected_is_identity(self, triangle):
        assert largest_connected_component(triangle) == triangle

    def test_triangle_plus_edge(self):
        g = graph_from_text("x y\na b\nb c\na c")
        lcc = largest_connected_component(g)
        assert sorted(lcc.labels) == ["a", "b", "c"] and lcc.m == 3

    def test_tie_goes_to_smallest_index(self):
        g = Graph.from_edges(6, [(1, 3), (3, 5), (1, 5), (0, 2), (2, 4), (0, 4)])
        lcc = largest_connected_component(g)
        assert lcc.labels == ("0", "2", "4")


class TestBFS:
    def test_path(self, path3):
        assert bfs_distances(path3, 0).tolist() == [0, 1, 2]

    def test_k4(self, k4):
        assert bfs_distances(k4, 2).tolist() == [1, 1, 0, 1]

    def test_unreachable(self):
        g = Graph.from_edges(4, [(0, 1), (1, 2), (0, 2)], list("abcd"))
        assert bfs_distances(g, 0)[3] == UNREACHABLE

    def test_unknown_source(self, triangle):
        with pytest.raises(GraphError):
            bfs_distances(triangle, 7)

    def test_matches_floyd_warshall(self, rng):
        for _ in range(40):
            g = random_graph(rng, int(rng.integers(1, 13)), float(rng.random() * 0.6))
            fw = floyd_warshall(g)
            for s in range(g.n):
                d = bfs_distances(g, s).astype(float)
                d[d == UNREACHABLE] = np.inf
                assert np.array_equal(d, fw[s])


class TestCores:
    def test_triangle(self, triangle):
        assert core_decomposition(triangle).tolist() == [2, 2, 2]

    def test_star(self, star4):
        assert core_decomposition(star4).tolist() == [1] * 5

    def test_k4_with_pendant(self):
        g = graph_from_text("a b\na c\na d\nb c\nb d\nc d\nd p")
        core = dict(zip(g.labels, core_decomposition(g).tolist()))
        assert core == {"a": 3, "b": 3, "c": 3, "d": 3, "p": 1}

    def test_isolated_and_empty(self):
        assert core_decomposition(Graph.from_edges(3, [(0, 1)])).tolist() == [1, 1, 0]
        assert core_decomposition(Graph.from_edges(0, [])).tolist() == []

    def test_core_property(self, rng):
        for _ in range(40):
            g = random_graph(rng, int(rng.integers(2, 25)), float(rng.random() * 0.5))
            core = core_decomposition(g)
            assert np.all(core <= g.degrees)
            for k in np.unique(core):
                sub = induced_subgraph(g, np.flatnonzero(core >= k))
                assert sub.degrees.min() >= k
                # maximality: the k+1 core is strictly contained
                if k + 1 <= core.max():
                    assert np.all(core[core >= k + 1] >= k + 1)


class TestInducedSubgraph:
    def test_edge(self, triangle):
        sub = induced_subgraph(triangle, [0, 1])
        assert (sub.n, sub.m, sub.labels) == (2, 1, ("a", "b"))

    def test_single(self, triangle):
        sub = induced_subgraph(triangle, [0])
        assert (sub.n, sub.m) == (1, 0)

    def test_identity(self, k4):
        assert induced_subgraph(k4, range(4)) == k4

    def test_unknown_node(self, triangle):
        with pytest.raises(GraphError):
            induced_subgraph(triangle, [0, 5])


class TestEdgeFilter:
    def test_bridge_graph(self, bridge_graph, bridge_partition):
        intra, inter = edge_filtered_graphs(bridge_graph, bridge_partition)
        assert intra.n == inter.n == 6
        assert intra.m == 6 and inter.m == 1
        c, d = bridge_graph.index("c"), bridge_graph.index("d")
        assert inter.has_edge(c, d)

    def test_single_community(self, k4):
        intra, inter = edge_filtered_graphs(k4, Partition.whole(4))
        assert intra == k4 and inter.m == 0

    def test_k4_cut(self, k4):
        intra, inter = edge_filtered_graphs(k4, Partition([0, 0, 1, 1]))
        assert (intra.m, inter.m) == (2, 4)

    def test_missing_node(self, k4):
        with pytest.raises(GraphError):
            edge_filtered_graphs(k4, Partition([0, 0, 1]))


@settings(max_examples=60, deadline=None)
@given(
    st.integers(2, 12).flatmap(
        lambda n: st.tuples(
            st.just(n),
            st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=40),
            st.lists(st.integers(0, 3), min_size=n, max_size=n),
        )
    )
)
def test_edge_filter_partitions_edge_set(data):
    n, edges, comm = data
    g = Graph.from_edges(n, edges)
    intra, inter = edge_filtered_graphs(g, Partition(comm))
    all_edges = {tuple(e) for e in g.edges.tolist()}
    a = {tuple(e) for e in intra.edges.tolist()}
    b = {tuple(e) for e in inter.edges.tolist()}
    assert a | b == all_edges and not (a & b)
    assert intra.m + inter.m == g.m


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 9), st.integers(0, 9)), max_size=30), st.randoms(use_true_random=False))
def test_relabelling_preserves_structure(edges, rnd):
    g = Graph.from_edges(10, edges)
    perm = list(range(10))
    rnd.shuffle(perm)
    h = Graph.from_edges(10, [(perm[u], perm[v]) for u, v in edges])
    assert sorted(h.degrees.tolist()) == sorted(g.degrees.tolist())
    assert np.array_equal(h.degrees[perm], g.degrees)
