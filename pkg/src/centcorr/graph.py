"""Simple undirected graphs in CSR form, edge-list parsing and shared primitives."""

from __future__ import annotations

import warnings
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from ._backend import kernels
from .exceptions import DroppedRecordsWarning, EdgeListError, GraphError

UNREACHABLE = -1


def _frozen(a, dtype=np.int64):
    a = np.ascontiguousarray(a, dtype=dtype)
    a.flags.writeable = False
    return a


class Graph:
    """Immutable simple undirected graph.

    Nodes are dense indices ``0..n-1``; ``labels[i]`` is the external label of
    node ``i``. Neighbor lists are stored in CSR form and kept sorted.
    """

    __slots__ = ("indptr", "indices", "labels", "_index", "_edges")

    def __init__(self, indptr, indices, labels: Sequence[str]):
        self.indptr = _frozen(indptr)
        self.indices = _frozen(indices)
        self.labels = tuple(str(x) for x in labels)
        if len(self.labels) != len(self.indptr) - 1:
            raise GraphError("label count does not match node count")
        self._index = None
        self._edges = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None) -> "Graph":
        """Build from index pairs; loops and duplicates are discarded."""
        arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
        if arr.size and (arr.min() < 0 or arr.max() >= n):
            raise GraphError("edge endpoint out of range")
        arr = arr[arr[:, 0] != arr[:, 1]]
        arr = np.sort(arr, axis=1)
        arr = np.unique(arr, axis=0) if len(arr) else arr
        both = np.concatenate([arr, arr[:, ::-1]]) if len(arr) else arr
        order = np.lexsort((both[:, 1], both[:, 0])) if len(both) else np.zeros(0, dtype=np.int64)
        both = both[order]
        counts = np.bincount(both[:, 0], minlength=n) if len(both) else np.zeros(n, dtype=np.int64)
        indptr = np.concatenate([[0], np.cumsum(counts)])
        indices = both[:, 1] if len(both) else np.zeros(0, dtype=np.int64)
        if labels is None:
            labels = [str(i) for i in range(n)]
        return cls(indptr, indices, labels)

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @property
    def edges(self) -> np.ndarray:
        """``(m, 2)`` array of edges with ``u < v``, sorted lexicographically."""
        if self._edges is None:
            src = np.repeat(np.arange(self.n, dtype=np.int64), self.degrees)
            keep = src < self.indices
            self._edges = _frozen(np.column_stack([src[keep], self.indices[keep]]).reshape(-1, 2))
        return self._edges

    def neighbors(self, i: int) -> np.ndarray:
        return self.indices[self.indptr[i]:self.indptr[i + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        nb = self.neighbors(u)
        k = np.searchsorted(nb, v)
        return bool(k < len(nb) and nb[k] == v)

    def index(self, label) -> int:
        if self._index is None:
            self._index = {lab: i for i, lab in enumerate(self.labels)}
        try:
            return self._index[str(label)]
        except KeyError:
            raise GraphError(f"unknown node {label!r}") from None

    def adjacency(self) -> sp.csr_matrix:
        data = np.ones(len(self.indices), dtype=np.float64)
        return sp.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.labels == other.labels
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )

    __hash__ = None


def parse_edgelist(lines: Iterable[str]):
    """Parse edge-list lines into ``(labels, edges, dropped)``.

    ``dropped`` counts self-loops, duplicate records and lines carrying
    ignored extra columns.
    """
    index: dict[str, int] = {}
    labels: list[str] = []
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    dropped = {"self_loops": 0, "duplicates": 0, "extra_columns": 0}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith(("#", "%")):
            continue
        tokens = line.split()
        if len(tokens) < 2:
            raise EdgeListError(f"expected two node labels, got {line!r}", lineno)
        if len(tokens) > 2:
            dropped["extra_columns"] += 1
        ids = []
        for tok in tokens[:2]:
            if tok not in index:
                index[tok] = len(labels)
                labels.append(tok)
            ids.append(index[tok])
        u, v = ids
        if u == v:
            dropped["self_loops"] += 1
            continue
        key = (u, v) if u < v else (v, u)
        if key in seen:
            dropped["duplicates"] += 1
            continue
        seen.add(key)
        edges.append(key)
    return labels, edges, dropped


def load_edgelist(path) -> Graph:
    """Read a whitespace-separated edge list; labels are indexed in first-seen order."""
    path = Path(path)
    with path.open(encoding="utf-8") as fh:
        labels, edges, dropped = parse_edgelist(fh)
    removed = dropped["self_loops"] + dropped["duplicates"]
    if removed:
        warnings.warn(
            f"{path.name}: dropped {removed} records "
            f"({dropped['self_loops']} self-loops, {dropped['duplicates']} duplicates)",
            DroppedRecordsWarning,
            stacklevel=2,
        )
    if dropped["extra_columns"]:
        warnings.warn(
            f"{path.name}: ignored extra columns on {dropped['extra_columns']} lines (graph is unweighted)",
            DroppedRecordsWarning,
            stacklevel=2,
        )
    return Graph.from_edges(len(labels), edges, labels)


def connected_components(g: Graph) -> np.ndarray:
    """Component id per node; components numbered by their smallest node index."""
    _, comp = sp.csgraph.connected_components(g.adjacency(), directed=False)
    # scipy numbers components in order of first node visited, i.e. smallest index
    return comp.astype(np.int64)


def largest_connected_component(g: Graph) -> Graph:
    if g.n == 0:
        raise GraphError("graph has no nodes")
    comp = connected_components(g)
    sizes = np.bincount(comp)
    # argmax returns the first maximum: the component holding the smallest index
    keep = np.flatnonzero(comp == int(np.argmax(sizes)))
    if len(keep) == g.n:
        return g
    return induced_subgraph(g, keep)


def is_connected(g: Graph) -> bool:
    return g.n > 0 and int(connected_components(g).max()) == 0


def bfs_distances(g: Graph, source: int) -> np.ndarray:
    """Hop distances from ``source``; unreachable nodes hold ``UNREACHABLE``."""
    if not 0 <= int(source) < g.n:
        raise GraphError(f"unknown source node {source!r}")
    return kernels.bfs(g.indptr, g.indices, int(source))


def core_decomposition(g: Graph) -> np.ndarray:
    """Core number (k-shell index) of every node."""
    return kernels.core_numbers(g.indptr, g.indices)


def induced_subgraph(g: Graph, nodes) -> Graph:
    """Subgraph on ``nodes`` (indices), kept in increasing index order with original labels."""
    nodes = np.unique(np.asarray(list(nodes) if not isinstance(nodes, np.ndarray) else nodes, dtype=np.int64))
    if len(nodes) and (nodes[0] < 0 or nodes[-1] >= g.n):
        raise GraphError("unknown node in subgraph selection")
    remap = np.full(g.n, -1, dtype=np.int64)
    remap[nodes] = np.arange(len(nodes))
    e = g.edges
    keep = (remap[e[:, 0]] >= 0) & (remap[e[:, 1]] >= 0)
    sub = remap[e[keep]]
    return Graph.from_edges(len(nodes), sub, [g.labels[i] for i in nodes])


def edge_filtered_graphs(g: Graph, partition) -> tuple[Graph, Graph]:
    """Split edges into intra-community and inter-community graphs over all nodes."""
    comm = np.asarray(partition.community_of)
    if len(comm) != g.n:
        raise GraphError("partition does not cover every node")
    e = g.edges
    same = comm[e[:, 0]] == comm[e[:, 1]]
    return (
        Graph.from_edges(g.n, e[same], g.labels),
        Graph.from_edges(g.n, e[~same], g.labels),
    )
