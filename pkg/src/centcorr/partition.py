"""Community partitions: Louvain detection, file I/O, modularity and degree splits."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np
import scipy.sparse as sp

from ._backend import kernels
from .exceptions import PartitionError
from .graph import Graph

MAX_SWEEPS = 1000


def _canonical(assignment) -> np.ndarray:
    """Relabel community ids densely in order of first appearance."""
    a = np.asarray(assignment)
    if a.ndim != 1:
        raise PartitionError("community assignment must be one-dimensional")
    _, first, inverse = np.unique(a, return_index=True, return_inverse=True)
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(len(first))
    return rank[inverse.reshape(-1)]


class Partition:
    """Node-to-community assignment with dense community ids ``0..n_communities-1``.

    Ids are canonical: communities are numbered by their smallest member, so
    two partitions grouping nodes identically compare equal.
    """

    __slots__ = ("community_of", "_members")

    def __init__(self, assignment):
        comm = _canonical(assignment)
        comm.flags.writeable = False
        self.community_of = comm
        self._members = None

    @classmethod
    def singletons(cls, n: int) -> "Partition":
        return cls(np.arange(n))

    @classmethod
    def whole(cls, n: int) -> "Partition":
        return cls(np.zeros(n, dtype=np.int64))

    @property
    def n(self) -> int:
        return len(self.community_of)

    @property
    def n_communities(self) -> int:
        return int(self.community_of.max()) + 1 if self.n else 0

    @property
    def sizes(self) -> np.ndarray:
        return np.bincount(self.community_of, minlength=self.n_communities)

    @property
    def members(self) -> tuple[np.ndarray, ...]:
        if self._members is None:
            order = np.argsort(self.community_of, kind="stable")
            bounds = np.cumsum(self.sizes)[:-1]
            self._members = tuple(np.split(order, bounds))
        return self._members

    def __eq__(self, other):
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self.community_of, other.community_of)

    __hash__ = None

    def __repr__(self):
        return f"Partition(n={self.n}, n_communities={self.n_communities})"


def _check_cover(g: Graph, p: Partition):
    if p.n != g.n:
        raise PartitionError(f"partition covers {p.n} nodes, graph has {g.n}")


def modularity(g: Graph, p: Partition) -> float:
    """Newman-Girvan modularity, resolution 1."""
    _check_cover(g, p)
    if g.m == 0:
        raise PartitionError("modularity is undefined for a graph without edges")
    comm = p.community_of
    e = g.edges
    intra = np.bincount(comm[e[:, 0]][comm[e[:, 0]] == comm[e[:, 1]]], minlength=p.n_communities)
    dsum = np.bincount(comm, weights=g.degrees, minlength=p.n_communities)
    m = g.m
    return float(np.sum(intra / m - (dsum / (2.0 * m)) ** 2))


@dataclass(frozen=True, eq=False)
class DegreeSplit:
    """Per-node intra/inter community degrees.

    ``k_ic`` is a sparse ``(n, n_communities)`` matrix of link counts from each
    node into each community; ``nnc`` counts the distinct foreign communities
    among a node's neighbors.
    """

    k_intra: np.ndarray
    k_inter: np.ndarray
    k_ic: sp.csr_matrix
    nnc: np.ndarray


def degree_split(g: Graph, p: Partition) -> DegreeSplit:
    _check_cover(g, p)
    comm = p.community_of
    rows = np.repeat(np.arange(g.n, dtype=np.int64), g.degrees)
    cols = comm[g.indices]
    k_ic = sp.csr_matrix(
        (np.ones(len(rows), dtype=np.int64), (rows, cols)), shape=(g.n, p.n_communities)
    )
    k_ic.sum_duplicates()
    k_ic.sort_indices()
    k_intra = np.asarray(k_ic[np.arange(g.n), comm]).reshape(-1).astype(np.int64)
    k_inter = g.degrees - k_intra
    nnc = np.diff(k_ic.indptr) - (k_intra > 0)
    return DegreeSplit(k_intra, k_inter, k_ic, nnc.astype(np.int64))


def load_partition(path, g: Graph) -> Partition:
    """Read ``node_label community_label`` lines covering exactly the nodes of ``g``."""
    assignment: dict[int, str] = {}
    with Path(path).open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            tokens = line.split()
            if len(tokens) != 2:
                raise PartitionError(f"line {lineno}: expected 'node community', got {line!r}")
            node, comm = tokens
            try:
                i = g.index(node)
            except ValueError:
                raise PartitionError(f"line {lineno}: node {node!r} is not in the graph") from None
            if i in assignment and assignment[i] != comm:
                raise PartitionError(f"line {lineno}: node {node!r} assigned to two communities")
            assignment[i] = comm
    missing = [g.labels[i] for i in range(g.n) if i not in assignment]
    if missing:
        raise PartitionError(f"partition file misses {len(missing)} node(s), e.g. {missing[0]!r}")
    return Partition([assignment[i] for i in range(g.n)])


def save_partition(p: Partition, g: Graph, path) -> None:
    _check_cover(g, p)
    rows = sorted(zip(g.labels, p.community_of.tolist()))
    with Path(path).open("w", encoding="utf-8") as fh:
        for label, c in rows:
            fh.write(f"{label} {c}\n")


def restrict(p: Partition, parent: Graph, sub: Graph) -> Partition:
    """Project a partition of ``parent`` onto the nodes of a subgraph (matched by label)."""
    return Partition(p.community_of[[parent.index(lab) for lab in sub.labels]])


def _aggregate(indptr, indices, weights, node_w, loops, comm):
    nc = int(comm.max()) + 1
    rows = np.repeat(np.arange(len(node_w), dtype=np.int64), np.diff(indptr))
    cr = comm[rows]
    cc = comm[indices]
    inside = cr == cc
    new_loops = np.bincount(comm, weights=loops, minlength=nc) + np.bincount(
        cr[inside], weights=weights[inside], minlength=nc
    ) / 2.0
    adj = sp.csr_matrix((weights[~inside], (cr[~inside], cc[~inside])), shape=(nc, nc))
    adj.sum_duplicates()
    adj.sort_indices()
    return (
        adj.indptr.astype(np.int64),
        adj.indices.astype(np.int64),
        adj.data.astype(np.float64),
        np.bincount(comm, weights=node_w, minlength=nc),
        new_loops,
    )


def louvain_levels(g: Graph, seed: int = 0) -> list[Partition]:
    """Louvain passes; entry ``k`` is the partition after the ``k``-th aggregation round.

    Each round shuffles the node visiting order with a generator seeded once
    by ``seed``, so results depend only on ``(g, seed)``.
    """
    if g.m == 0:
        raise PartitionError("Louvain needs at least one edge")
    rng = np.random.default_rng(seed)
    indptr = g.indptr.astype(np.int64)
    indices = g.indices.astype(np.int64)
    weights = np.ones(len(indices), dtype=np.float64)
    node_w = g.degrees.astype(np.float64)
    loops = np.zeros(g.n, dtype=np.float64)
    m2 = 2.0 * g.m
    membership = np.arange(g.n, dtype=np.int64)
    levels: list[Partition] = []
    while True:
        nl = len(node_w)
        comm = np.arange(nl, dtype=np.int64)
        order = rng.permutation(nl).astype(np.int64)
        moves = kernels.louvain_move(indptr, indices, weights, node_w, comm, order, m2, MAX_SWEEPS)
        if moves == 0:
            break
        comm = _canonical(comm)
        membership = comm[membership]
        levels.append(Partition(membership))
        if int(comm.max()) + 1 == nl:
            break
        indptr, indices, weights, node_w, loops = _aggregate(indptr, indices, weights, node_w, loops, comm)
    if not levels:
        levels.append(Partition.singletons(g.n))
    return levels


def louvain(g: Graph, seed: int = 0) -> Partition:
    """Greedy modularity optimisation (local moving + aggregation)."""
    return louvain_levels(g, seed)[-1]
