"""Community-aware centrality measures.

Each measure is a function of a :class:`CommunityContext`, which bundles the
graph, its partition and the per-node intra/inter degree split.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .classical import CentralityVector
from .exceptions import CentralityError
from .graph import Graph, core_decomposition, edge_filtered_graphs
from .partition import DegreeSplit, Partition, degree_split, modularity

COMMUNITY_MEASURES = ("chb", "pc", "cbm", "comm", "mv", "cbc", "ksc")

# "full-minus-removed": M(G) - M(G_i), hubs positive and bridges negative.
# "removed-minus-full": M(G_i) - M(G), the opposite sign.
MV_CONVENTIONS = ("full-minus-removed", "removed-minus-full")


@dataclass(frozen=True)
class CommunityConfig:
    kshell_delta: float = 0.5
    comm_R: float = 1.0
    log_base: float = np.e
    mv_convention: str = "full-minus-removed"
    mv_absolute: bool = False

    def __post_init__(self):
        if not 0.0 <= self.kshell_delta <= 1.0:
            raise CentralityError("k-shell mixing weight must lie in [0, 1]")
        if self.comm_R <= 0:
            raise CentralityError("Comm centrality scale R must be positive")
        if self.log_base <= 0 or self.log_base == 1:
            raise CentralityError("invalid logarithm base")
        if self.mv_convention not in MV_CONVENTIONS:
            raise CentralityError(f"mv_convention must be one of {MV_CONVENTIONS}")


@dataclass(frozen=True, eq=False)
class CommunityContext:
    graph: Graph
    partition: Partition
    split: DegreeSplit
    community_mu: np.ndarray  # inter-link endpoint share of each community's total degree
    nnc: np.ndarray

    @classmethod
    def build(cls, g: Graph, p: Partition) -> "CommunityContext":
        split = degree_split(g, p)
        nc = p.n_communities
        total = np.bincount(p.community_of, weights=g.degrees, minlength=nc)
        inter = np.bincount(p.community_of, weights=split.k_inter, minlength=nc)
        mu = np.divide(inter, total, out=np.zeros(nc), where=total > 0)
        return cls(g, p, split, mu, split.nnc)


def _vec(name, scores):
    return CentralityVector(name, np.asarray(scores, dtype=np.float64))


def _require_degree(ctx: CommunityContext, name: str):
    if np.any(ctx.graph.degrees == 0):
        raise CentralityError(f"{name} is undefined for isolated nodes")


def community_hub_bridge(ctx: CommunityContext) -> CentralityVector:
    size = ctx.partition.sizes[ctx.partition.community_of]
    return _vec("chb", size * ctx.split.k_intra + ctx.nnc * ctx.split.k_inter)


def participation_coefficient(ctx: CommunityContext) -> CentralityVector:
    _require_degree(ctx, "participation coefficient")
    k = ctx.graph.degrees.astype(np.float64)
    kic = ctx.split.k_ic
    rows = np.repeat(np.arange(ctx.graph.n), np.diff(kic.indptr))
    frac = kic.data / k[rows]
    return _vec("pc", 1.0 - np.bincount(rows, weights=frac * frac, minlength=ctx.graph.n))


def _plogp(p):
    out = np.zeros_like(p)
    nz = p > 0
    out[nz] = p[nz] * np.log(p[nz])
    return out


def community_based_mediator(ctx: CommunityContext, cfg: CommunityConfig = CommunityConfig()) -> CentralityVector:
    """Entropy of the intra/inter link proportions times the normalised degree."""
    _require_degree(ctx, "community-based mediator")
    k = ctx.graph.degrees.astype(np.float64)
    h = -(_plogp(ctx.split.k_intra / k) + _plogp(ctx.split.k_inter / k)) / np.log(cfg.log_base)
    return _vec("cbm", h * k / k.sum())


def _community_max(values, comm, nc):
    out = np.zeros(nc)
    np.maximum.at(out, comm, values)
    return out


def comm_centrality(ctx: CommunityContext, cfg: CommunityConfig = CommunityConfig()) -> CentralityVector:
    comm = ctx.partition.community_of
    nc = ctx.partition.n_communities
    R = cfg.comm_R
    k_intra = ctx.split.k_intra.astype(np.float64)
    k_inter = ctx.split.k_inter.astype(np.float64)
    max_intra = _community_max(k_intra, comm, nc)[comm]
    max_inter = _community_max(k_inter, comm, nc)[comm]
    # a community without intra (resp. inter) links contributes nothing on that side
    chi = np.divide(k_intra, max_intra, out=np.zeros(len(comm)), where=max_intra > 0) * R
    phi = np.divide(k_inter, max_inter, out=np.zeros(len(comm)), where=max_inter > 0) * R
    mu = ctx.community_mu[comm]
    return _vec("comm", (1.0 + mu) * chi + (1.0 - mu) * phi * phi)


def modularity_after_removal(ctx: CommunityContext) -> np.ndarray:
    """Modularity of each node-deleted graph under the unchanged assignment.

    Updates the per-community intra-edge and degree totals in O(degree) per
    node using exact integer arithmetic.
    """
    g = ctx.graph
    comm = ctx.partition.community_of
    nc = ctx.partition.n_communities
    deg = g.degrees
    e = g.edges
    same = comm[e[:, 0]] == comm[e[:, 1]]
    intra = np.bincount(comm[e[:, 0]][same], minlength=nc).astype(np.int64)
    dsum = np.bincount(comm, weights=deg, minlength=nc).astype(np.int64)
    total_intra = int(intra.sum())
    sq_total = int(np.dot(dsum, dsum))
    kic = ctx.split.k_ic
    out = np.empty(g.n)
    for i in range(g.n):
        ki = int(deg[i])
        m_new = g.m - ki
        if m_new == 0:
            raise CentralityError(f"removing node {g.labels[i]!r} leaves no edges")
        ci = int(comm[i])
        cols = kic.indices[kic.indptr[i]:kic.indptr[i + 1]].tolist()
        vals = kic.data[kic.indptr[i]:kic.indptr[i + 1]].tolist()
        delta = dict(zip(cols, vals))
        delta[ci] = delta.get(ci, 0) + ki
        sq = sq_total
        for c, dc in delta.items():
            old = int(dsum[c])
            sq += (old - dc) ** 2 - old * old
        l_new = total_intra - int(ctx.split.k_intra[i])
        out[i] = l_new / m_new - sq / (4.0 * m_new * m_new)
    return out


def modularity_vitality(ctx: CommunityContext, cfg: CommunityConfig = CommunityConfig()) -> CentralityVector:
    """Signed modularity change from deleting each node, partition otherwise fixed."""
    if ctx.graph.m == 0:
        raise CentralityError("modularity vitality needs at least one edge")
    mv = modularity(ctx.graph, ctx.partition) - modularity_after_removal(ctx)
    if cfg.mv_convention == "removed-minus-full":
        mv = -mv
    return _vec("mv", np.abs(mv) if cfg.mv_absolute else mv)


def community_based_centrality(ctx: CommunityContext) -> CentralityVector:
    kic = ctx.split.k_ic
    share = ctx.partition.sizes / ctx.graph.n
    return _vec("cbc", kic @ share)


def kshell_with_community(ctx: CommunityContext, cfg: CommunityConfig = CommunityConfig()) -> CentralityVector:
    g_intra, g_inter = edge_filtered_graphs(ctx.graph, ctx.partition)
    d = cfg.kshell_delta
    return _vec("ksc", d * core_decomposition(g_intra) + (1.0 - d) * core_decomposition(g_inter))


def compute_community(ctx: CommunityContext, cfg: CommunityConfig = CommunityConfig(), names=COMMUNITY_MEASURES):
    funcs = {
        "chb": lambda: community_hub_bridge(ctx),
        "pc": lambda: participation_coefficient(ctx),
        "cbm": lambda: community_based_mediator(ctx, cfg),
        "comm": lambda: comm_centrality(ctx, cfg),
        "mv": lambda: modularity_vitality(ctx, cfg),
        "cbc": lambda: community_based_centrality(ctx),
        "ksc": lambda: kshell_with_community(ctx, cfg),
    }
    unknown = set(names) - set(funcs)
    if unknown:
        raise CentralityError(f"unknown community-aware measure(s): {sorted(unknown)}")
    return {name: funcs[name]() for name in COMMUNITY_MEASURES if name in names}
