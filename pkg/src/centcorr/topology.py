"""Macroscopic and mesoscopic network features used as regression predictors."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.special import zeta

from ._backend import kernels
from .exceptions import GraphError
from .graph import Graph, induced_subgraph, is_connected
from .partition import Partition, degree_split, modularity

MACRO_FEATURES = ("density", "transitivity", "assortativity", "avg_distance", "diameter", "efficiency", "gamma")
MESO_FEATURES = (
    "modularity",
    "mu",
    "internal_distance",
    "internal_density",
    "max_odf",
    "avg_odf",
    "flake_odf",
    "embeddedness",
    "hub_dominance",
)
FEATURES = MACRO_FEATURES + MESO_FEATURES

MIN_TAIL = 10
NAN = float("nan")


@dataclass(frozen=True)
class MacroscopicSummary:
    density: float
    transitivity: float
    assortativity: float
    avg_distance: float
    diameter: float
    efficiency: float
    degree_exponent: float

    def as_dict(self) -> dict[str, float]:
        d = asdict(self)
        d["gamma"] = d.pop("degree_exponent")
        return {k: d[k] for k in MACRO_FEATURES}


@dataclass(frozen=True)
class MesoscopicSummary:
    modularity: float
    mixing_parameter: float
    internal_distance: float
    internal_density: float
    max_odf: float
    avg_odf: float
    flake_odf: float
    embeddedness: float
    hub_dominance: float

    def as_dict(self) -> dict[str, float]:
        d = asdict(self)
        d["mu"] = d.pop("mixing_parameter")
        return {k: d[k] for k in MESO_FEATURES}


def transitivity(g: Graph) -> float:
    k = g.degrees.astype(np.float64)
    triads = float(np.sum(k * (k - 1)))
    if triads == 0:
        return 0.0
    a = g.adjacency()
    closed = float((a @ a).multiply(a).sum())  # six times the triangle count
    return closed / triads


def assortativity(g: Graph) -> float:
    """Pearson correlation of degrees at either end of every edge; NaN if undefined."""
    k = g.degrees.astype(np.float64)
    src = np.repeat(np.arange(g.n), g.degrees)
    x, y = k[src], k[g.indices]
    if len(x) < 2:
        return NAN
    xc = x - x.mean()
    yc = y - y.mean()
    denom = math.sqrt(float(xc @ xc) * float(yc @ yc))
    if denom == 0:
        return NAN
    return float(xc @ yc) / denom


def _zeta_tail_loglik(alpha, n, log_sum, xmin):
    return n * math.log(zeta(alpha, xmin)) + alpha * log_sum


def powerlaw_exponent(degrees, min_tail: int = MIN_TAIL) -> float:
    """Discrete power-law MLE exponent with the lower cutoff chosen by minimum KS distance.

    Returns NaN when no cutoff leaves at least ``min_tail`` observations.
    """
    x = np.sort(np.asarray(degrees, dtype=np.float64))
    x = x[x >= 1]
    best = (math.inf, NAN)
    for xmin in np.unique(x):
        tail = x[x >= xmin]
        n = len(tail)
        if n < min_tail:
            break
        log_sum = float(np.log(tail).sum())
        res = minimize_scalar(
            _zeta_tail_loglik, bounds=(1.0001, 20.0), method="bounded",
            args=(n, log_sum, xmin), options={"xatol": 1e-10},
        )
        alpha = float(res.x)
        values, counts = np.unique(tail, return_counts=True)
        emp = np.cumsum(counts) / n
        model = 1.0 - zeta(alpha, values + 1) / zeta(alpha, xmin)
        ks = float(np.max(np.abs(emp - model)))
        if ks < best[0]:
            best = (ks, alpha)
    return best[1]


def macroscopic(g: Graph) -> MacroscopicSummary:
    n = g.n
    if n < 3 or not is_connected(g):
        raise GraphError("macroscopic features need a connected graph with at least 3 nodes")
    dsum, inv, ecc, _ = kernels.distance_sums(g.indptr, g.indices)
    pairs = n * (n - 1)
    return MacroscopicSummary(
        density=2.0 * g.m / pairs,
        transitivity=transitivity(g),
        assortativity=assortativity(g),
        avg_distance=float(dsum.sum()) / pairs,
        diameter=float(ecc.max()),
        efficiency=float(inv.sum()) / pairs,
        degree_exponent=powerlaw_exponent(g.degrees),
    )


def _community_mean(values, weights, weighting):
    values = np.asarray(values, dtype=np.float64)
    if len(values) == 0:
        return NAN
    if weighting == "size-weighted":
        return float(np.average(values, weights=weights))
    return float(values.mean())


def mesoscopic(g: Graph, p: Partition, weighting: str = "unweighted") -> MesoscopicSummary:
    if weighting not in ("unweighted", "size-weighted"):
        raise ValueError(f"unknown community weighting {weighting!r}")
    if g.m == 0:
        raise GraphError("mesoscopic features need at least one edge")
    split = degree_split(g, p)
    k = g.degrees.astype(np.float64)
    if np.any(k == 0):
        raise GraphError("mesoscopic features need every node to have a link")
    odf = split.k_inter / k
    sizes = p.sizes

    dist_vals, dist_w = [], []
    dens_vals, dens_w = [], []
    hub_vals, hub_w = [], []
    max_odf, avg_odf, flake = [], [], []
    for members in p.members:
        nc = len(members)
        max_odf.append(odf[members].max())
        avg_odf.append(odf[members].mean())
        flake.append(np.mean(split.k_intra[members] < k[members] / 2.0))
        if nc < 2:
            continue
        sub = induced_subgraph(g, members)
        dens_vals.append(2.0 * sub.m / (nc * (nc - 1)))
        dens_w.append(nc)
        hub_vals.append(split.k_intra[members].max() / (nc - 1))
        hub_w.append(nc)
        dsum, _, _, reach = kernels.distance_sums(sub.indptr, sub.indices)
        if reach.sum() > 0:
            dist_vals.append(dsum.sum() / reach.sum())
            dist_w.append(nc)
    all_w = sizes.astype(np.float64)
    return MesoscopicSummary(
        modularity=modularity(g, p),
        mixing_parameter=float(split.k_inter.sum() / k.sum()),
        internal_distance=_community_mean(dist_vals, dist_w, weighting),
        internal_density=_community_mean(dens_vals, dens_w, weighting),
        max_odf=_community_mean(max_odf, all_w, weighting),
        avg_odf=_community_mean(avg_odf, all_w, weighting),
        flake_odf=_community_mean(flake, all_w, weighting),
        embeddedness=float(np.mean(split.k_intra / k)),
        hub_dominance=_community_mean(hub_vals, hub_w, weighting),
    )
