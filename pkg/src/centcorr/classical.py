"""Classical centrality measures: five local, five global."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from ._backend import kernels
from .exceptions import CentralityError
from .graph import Graph, is_connected

CLASSICAL_MEASURES = (
    "degree",
    "leverage",
    "laplacian",
    "diffusion",
    "mnc",
    "betweenness",
    "closeness",
    "katz",
    "pagerank",
    "subgraph",
)


@dataclass(frozen=True, eq=False)
class CentralityVector:
    measure_name: str
    scores: np.ndarray

    def __post_init__(self):
        if not np.all(np.isfinite(self.scores)):
            raise CentralityError(f"{self.measure_name}: non-finite scores")

    def __len__(self):
        return len(self.scores)

    def ranking(self) -> np.ndarray:
        """Node indices from highest to lowest score (stable on ties)."""
        return np.argsort(-self.scores, kind="stable")


@dataclass(frozen=True)
class ClassicalConfig:
    katz_s: float | None = None  # None: 0.9 / lambda_max of each graph
    katz_fraction: float = 0.9
    pagerank_d: float = 0.85
    pagerank_tol: float = 1e-10
    pagerank_max_iter: int = 10_000
    diffusion_varpi: float = 1.0
    subgraph_max_nodes: int = 25_000

    def __post_init__(self):
        if not 0.0 < self.pagerank_d < 1.0:
            raise CentralityError("pagerank damping must lie in (0, 1)")
        if not 0.0 < self.diffusion_varpi <= 1.0:
            raise CentralityError("diffusion propagation probability must lie in (0, 1]")
        if self.katz_s is not None and self.katz_s <= 0:
            raise CentralityError("katz attenuation must be positive")


def _vec(name, scores):
    return CentralityVector(name, np.asarray(scores, dtype=np.float64))


def degree(g: Graph) -> CentralityVector:
    return _vec("degree", g.degrees)


def leverage(g: Graph) -> CentralityVector:
    k = g.degrees.astype(np.float64)
    if np.any(k == 0):
        raise CentralityError("leverage is undefined for isolated nodes")
    src = np.repeat(np.arange(g.n), g.degrees)
    ki, kj = k[src], k[g.indices]
    total = np.bincount(src, weights=(ki - kj) / (ki + kj), minlength=g.n)
    return _vec("leverage", total / k)


def _neighbor_degree_sum(g: Graph) -> np.ndarray:
    src = np.repeat(np.arange(g.n), g.degrees)
    return np.bincount(src, weights=g.degrees[g.indices], minlength=g.n)


def laplacian(g: Graph) -> CentralityVector:
    k = g.degrees.astype(np.float64)
    return _vec("laplacian", k * k + k + 2.0 * _neighbor_degree_sum(g))


def diffusion_degree(g: Graph, cfg: ClassicalConfig = ClassicalConfig()) -> CentralityVector:
    """Own degree plus neighbor degrees, each weighted by a uniform propagation probability."""
    w = cfg.diffusion_varpi
    return _vec("diffusion", w * g.degrees + w * _neighbor_degree_sum(g))


def max_neighborhood_component(g: Graph) -> CentralityVector:
    return _vec("mnc", kernels.max_neighbor_component(g.indptr, g.indices))


def betweenness(g: Graph) -> CentralityVector:
    """Unnormalised shortest-path betweenness over unordered endpoint pairs."""
    return _vec("betweenness", kernels.betweenness(g.indptr, g.indices))


def closeness(g: Graph) -> CentralityVector:
    if g.n < 2 or not is_connected(g):
        raise CentralityError("closeness requires a connected graph with at least two nodes")
    dsum, _, _, _ = kernels.distance_sums(g.indptr, g.indices)
    return _vec("closeness", (g.n - 1) / dsum.astype(np.float64))


def spectral_radius(g: Graph, tol: float = 1e-12, max_iter: int = 100_000) -> float:
    """Largest adjacency eigenvalue by power iteration on ``A + I``.

    The unit shift keeps the dominant eigenvalue unique on bipartite graphs.
    """
    if g.m == 0:
        return 0.0
    a = g.adjacency()
    x = np.ones(g.n) / np.sqrt(g.n)
    lam = 0.0
    for _ in range(max_iter):
        y = a @ x + x
        new = float(x @ y)
        y /= np.linalg.norm(y)
        if abs(new - lam) <= tol * max(1.0, abs(new)):
            x = y
            lam = new
            break
        x, lam = y, new
    return float(x @ (a @ x))


def katz_attenuation(g: Graph, cfg: ClassicalConfig = ClassicalConfig()) -> float:
    """Attenuation factor actually used for ``g`` (explicit or ``fraction / lambda_max``)."""
    if cfg.katz_s is not None:
        return float(cfg.katz_s)
    lam = spectral_radius(g)
    return cfg.katz_fraction / lam if lam > 0 else cfg.katz_fraction


def katz(g: Graph, cfg: ClassicalConfig = ClassicalConfig(), s: float | None = None) -> CentralityVector:
    """Row sums of ``sum_{p>=1} s^p A^p`` via ``(I - sA) x = sA 1``."""
    lam = spectral_radius(g)
    if s is None:
        s = cfg.katz_s if cfg.katz_s is not None else (cfg.katz_fraction / lam if lam > 0 else cfg.katz_fraction)
    if s * lam >= 1.0:
        raise CentralityError(f"katz series diverges: s={s:g} >= 1/lambda_max={1.0 / lam:g}")
    a = g.adjacency().tocsc()
    m = (sp.identity(g.n, format="csc") - s * a).tocsc()
    rhs = s * (a @ np.ones(g.n))
    x = spla.spsolve(m, rhs) if g.n else np.zeros(0)
    x = np.atleast_1d(x)
    for _ in range(3):
        r = rhs - m @ x
        if g.n == 0 or np.max(np.abs(r)) < 1e-10:
            break
        x = x + np.atleast_1d(spla.spsolve(m, r))
    return _vec("katz", x)


def pagerank(g: Graph, cfg: ClassicalConfig = ClassicalConfig()) -> CentralityVector:
    if g.n == 0 or not is_connected(g):
        raise CentralityError("pagerank requires a connected graph")
    if g.n == 1:
        return _vec("pagerank", [1.0])
    d = cfg.pagerank_d
    k = g.degrees.astype(np.float64)
    a = g.adjacency()
    x = np.full(g.n, 1.0 / g.n)
    base = (1.0 - d) / g.n
    for _ in range(cfg.pagerank_max_iter):
        new = base + d * (a @ (x / k))
        change = float(np.abs(new - x).sum())
        x = new
        if change < cfg.pagerank_tol:
            return _vec("pagerank", x)
    raise CentralityError(f"pagerank did not converge (L1 change {change:.3g})")


def subgraph(g: Graph, cfg: ClassicalConfig = ClassicalConfig()) -> CentralityVector:
    """Diagonal of ``exp(A)`` from a full symmetric eigendecomposition."""
    if g.n > cfg.subgraph_max_nodes:
        raise CentralityError(
            f"subgraph centrality: {g.n} nodes exceeds the dense cap of {cfg.subgraph_max_nodes}; "
            "raise subgraph_max_nodes or use a truncated series"
        )
    if g.n == 0:
        return _vec("subgraph", [])
    try:
        lam, vec = np.linalg.eigh(g.adjacency().toarray())
    except np.linalg.LinAlgError as exc:
        raise CentralityError(f"eigensolver failed: {exc}") from exc
    return _vec("subgraph", (vec * vec) @ np.exp(lam))


def compute_classical(g: Graph, cfg: ClassicalConfig = ClassicalConfig(), names=CLASSICAL_MEASURES):
    """All requested classical measures, keyed by catalog name."""
    funcs = {
        "degree": lambda: degree(g),
        "leverage": lambda: leverage(g),
        "laplacian": lambda: laplacian(g),
        "diffusion": lambda: diffusion_degree(g, cfg),
        "mnc": lambda: max_neighborhood_component(g),
        "betweenness": lambda: betweenness(g),
        "closeness": lambda: closeness(g),
        "katz": lambda: katz(g, cfg),
        "pagerank": lambda: pagerank(g, cfg),
        "subgraph": lambda: subgraph(g, cfg),
    }
    unknown = set(names) - set(funcs)
    if unknown:
        raise CentralityError(f"unknown classical measure(s): {sorted(unknown)}")
    return {name: funcs[name]() for name in CLASSICAL_MEASURES if name in names}
