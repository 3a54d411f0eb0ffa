"""Corpus orchestration: per-network analysis, cross-network aggregation, CSV reports."""

from __future__ import annotations

import csv
import json
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path

import numpy as np

from . import __version__
from .classical import CLASSICAL_MEASURES, CentralityVector, ClassicalConfig, compute_classical, katz_attenuation
from .community import COMMUNITY_MEASURES, CommunityConfig, CommunityContext, compute_community
from .exceptions import CentcorrError, StatsError
from .graph import Graph, largest_connected_component, load_edgelist
from .partition import Partition, load_partition, louvain, restrict
from .stats import (
    CorrelationRecord,
    DistributionSummary,
    RegressionRecord,
    kendall_tau,
    ols_fit,
    pairwise_network_consistency,
    summarize,
)
from .topology import FEATURES, MacroscopicSummary, MesoscopicSummary, macroscopic, mesoscopic

log = logging.getLogger(__name__)

EDGELIST_SUFFIXES = (".txt", ".edges", ".edgelist", ".el")
NAN = float("nan")

DEFINITION_VERSIONS = {
    "graph": "largest-connected-component/v1",
    "betweenness": "unordered-pairs-unnormalized/v1",
    "katz": "fraction-of-inverse-spectral-radius/v1",
    "cbm": "proportional-two-term/v1",
    "comm": "mu-endpoint-share/phi-zero-if-no-inter/v1",
    "mv": "signed/full-minus-removed/fixed-partition/v1",
    "tau": "tau-b/v1",
    "quantiles": "linear-interpolation/v1",
    "odf-family": "community-mean/v1",
    "gamma": "discrete-mle-ks-xmin/min-tail-10/v1",
}


@dataclass
class RunConfig:
    corpus_dir: Path | None = None
    partitions_dir: Path | None = None
    seed: int = 0
    classical: ClassicalConfig = field(default_factory=ClassicalConfig)
    community: CommunityConfig = field(default_factory=CommunityConfig)
    output_dir: Path = Path("centcorr-out")
    classical_measures: tuple[str, ...] = CLASSICAL_MEASURES
    community_measures: tuple[str, ...] = COMMUNITY_MEASURES
    community_weighting: str = "unweighted"
    workers: int = 1

    @property
    def partition_source(self) -> str:
        return "external-dir" if self.partitions_dir is not None else "louvain"


@dataclass
class NetworkReport:
    network_id: str
    graph: Graph
    partition: Partition
    input_nodes: int
    centralities: dict[str, CentralityVector]
    correlations: list[CorrelationRecord]
    macro: MacroscopicSummary | None
    meso: MesoscopicSummary | None
    distributions: dict[str, DistributionSummary | None]
    mean_tau: dict[str, float]
    metadata: dict

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    @property
    def n_communities(self) -> int:
        return self.partition.n_communities

    def features(self) -> dict[str, float]:
        out = dict.fromkeys(FEATURES, NAN)
        if self.macro is not None:
            out.update(self.macro.as_dict())
        if self.meso is not None:
            out.update(self.meso.as_dict())
        return out

    def tau_vector(self, classical=CLASSICAL_MEASURES, community=COMMUNITY_MEASURES) -> np.ndarray:
        lookup = {(r.classical_name, r.community_name): r.tau for r in self.correlations}
        return np.array([lookup.get((a, b), NAN) for a in classical for b in community])


@dataclass
class CorpusResult:
    reports: list[NetworkReport]
    skipped: list[dict]
    pair_summary: list[dict]
    consistency_ids: list[str]
    consistency: np.ndarray
    consistency_summary: DistributionSummary | None
    regressions: list[RegressionRecord]


def _safe_summary(values) -> DistributionSummary | None:
    values = [v for v in values if not math.isnan(v)]
    return summarize(values) if values else None


def analyze_network(g: Graph, cfg: RunConfig = RunConfig(), network_id: str = "network",
                    partition: Partition | None = None) -> NetworkReport:
    """Full per-network analysis on the largest connected component of ``g``.

    ``partition``, when given, must cover ``g``; it is projected onto the
    component. Otherwise communities come from a seeded Louvain run.
    """
    try:
        lcc = largest_connected_component(g)
        if partition is not None:
            p = restrict(partition, g, lcc) if lcc is not g else partition
        else:
            p = louvain(lcc, cfg.seed)
        classical = compute_classical(lcc, cfg.classical, cfg.classical_measures)
        ctx = CommunityContext.build(lcc, p)
        community = compute_community(ctx, cfg.community, cfg.community_measures)
    except CentcorrError as exc:
        raise type(exc)(f"{network_id}: {exc}") from exc

    records = []
    for a, va in classical.items():
        for b, vb in community.items():
            try:
                tau = kendall_tau(va.scores, vb.scores)
            except StatsError:
                tau = NAN  # a constant score vector has no ranking
            records.append(CorrelationRecord(network_id, a, b, tau))

    try:
        macro = macroscopic(lcc)
    except CentcorrError as exc:
        log.warning("%s: macroscopic features unavailable (%s)", network_id, exc)
        macro = None
    meso = mesoscopic(lcc, p, cfg.community_weighting) if lcc.m else None

    distributions: dict[str, DistributionSummary | None] = {"all": _safe_summary([r.tau for r in records])}
    mean_tau = {}
    for b in community:
        taus = [r.tau for r in records if r.community_name == b and not math.isnan(r.tau)]
        distributions[b] = _safe_summary(taus)
        mean_tau[b] = float(np.mean(taus)) if taus else NAN

    flags = []
    if p.n_communities == 1:
        flags.append("single-community")
    if lcc.n != g.n:
        flags.append("lcc-reduced")
    undefined = sum(math.isnan(r.tau) for r in records)
    if undefined:
        flags.append(f"undefined-tau:{undefined}")
    metadata = {
        "seed": cfg.seed,
        "partition_source": "external" if partition is not None else "louvain",
        "katz_s": katz_attenuation(lcc, cfg.classical) if "katz" in classical else None,
        "input_nodes": g.n,
        "input_edges": g.m,
        "flags": flags,
    }
    return NetworkReport(network_id, lcc, p, g.n, {**classical, **community}, records,
                         macro, meso, distributions, mean_tau, metadata)


def discover_corpus(corpus_dir) -> list[Path]:
    corpus_dir = Path(corpus_dir)
    if not corpus_dir.is_dir():
        raise CentcorrError(f"corpus directory {corpus_dir} does not exist")
    return sorted(
        (p for p in corpus_dir.iterdir() if p.is_file() and p.suffix in EDGELIST_SUFFIXES and not p.name.startswith(".")),
        key=lambda p: p.stem,
    )


def _partition_file(partitions_dir: Path, network_id: str) -> Path:
    hits = sorted(p for p in Path(partitions_dir).iterdir() if p.is_file() and p.stem == network_id)
    if not hits:
        raise CentcorrError(f"{network_id}: no partition file in {partitions_dir}")
    return hits[0]


def _run_one(path: Path, cfg: RunConfig):
    network_id = path.stem
    try:
        g = load_edgelist(path)
        part = None
        if cfg.partitions_dir is not None:
            part = load_partition(_partition_file(cfg.partitions_dir, network_id), g)
        return analyze_network(g, cfg, network_id, part), None
    except (CentcorrError, OSError) as exc:
        return None, {"network": network_id, "error": str(exc)}


def aggregate(reports: list[NetworkReport], cfg: RunConfig, skipped=()) -> CorpusResult:
    classical = [a for a in CLASSICAL_MEASURES if a in cfg.classical_measures]
    community = [b for b in COMMUNITY_MEASURES if b in cfg.community_measures]
    reports = sorted(reports, key=lambda r: r.network_id)

    pair_summary = []
    for a in classical:
        for b in community:
            taus = [
                r.tau for rep in reports for r in rep.correlations
                if r.classical_name == a and r.community_name == b and not math.isnan(r.tau)
            ]
            pair_summary.append({
                "classical": a,
                "community_aware": b,
                "mean_tau": float(np.mean(taus)) if taus else NAN,
                "std_tau": float(np.std(taus, ddof=1)) if len(taus) > 1 else (0.0 if taus else NAN),
                "n_networks": len(taus),
            })

    ids, matrix = pairwise_network_consistency({r.network_id: r.tau_vector(classical, community) for r in reports})
    upper = matrix[np.triu_indices(len(ids), k=1)]
    consistency_summary = _safe_summary(upper.tolist())

    regressions = []
    feats = [r.features() for r in reports]
    for b in community:
        y = np.array([r.mean_tau[b] for r in reports])
        for f in FEATURES:
            x = np.array([fv[f] for fv in feats])
            ok = np.isfinite(x) & np.isfinite(y)
            try:
                rec = ols_fit(x[ok], y[ok], b, f)
            except StatsError:
                rec = RegressionRecord(b, f, NAN, NAN, NAN, NAN, int(ok.sum()))
            regressions.append(rec)
    return CorpusResult(reports, list(skipped), pair_summary, ids, matrix, consistency_summary, regressions)


def batch(cfg: RunConfig) -> CorpusResult:
    paths = discover_corpus(cfg.corpus_dir)
    if not paths:
        raise CentcorrError(f"no edge lists found in {cfg.corpus_dir}")
    if cfg.workers > 1:
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            results = list(pool.map(_run_one, paths, [cfg] * len(paths)))
    else:
        results = [_run_one(p, cfg) for p in paths]
    reports = [r for r, _ in results if r is not None]
    skipped = [e for _, e in results if e is not None]
    for e in skipped:
        log.error("skipped %s: %s", e["network"], e["error"])
    if not reports:
        raise CentcorrError("every network in the corpus failed")
    return aggregate(reports, cfg, skipped)


# ---------------------------------------------------------------- emission

def fmt(x) -> str:
    if x is None:
        return "nan"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    x = float(x)
    if math.isnan(x):
        return "nan"
    if x == 0:
        return "0"
    return f"{x:.6g}"


def _write_csv(path: Path, header, rows):
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def _centrality_rows(rep: NetworkReport):
    for name in CLASSICAL_MEASURES + COMMUNITY_MEASURES:
        vec = rep.centralities.get(name)
        if vec is None:
            continue
        for label, score in zip(rep.graph.labels, vec.scores.tolist()):
            yield rep.network_id, label, name, fmt(score)


def _correlation_rows(rep: NetworkReport):
    for r in rep.correlations:
        yield r.network_id, r.classical_name, r.community_name, fmt(r.tau)


def _topology_rows(rep: NetworkReport):
    for f, v in rep.features().items():
        yield rep.network_id, f, fmt(v)


def _distribution_rows(rep: NetworkReport):
    for scope, s in rep.distributions.items():
        if s is None:
            yield (rep.network_id, scope, *["nan"] * 6, 0)
        else:
            yield (rep.network_id, scope, fmt(s.mean), fmt(s.median), fmt(s.std), fmt(s.iqr),
                   fmt(s.min), fmt(s.max), s.n)


HEADERS = {
    "centrality.csv": ("network", "node", "measure", "score"),
    "correlations.csv": ("network", "classical", "community_aware", "tau"),
    "topology.csv": ("network", "feature", "value"),
    "distributions.csv": ("network", "scope", "mean", "median", "std", "iqr", "min", "max", "n"),
    "pair_summary.csv": ("classical", "community_aware", "mean_tau", "std_tau", "n_networks"),
    "consistency.csv": ("network_a", "network_b", "pearson"),
    "regression.csv": ("community_aware", "feature", "slope", "intercept", "r_squared", "p_value", "n", "significance"),
}


def _network_files(out: Path, reports):
    _write_csv(out / "centrality.csv", HEADERS["centrality.csv"], (row for r in reports for row in _centrality_rows(r)))
    _write_csv(out / "correlations.csv", HEADERS["correlations.csv"], (row for r in reports for row in _correlation_rows(r)))
    _write_csv(out / "topology.csv", HEADERS["topology.csv"], (row for r in reports for row in _topology_rows(r)))
    _write_csv(out / "distributions.csv", HEADERS["distributions.csv"], (row for r in reports for row in _distribution_rows(r)))


def _summary_dict(s: DistributionSummary | None):
    return None if s is None else {k: (fmt(v) if isinstance(v, float) else v) for k, v in asdict(s).items()}


def _manifest(cfg: RunConfig, reports, corpus: CorpusResult | None):
    classical = [a for a in CLASSICAL_MEASURES if a in cfg.classical_measures]
    community = [b for b in COMMUNITY_MEASURES if b in cfg.community_measures]
    data = {
        "tool": "centcorr",
        "version": __version__,
        "definitions": DEFINITION_VERSIONS,
        "seed": cfg.seed,
        "partition_source": cfg.partition_source,
        "classical_measures": classical,
        "community_measures": community,
        "correlation_pairs": {
            "computed_per_network": len(classical) * len(community),
            "note": "every classical x community-aware combination",
        },
        "config": {
            "katz_s": cfg.classical.katz_s,
            "katz_fraction": cfg.classical.katz_fraction,
            "pagerank_d": cfg.classical.pagerank_d,
            "pagerank_tol": cfg.classical.pagerank_tol,
            "diffusion_varpi": cfg.classical.diffusion_varpi,
            "kshell_delta": cfg.community.kshell_delta,
            "comm_R": cfg.community.comm_R,
            "log_base": "e" if cfg.community.log_base == math.e else cfg.community.log_base,
            "mv_convention": cfg.community.mv_convention,
            "mv_absolute": cfg.community.mv_absolute,
            "community_weighting": cfg.community_weighting,
        },
        "networks": {
            r.network_id: {
                "n": r.n,
                "m": r.m,
                "n_communities": r.n_communities,
                "input_nodes": r.metadata["input_nodes"],
                "input_edges": r.metadata["input_edges"],
                "partition_source": r.metadata["partition_source"],
                "katz_s": None if r.metadata["katz_s"] is None else fmt(r.metadata["katz_s"]),
                "flags": r.metadata["flags"],
            }
            for r in reports
        },
    }
    if corpus is not None:
        data["skipped"] = corpus.skipped
        data["consistency_summary"] = _summary_dict(corpus.consistency_summary)
    return data


def emit_reports(reports, cfg: RunConfig, corpus: CorpusResult | None = None) -> Path:
    """Write the CSV report tree to ``cfg.output_dir``; output is byte-stable."""
    reports = sorted(reports, key=lambda r: r.network_id)
    if not reports:
        raise CentcorrError("nothing to write")
    out = Path(cfg.output_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        _network_files(out, reports)
        if corpus is not None:
            for rep in reports:
                _network_files(out / "networks" / rep.network_id, [rep])
            _write_csv(out / "pair_summary.csv", HEADERS["pair_summary.csv"], (
                (r["classical"], r["community_aware"], fmt(r["mean_tau"]), fmt(r["std_tau"]), r["n_networks"])
                for r in corpus.pair_summary
            ))
            ids = corpus.consistency_ids
            _write_csv(out / "consistency.csv", HEADERS["consistency.csv"], (
                (ids[a], ids[b], fmt(corpus.consistency[a, b])) for a in range(len(ids)) for b in range(len(ids))
            ))
            _write_csv(out / "regression.csv", HEADERS["regression.csv"], (
                (r.community_name, r.feature_name, fmt(r.slope), fmt(r.intercept), fmt(r.r_squared),
                 fmt(r.p_value), r.n, r.significance)
                for r in corpus.regressions
            ))
        with (out / "manifest.json").open("w", encoding="utf-8") as fh:
            json.dump(_manifest(cfg, reports, corpus), fh, indent=2, sort_keys=True)
            fh.write("\n")
    except OSError as exc:
        raise CentcorrError(f"cannot write reports to {out}: {exc}") from exc
    return out
