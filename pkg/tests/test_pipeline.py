import csv
import filecmp
import json
import math
import shutil

import numpy as np
import pytest

from centcorr import Partition, datasets, load_edgelist
from centcorr.classical import CLASSICAL_MEASURES
from centcorr.community import COMMUNITY_MEASURES, CommunityConfig
from centcorr.exceptions import CentcorrError
from centcorr.pipeline import HEADERS, RunConfig, aggregate, analyze_network, batch, emit_reports, fmt
from centcorr.topology import FEATURES

from conftest import graph_from_text
from oracles import tau_b_pairs


def read_csv(path):
    with open(path, newline="") as fh:
        return list(csv.reader(fh))


@pytest.fixture(scope="module")
def karate():
    return load_edgelist(datasets.path("karate"))


@pytest.fixture(scope="module")
def karate_report(karate):
    return analyze_network(karate, RunConfig(), "karate")


@pytest.fixture
def corpus(tmp_path):
    d = tmp_path / "corpus"
    d.mkdir()
    for name in ("karate", "lesmis"):
        shutil.copy(datasets.path(name), d / f"{name}.txt")
    (d / "bridge.edges").write_text("a b\na c\nb c\nc d\nd e\nd f\ne f\nf g\ng a\n")
    (d / "notes.md").write_text("ignored\n")
    return d


class TestAnalyzeNetwork:
    def test_karate(self, karate_report):
        r = karate_report
        assert (r.n, r.m) == (34, 78)
        assert len(r.correlations) == 70
        assert all(math.isfinite(c.tau) for c in r.correlations)
        assert set(r.centralities) == set(CLASSICAL_MEASURES + COMMUNITY_MEASURES)

    def test_karate_taus_match_pair_oracle(self, karate_report):
        for rec in karate_report.correlations[::7]:
            x = karate_report.centralities[rec.classical_name].scores.tolist()
            y = karate_report.centralities[rec.community_name].scores.tolist()
            assert rec.tau == tau_b_pairs(x, y)

    def test_mean_tau_is_mean_of_ten(self, karate_report):
        for b in COMMUNITY_MEASURES:
            taus = [c.tau for c in karate_report.correlations if c.community_name == b]
            assert len(taus) == 10
            assert karate_report.mean_tau[b] == pytest.approx(np.mean(taus), abs=1e-15)

    def test_metadata(self, karate_report):
        md = karate_report.metadata
        assert md["seed"] == 0 and md["partition_source"] == "louvain"
        assert 0 < md["katz_s"] < 1 and md["flags"] == []

    def test_bridge_fixed_partition(self, bridge_graph, bridge_partition):
        r = analyze_network(bridge_graph, RunConfig(), "bridge", bridge_partition)
        assert r.partition == bridge_partition
        for rec in r.correlations:
            x = r.centralities[rec.classical_name].scores.tolist()
            y = r.centralities[rec.community_name].scores.tolist()
            if len(set(x)) > 1 and len(set(y)) > 1:
                assert rec.tau == tau_b_pairs(x, y)
            else:
                assert math.isnan(rec.tau)

    def test_single_community_cbc_matches_degree(self, bridge_graph):
        r = analyze_network(bridge_graph, RunConfig(), "bridge", Partition.whole(6))
        tau = {(c.classical_name, c.community_name): c.tau for c in r.correlations}
        assert tau[("degree", "cbc")] == 1.0
        assert "single-community" in r.metadata["flags"]

    def test_regular_graph_gives_undefined_tau(self, k4):
        r = analyze_network(k4, RunConfig(), "k4", Partition.whole(4))
        tau = {(c.classical_name, c.community_name): c.tau for c in r.correlations}
        assert math.isnan(tau[("degree", "cbc")])
        assert any(f.startswith("undefined-tau:") for f in r.metadata["flags"])

    def test_lcc_reduction(self):
        g = graph_from_text("a b\nb c\nc a\nc d\nx y")
        r = analyze_network(g, RunConfig(), "two-parts")
        assert r.n == 4 and r.input_nodes == 6
        assert "lcc-reduced" in r.metadata["flags"]

    def test_partition_projected_onto_lcc(self):
        g = graph_from_text("a b\nb c\nc a\nc d\nd e\ne c\nx y")
        p = Partition([0, 0, 0, 1, 1, 1, 2, 2])
        r = analyze_network(g, RunConfig(), "parts", p)
        assert r.partition.n_communities == 2

    def test_measure_subset(self, karate):
        cfg = RunConfig(classical_measures=("degree",), community_measures=("pc",))
        r = analyze_network(karate, cfg, "karate")
        assert len(r.correlations) == 1
        assert r.metadata["katz_s"] is None

    def test_errors_carry_network_id(self):
        g = graph_from_text("a b")
        with pytest.raises(CentcorrError, match="tiny"):
            analyze_network(g, RunConfig(), "tiny")


class TestBatch:
    def test_structure(self, corpus, tmp_path):
        cfg = RunConfig(corpus_dir=corpus, output_dir=tmp_path / "out")
        result = batch(cfg)
        assert [r.network_id for r in result.reports] == ["bridge", "karate", "lesmis"]
        assert result.consistency.shape == (3, 3)
        assert np.array_equal(result.consistency, result.consistency.T)
        assert np.all(np.diag(result.consistency) == 1)
        assert len(result.regressions) == 7 * 16
        assert len(result.pair_summary) == 70

    def test_pair_summary_is_mean_over_networks(self, corpus, tmp_path):
        result = batch(RunConfig(corpus_dir=corpus))
        row = next(r for r in result.pair_summary if (r["classical"], r["community_aware"]) == ("katz", "chb"))
        taus = [c.tau for rep in result.reports for c in rep.correlations
                if (c.classical_name, c.community_name) == ("katz", "chb")]
        assert row["mean_tau"] == pytest.approx(np.mean(taus), abs=1e-15)
        assert row["n_networks"] == 3

    def test_duplicate_network_consistency(self, corpus):
        shutil.copy(corpus / "karate.txt", corpus / "karate_copy.txt")
        result = batch(RunConfig(corpus_dir=corpus))
        ids = result.consistency_ids
        assert result.consistency[ids.index("karate"), ids.index("karate_copy")] == pytest.approx(1.0, abs=1e-15)

    def test_failures_are_skipped(self, corpus):
        (corpus / "broken.txt").write_text("a\n")
        result = batch(RunConfig(corpus_dir=corpus))
        assert [s["network"] for s in result.skipped] == ["broken"]
        assert len(result.reports) == 3

    def test_all_fail(self, tmp_path):
        d = tmp_path / "bad"
        d.mkdir()
        (d / "x.txt").write_text("a\n")
        with pytest.raises(CentcorrError, match="every network"):
            batch(RunConfig(corpus_dir=d))

    def test_empty_and_missing_corpus(self, tmp_path):
        with pytest.raises(CentcorrError, match="no edge lists"):
            batch(RunConfig(corpus_dir=tmp_path))
        with pytest.raises(CentcorrError, match="does not exist"):
            batch(RunConfig(corpus_dir=tmp_path / "nope"))

    def test_external_partitions(self, corpus, tmp_path):
        parts = tmp_path / "parts"
        parts.mkdir()
        for name in ("karate", "lesmis", "bridge"):
            g = load_edgelist(next(corpus.glob(f"{name}.*")))
            (parts / f"{name}.part").write_text("".join(f"{lab} {i % 2}\n" for i, lab in enumerate(g.labels)))
        result = batch(RunConfig(corpus_dir=corpus, partitions_dir=parts))
        assert all(r.n_communities == 2 for r in result.reports)
        assert all(r.metadata["partition_source"] == "external" for r in result.reports)

    def test_missing_external_partition(self, corpus, tmp_path):
        parts = tmp_path / "parts"
        parts.mkdir()
        with pytest.raises(CentcorrError, match="every network"):
            batch(RunConfig(corpus_dir=corpus, partitions_dir=parts))

    def test_workers_do_not_change_output(self, corpus, tmp_path):
        one = RunConfig(corpus_dir=corpus, output_dir=tmp_path / "one")
        two = RunConfig(corpus_dir=corpus, output_dir=tmp_path / "two", workers=2)
        emit_reports(batch(one).reports, one, batch(one))
        r2 = batch(two)
        emit_reports(r2.reports, two, r2)
        assert not filecmp.dircmp(tmp_path / "one", tmp_path / "two").diff_files


def tree_bytes(root):
    return {p.relative_to(root).as_posix(): p.read_bytes() for p in sorted(root.rglob("*")) if p.is_file()}


class TestEmission:
    def test_headers_and_counts(self, corpus, tmp_path):
        cfg = RunConfig(corpus_dir=corpus, output_dir=tmp_path / "out")
        result = batch(cfg)
        out = emit_reports(result.reports, cfg, result)
        for name, header in HEADERS.items():
            assert tuple(read_csv(out / name)[0]) == header
        corr = read_csv(out / "correlations.csv")[1:]
        assert len(corr) == 3 * 70
        assert len(read_csv(out / "regression.csv")) == 1 + 112
        assert len(read_csv(out / "consistency.csv")) == 1 + 9
        cent = read_csv(out / "centrality.csv")[1:]
        karate_degree = [r for r in cent if r[0] == "karate" and r[2] == "degree"]
        assert len(karate_degree) == 34
        assert {r[7] for r in read_csv(out / "regression.csv")[1:]} <= {"", "P", "P*"}
        assert (out / "networks" / "karate" / "correlations.csv").exists()
        manifest = json.loads((out / "manifest.json").read_text())
        assert manifest["networks"]["karate"]["n"] == 34
        assert manifest["definitions"]["mv"].startswith("signed")
        assert manifest["correlation_pairs"]["computed_per_network"] == 70
        assert manifest["skipped"] == []

    def test_topology_rows(self, corpus, tmp_path):
        cfg = RunConfig(corpus_dir=corpus, output_dir=tmp_path / "out")
        result = batch(cfg)
        rows = read_csv(emit_reports(result.reports, cfg, result) / "topology.csv")[1:]
        assert [r[1] for r in rows if r[0] == "karate"] == list(FEATURES)

    def test_mean_tau_matches_csv(self, corpus, tmp_path):
        cfg = RunConfig(corpus_dir=corpus, output_dir=tmp_path / "out")
        result = batch(cfg)
        out = emit_reports(result.reports, cfg, result)
        rows = read_csv(out / "correlations.csv")[1:]
        for rep in result.reports:
            for b in COMMUNITY_MEASURES:
                taus = [float(r[3]) for r in rows if r[0] == rep.network_id and r[2] == b]
                assert rep.mean_tau[b] == pytest.approx(np.mean(taus), abs=1e-5)

    def test_subset_one_row_per_network(self, corpus, tmp_path):
        cfg = RunConfig(corpus_dir=corpus, output_dir=tmp_path / "out",
                        classical_measures=("degree",), community_measures=("pc",))
        result = batch(cfg)
        rows = read_csv(emit_reports(result.reports, cfg, result) / "correlations.csv")[1:]
        assert [r[:3] for r in rows] == [[n, "degree", "pc"] for n in ("bridge", "karate", "lesmis")]

    def test_byte_identical_reruns(self, corpus, tmp_path):
        trees = []
        for run in ("a", "b"):
            cfg = RunConfig(corpus_dir=corpus, output_dir=tmp_path / run)
            result = batch(cfg)
            trees.append(tree_bytes(emit_reports(result.reports, cfg, result)))
        assert trees[0] == trees[1]

    def test_single_report(self, karate_report, tmp_path):
        out = emit_reports([karate_report], RunConfig(output_dir=tmp_path / "one"))
        assert len(read_csv(out / "correlations.csv")) == 71
        assert not (out / "regression.csv").exists()

    def test_nothing_to_write(self, tmp_path):
        with pytest.raises(CentcorrError):
            emit_reports([], RunConfig(output_dir=tmp_path))

    def test_unwritable(self, karate_report, tmp_path):
        blocker = tmp_path / "file"
        blocker.write_text("")
        with pytest.raises(CentcorrError, match="cannot write"):
            emit_reports([karate_report], RunConfig(output_dir=blocker / "sub"))


def test_fmt():
    assert [fmt(x) for x in (None, 3, np.int64(4), float("nan"), 0.0, -0.0, 1 / 3, 123456789.0)] == [
        "nan", "3", "4", "nan", "0", "0", "0.333333", "1.23457e+08"]


def test_aggregate_handles_missing_features(karate_report):
    result = aggregate([karate_report], RunConfig())
    assert len(result.regressions) == 112
    assert all(math.isnan(r.slope) for r in result.regressions)


def test_mv_convention_reaches_pipeline(karate):
    flipped = RunConfig(community=CommunityConfig(mv_convention="removed-minus-full"))
    a = analyze_network(karate, RunConfig(), "k").mean_tau["mv"]
    b = analyze_network(karate, flipped, "k").mean_tau["mv"]
    assert a == pytest.approx(-b, abs=1e-12)
