"""Command-line entry point: ``centcorr analyze`` and ``centcorr batch``."""

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from ._backend import BACKEND
from .classical import CLASSICAL_MEASURES, ClassicalConfig
from .community import COMMUNITY_MEASURES
from .exceptions import CentcorrError
from .graph import load_edgelist
from .partition import load_partition
from .pipeline import DEFINITION_VERSIONS, RunConfig, analyze_network, batch, emit_reports


class _VersionAction(argparse.Action):
    def __init__(self, option_strings, dest=argparse.SUPPRESS, default=argparse.SUPPRESS, help=None):
        super().__init__(option_strings, dest=dest, default=default, nargs=0, help=help)

    def __call__(self, parser, namespace, values, option_string=None):
        print(f"centcorr {__version__} (kernels: {BACKEND})")
        for key, value in DEFINITION_VERSIONS.items():
            print(f"  {key}: {value}")
        parser.exit()


def _measures(text):
    names = [t.strip() for t in text.split(",") if t.strip()]
    known = set(CLASSICAL_MEASURES) | set(COMMUNITY_MEASURES)
    bad = [n for n in names if n not in known]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown measure(s): {', '.join(bad)}")
    classical = tuple(n for n in CLASSICAL_MEASURES if n in names)
    community = tuple(n for n in COMMUNITY_MEASURES if n in names)
    if not classical or not community:
        raise argparse.ArgumentTypeError("need at least one classical and one community-aware measure")
    return classical, community


def build_parser():
    parser = argparse.ArgumentParser(
        prog="centcorr",
        description="Correlate classical and community-aware centrality measures over edge-list networks.",
    )
    parser.add_argument("--version", action=_VersionAction, help="print version and definition strings")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="analyse a single edge list")
    a.add_argument("edgelist", type=Path)
    a.add_argument("--partition", type=Path, help="external partition file (node community per line)")
    a.add_argument("--seed", type=int, default=0, help="Louvain seed (default 0)")
    a.add_argument("--katz-s", type=float, help="Katz attenuation (default 0.9/lambda_max)")
    a.add_argument("--out", type=Path, default=Path("centcorr-out"))
    a.add_argument("--measures", type=_measures)

    b = sub.add_parser("batch", help="analyse every edge list in a directory")
    b.add_argument("corpus_dir", type=Path)
    b.add_argument("--partitions", type=Path, help="directory of <network>.* partition files")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--katz-s", type=float)
    b.add_argument("--out", type=Path, default=Path("centcorr-out"))
    b.add_argument("--measures", type=_measures, help="comma-separated measure names")
    b.add_argument("--workers", type=int, default=1)
    return parser


def _config(args, **extra):
    cfg = RunConfig(seed=args.seed, output_dir=args.out, classical=ClassicalConfig(katz_s=args.katz_s), **extra)
    if args.measures:
        cfg.classical_measures, cfg.community_measures = args.measures
    return cfg


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.command == "analyze":
            cfg = _config(args)
            g = load_edgelist(args.edgelist)
            part = load_partition(args.partition, g) if args.partition else None
            report = analyze_network(g, cfg, args.edgelist.stem, part)
            out = emit_reports([report], cfg)
            print(json.dumps({"network": report.network_id, "n": report.n, "m": report.m,
                              "communities": report.n_communities, "out": str(out)}))
        else:
            cfg = _config(args, corpus_dir=args.corpus_dir, partitions_dir=args.partitions, workers=args.workers)
            result = batch(cfg)
            out = emit_reports(result.reports, cfg, result)
            print(json.dumps({"networks": len(result.reports), "skipped": len(result.skipped), "out": str(out)}))
    except (CentcorrError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
