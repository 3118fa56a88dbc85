"""Command-line entry point: ``centralnet {simulate,analyze,compare}``."""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from .centrality import ThresholdSpec
from .errors import ConfigError, InvalidInputError
from .pipeline import (
    PipelineConfig,
    analyze,
    ingest,
    run_comparison,
    write_network_dir,
    write_series_csv,
)
from .simgen import SimSpec, generate

log = logging.getLogger("centralnet")

EXIT_INPUT = 2
EXIT_CONFIG = 3

RANK_CHOICES = [r.value for r in ThresholdSpec]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CONFIG, f"{self.prog}: error: {message}\n")


def _pipeline_args(p: argparse.ArgumentParser, need_rank: bool):
    p.add_argument("--in", dest="inp", required=True, help="matrix directory or price CSV")
    p.add_argument("--mode", choices=["matrix-dir", "price-corr", "logret-cloud"],
                   default="matrix-dir")
    p.add_argument("--threshold-rank", choices=RANK_CHOICES, required=need_rank,
                   default=None if need_rank else "full")
    p.add_argument("--window", type=int)
    p.add_argument("--stride", type=int, default=1)
    p.add_argument("--max-dim", type=int, choices=[0, 1], default=0)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--cap", type=float, help="fixed filtration max-scale")
    p.add_argument("--reference-index", type=int, default=0)
    p.add_argument("--fixed-central", action="store_true",
                   help="fix the central node from the reference step")
    p.add_argument("--edge-cost", choices=["distance", "strength"], default="distance")
    p.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="centralnet", description=__doc__)
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("simulate", help="write a simulated dynamic network")
    s.add_argument("--experiment", choices=["hub", "covariance", "ar1"], required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--n-networks", type=int)
    s.add_argument("--n-nodes", type=int)
    s.add_argument("--sample-len", type=int)
    s.add_argument("--alpha", type=float, default=1.0)
    s.add_argument("--phi", type=float, default=0.7)
    s.add_argument("--out", required=True)

    a = sub.add_parser("analyze", help="Wasserstein series of one pipeline")
    _pipeline_args(a, need_rank=False)
    a.add_argument("--out", required=True, help="series CSV")
    a.add_argument("--diagrams-out", help="directory for per-step diagram JSON")

    c = sub.add_parser("compare", help="full network vs central subnetwork")
    _pipeline_args(c, need_rank=True)
    c.add_argument("--out", required=True, help="comparison JSON")
    c.add_argument("--series-out", help="FULL.csv,CENTRAL.csv")
    c.add_argument("--repeats", type=int, default=3)
    return ap


def _config(args) -> PipelineConfig:
    return PipelineConfig(
        threshold_rank=args.threshold_rank, reference_index=args.reference_index,
        max_dim=args.max_dim, p=args.p, cap=args.cap,
        recompute_central_each_step=not args.fixed_central, window=args.window,
        stride=args.stride, mode=args.mode, edge_cost=args.edge_cost, workers=args.workers,
    )


def _simulate(args):
    spec = SimSpec(args.experiment, args.n_networks, args.n_nodes, args.sample_len,
                   args.seed, args.alpha, args.phi)
    net = generate(spec)
    write_network_dir(net, args.out)
    log.info("wrote %d matrices to %s", len(net), args.out)


def _analyze(args):
    cfg = _config(args)
    net = ingest(args.inp, cfg)
    series, dgms, pf = analyze(net, cfg)
    write_series_csv(series, net.times, args.out)
    if args.diagrams_out:
        out = Path(args.diagrams_out)
        out.mkdir(parents=True, exist_ok=True)
        for t, d in zip(net.times, dgms):
            (out / f"t_{t:04d}.json").write_text(d.to_json())
    log.info("%d steps, mean pruned fraction %.4f", len(series), sum(pf) / len(pf))


def _compare(args):
    cfg = _config(args)
    net = ingest(args.inp, cfg)
    cmp = run_comparison(net, cfg.threshold_rank, cfg, repeats=args.repeats)
    Path(args.out).write_text(cmp.to_json())
    if args.series_out:
        parts = args.series_out.split(",")
        if len(parts) != 2:
            raise ConfigError("--series-out takes FULL.csv,CENTRAL.csv")
        write_series_csv(cmp.x, net.times, parts[0])
        write_series_csv(cmp.x_tilde, net.times, parts[1])
    print(cmp.to_csv_row(), end="")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    handler = {"simulate": _simulate, "analyze": _analyze, "compare": _compare}[args.command]
    try:
        handler(args)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except (InvalidInputError, OSError) as err:
        print(f"input error: {err}", file=sys.stderr)
        return EXIT_INPUT
    return 0


if __name__ == "__main__":
    sys.exit(main())
