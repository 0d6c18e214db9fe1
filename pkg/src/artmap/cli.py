"""Command-line entry point: ``artmap <stage> [options]``.

Exit codes: 0 success, 1 usage or configuration error, 2 data error,
3 infeasible optimization problem.
"""

from __future__ import annotations

import argparse
import logging
import sys

from .config import PipelineConfig
from .errors import ArtmapError, ConfigError, DataError, InfeasibleError, MissingCheckpointError
from .pipeline import STAGES, run_pipeline, run_stage

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INFEASIBLE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_ingest(p):
    p.add_argument("--corpus", help="source corpus (.jsonl or .csv)")
    p.add_argument("--stopwords", help="stop-word file; defaults to the bundled English list")


def _add_select(p):
    p.add_argument("--k", type=int, help="maximum number of selected terms (default 10)")
    p.add_argument("--iterations", type=int, help="PSO iterations (default 200)")
    p.add_argument("--swarm-size", type=int, help="PSO swarm size (default 30)")


def _add_mine(p):
    p.add_argument("--min-support", type=float, help="default 0.05")
    p.add_argument("--min-confidence", type=float, help="default 0.5")
    p.add_argument("--max-rule-len", type=int, help="antecedents + consequents cap (default k)")


def _add_stoplist(p):
    p.add_argument("--stoplist", help="terms removed from the graph and the keyword list")


def _add_orient(p):
    p.add_argument("--orient", choices=("confidence", "none"),
                   help="keep only the higher-confidence direction of x=>y / y=>x (default confidence)")


def _add_map(p):
    p.add_argument("--tau", type=int, help="max intermediate stops per line (default 10)")
    p.add_argument("--max-lines", type=int, help="max metro lines (default 10)")
    p.add_argument("--weight", type=float, help="diversity weight w (default 0.5)")
    p.add_argument("--generations", type=int, help="EA generations (default 300)")
    p.add_argument("--population", type=int, help="EA population (default 100)")
    p.add_argument("--diversity-sign", choices=("paper", "prose"),
                   help="'paper' rewards 1 - squality, 'prose' rewards squality")
    p.add_argument("--path-limit", type=int, help="cap on enumerated feasible paths (default 10000)")


def _add_explore(p):
    p.add_argument("--explore-corpus", help="corpus with years to match keywords against")
    p.add_argument("--threshold", type=float, help="fraction of keywords a hit needs (default 0.30)")


_STAGE_OPTIONS = {
    "ingest": [_add_ingest],
    "weigh": [],
    "select": [_add_select],
    "mine": [_add_mine],
    "graph": [_add_stoplist, _add_orient],
    "map": [_add_map],
    "explore": [_add_explore, _add_stoplist, lambda p: p.add_argument("--stopwords")],
    "report": [],
    "pipeline": [_add_ingest, _add_select, _add_mine, _add_stoplist, _add_orient, _add_map, _add_explore],
}

_HELP = {
    "ingest": "tokenize a corpus into tokens.jsonl",
    "weigh": "build the TF*ITF weight matrix (weights.csv)",
    "select": "choose up to K terms by binary PSO (selection.json)",
    "mine": "mine association rules and simple rules",
    "graph": "build the term graph (graph.json, graph.dot)",
    "map": "evolve a metro map (map.json, map.dot)",
    "explore": "match map keywords against a second corpus (histogram.csv/.svg)",
    "report": "term frequencies of the source corpus (frequencies.csv)",
    "pipeline": "run every stage in order",
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="artmap", description="Association rule text mining to metro maps.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in (*STAGES, "pipeline"):
        p = sub.add_parser(name, help=_HELP[name], description=_HELP[name])
        p.add_argument("--config", help="TOML file of configuration keys; flags override it")
        p.add_argument("--workdir", help="checkpoint directory (default artmap-out)")
        p.add_argument("--seed", type=int, help="seed for the randomized stages (default 42)")
        p.add_argument("--print-config", action="store_true", help="print the effective configuration and exit")
        p.add_argument("-v", "--verbose", action="store_true")
        for add in _STAGE_OPTIONS[name]:
            add(p)
    return parser


_NOT_CONFIG = {"command", "config", "print_config", "verbose"}


def effective_config(args: argparse.Namespace) -> PipelineConfig:
    cfg = PipelineConfig.from_file(args.config) if args.config else PipelineConfig()
    flags = {k: v for k, v in vars(args).items() if k not in _NOT_CONFIG and v is not None}
    return PipelineConfig.from_mapping(flags, base=cfg).validate()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = effective_config(args)
        if args.print_config:
            sys.stdout.write(cfg.to_toml())
            return EXIT_OK
        if args.command == "pipeline":
            run_pipeline(cfg)
        else:
            run_stage(args.command, cfg)
    except ConfigError as exc:
        print(f"artmap: configuration error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MissingCheckpointError as exc:
        print(f"artmap: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (DataError, OSError) as exc:
        print(f"artmap: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except InfeasibleError as exc:
        print(f"artmap: infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except ArtmapError as exc:
        print(f"artmap: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
