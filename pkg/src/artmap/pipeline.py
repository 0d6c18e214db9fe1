"""Pipeline stages that read and write checkpoint files in a working directory.

Each stage reads its upstream checkpoints and writes its own outputs, so
running the stages one by one produces the same files as ``run_pipeline``.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path

from . import corpus, explore, metromap, rules, selection, termgraph, weighting
from .config import PipelineConfig
from .errors import DataError, MissingCheckpointError

log = logging.getLogger(__name__)

# checkpoint file -> stage that produces it
CHECKPOINTS = {
    "tokens.jsonl": "ingest",
    "weights.csv": "weigh",
    "selection.json": "select",
    "rules.jsonl": "mine",
    "simple_rules.jsonl": "mine",
    "graph.json": "graph",
    "graph.dot": "graph",
    "map.json": "map",
    "map.dot": "map",
    "keywords.json": "explore",
    "histogram.csv": "explore",
    "histogram.svg": "explore",
    "frequencies.csv": "report",
}

STAGES = ("ingest", "weigh", "select", "mine", "graph", "map", "explore", "report")


def _need(workdir: Path, name: str) -> Path:
    p = workdir / name
    if not p.exists():
        raise MissingCheckpointError(p, CHECKPOINTS[name])
    return p


def _write(workdir: Path, name: str, text: str) -> Path:
    p = workdir / name
    p.write_text(text, encoding="utf-8")
    log.info("wrote %s", p)
    return p


def _stopwords(cfg: PipelineConfig) -> frozenset[str]:
    return corpus.load_stopwords(cfg.stopwords)


def _stoplist(cfg: PipelineConfig) -> frozenset[str]:
    if cfg.stoplist is None:
        return frozenset()
    return corpus.load_stopwords(cfg.stoplist)


def stage_ingest(cfg: PipelineConfig, workdir: Path) -> Path:
    if cfg.corpus is None:
        raise DataError("the ingest stage needs --corpus")
    docs = corpus.ingest_corpus(cfg.corpus)
    tokenized = corpus.tokenize_corpus(docs, _stopwords(cfg))
    dropped = len(docs) - len(tokenized)
    if dropped:
        log.info("excluded %d degenerate documents", dropped)
    if not tokenized:
        raise DataError(f"{cfg.corpus}: no document has terms left after tokenization")
    p = workdir / "tokens.jsonl"
    corpus.write_tokens(tokenized, p)
    return p


def stage_weigh(cfg: PipelineConfig, workdir: Path) -> Path:
    docs = corpus.read_tokens(_need(workdir, "tokens.jsonl"))
    vocab = corpus.build_vocabulary(docs)
    w = weighting.build_weight_matrix(docs, vocab)
    p = workdir / "weights.csv"
    weighting.write_weight_matrix(w, p)
    return p


def stage_select(cfg: PipelineConfig, workdir: Path) -> Path:
    w = weighting.read_weight_matrix(_need(workdir, "weights.csv"))
    sel = selection.select_terms_pso(w, cfg.pso_config())
    return _write(workdir, "selection.json", selection.selection_to_json(sel, cfg.k, cfg.seed) + "\n")


def stage_mine(cfg: PipelineConfig, workdir: Path) -> Path:
    w = weighting.read_weight_matrix(_need(workdir, "weights.csv"))
    sel = selection.read_selection(_need(workdir, "selection.json"), w)
    table = rules.binarize(w, sel)
    mined = rules.mine_rules(table, cfg.min_support, cfg.min_confidence, cfg.rule_len)
    rules.write_rules(mined, workdir / "rules.jsonl")
    simple = rules.simplify_all(mined, table)
    p = workdir / "simple_rules.jsonl"
    rules.write_rules(simple, p)
    return p


def stage_graph(cfg: PipelineConfig, workdir: Path) -> Path:
    simple = rules.read_simple_rules(_need(workdir, "simple_rules.jsonl"))
    stop = _stoplist(cfg)
    kept = [r for r in simple if r.antecedent not in stop and r.consequent not in stop]
    if cfg.orient == "confidence":
        kept = rules.orient(kept)
    g = termgraph.build_graph(kept)
    _write(workdir, "graph.dot", termgraph.to_dot(g))
    return _write(workdir, "graph.json", termgraph.graph_to_json(g) + "\n")


def stage_map(cfg: PipelineConfig, workdir: Path) -> Path:
    g = termgraph.read_graph(_need(workdir, "graph.json"))
    ea = cfg.ea_config()
    m = metromap.construct_map(g, ea)
    _write(workdir, "map.dot", metromap.map_to_dot(m))
    return _write(workdir, "map.json", metromap.map_to_json(m, cfg.seed, ea) + "\n")


def stage_explore(cfg: PipelineConfig, workdir: Path) -> Path:
    if cfg.explore_corpus is None:
        raise DataError("the explore stage needs --explore-corpus")
    g = termgraph.read_graph(_need(workdir, "graph.json"))
    m = metromap.map_from_dict(json.loads(_need(workdir, "map.json").read_text("utf-8")), g)
    keywords = metromap.extract_keywords(m, _stoplist(cfg))
    if not keywords:
        raise DataError("every metro map stop is on the stoplist; no keywords to match")
    docs = corpus.ingest_corpus(cfg.explore_corpus)
    report = explore.build_histogram(docs, keywords, cfg.threshold, _stopwords(cfg))
    _write(workdir, "keywords.json",
           json.dumps({"keywords": keywords, "threshold": cfg.threshold}, indent=2) + "\n")
    _write(workdir, "histogram.svg", explore.histogram_svg(report))
    return _write(workdir, "histogram.csv", explore.histogram_csv(report))


def stage_report(cfg: PipelineConfig, workdir: Path) -> Path:
    docs = corpus.read_tokens(_need(workdir, "tokens.jsonl"))
    return _write(workdir, "frequencies.csv", explore.frequency_csv(explore.term_frequencies(docs)))


STAGE_FUNCS = {
    "ingest": stage_ingest,
    "weigh": stage_weigh,
    "select": stage_select,
    "mine": stage_mine,
    "graph": stage_graph,
    "map": stage_map,
    "explore": stage_explore,
    "report": stage_report,
}


def run_stage(name: str, cfg: PipelineConfig, workdir: str | Path | None = None) -> Path:
    workdir = Path(workdir or cfg.workdir)
    workdir.mkdir(parents=True, exist_ok=True)
    return STAGE_FUNCS[name](cfg, workdir)


def run_pipeline(cfg: PipelineConfig, workdir: str | Path | None = None) -> Path:
    workdir = Path(workdir or cfg.workdir)
    for name in STAGES:
        if name == "explore" and cfg.explore_corpus is None:
            log.info("no exploration corpus given; skipping explore")
            continue
        run_stage(name, cfg, workdir)
    return workdir
