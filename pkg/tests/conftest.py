import json
from pathlib import Path

import numpy as np
import pytest

from artmap.corpus import TokenizedDocument
from artmap.rules import SimpleRule
from artmap.termgraph import build_graph

DATA = Path(__file__).resolve().parent.parent / "src" / "artmap" / "data"


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def write_jsonl(tmp_path):
    def _write(records, name="corpus.jsonl"):
        p = tmp_path / name
        p.write_text("".join(json.dumps(r) + "\n" for r in records), encoding="utf-8")
        return p

    return _write


def tdoc(doc_id, *terms, year=None):
    return TokenizedDocument(doc_id, tuple(terms), year)


def srule(x, y, lift=1.0):
    return SimpleRule(x, y, lift, 0.5, 0.5, 0.25 * lift)


def random_corpus(rng, n_docs, n_terms, max_len=8):
    """Random tokenized corpus over a vocabulary of ``n_terms`` made-up words."""
    vocab = [f"w{j}" for j in range(n_terms)]
    docs = []
    for i in range(n_docs):
        length = int(rng.integers(1, max_len + 1))
        docs.append(tdoc(f"d{i}", *(vocab[k] for k in rng.integers(n_terms, size=length))))
    return docs


def random_dag(rng, n_nodes, p_edge, lift_range=(0.5, 3.0)):
    """Rules along a random DAG whose topological order is the node index."""
    names = [f"n{i:02d}" for i in range(n_nodes)]
    rules = []
    for i in range(n_nodes):
        for j in range(i + 1, n_nodes):
            if rng.random() < p_edge:
                rules.append(srule(names[i], names[j], float(rng.uniform(*lift_range))))
    return rules


def random_digraph_rules(rng, n_nodes, n_edges):
    """Random simple rules; may contain cycles and antiparallel pairs."""
    names = [f"v{i}" for i in range(n_nodes)]
    seen = {}
    for _ in range(n_edges):
        a, b = rng.choice(n_nodes, 2, replace=False)
        seen[(names[a], names[b])] = srule(names[a], names[b], float(rng.uniform(0.5, 3)))
    return list(seen.values())


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def chain_graph():
    return build_graph([srule("a", "b", 2.0), srule("b", "c", 1.0)])


def pytest_terminal_summary(terminalreporter):
    import sys

    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(module.RESULTS, key=lambda s: s[6:9]):
        terminalreporter.write_line(line)
