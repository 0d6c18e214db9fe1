"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line with its measured value and runtime; the
lines are printed in the pytest terminal summary. Run on its own with

    pytest tests/test_acceptance.py -v
"""

import json
import math
import time

import numpy as np
import pytest

from artmap.cli import main
from artmap.corpus import Vocabulary, build_vocabulary, ingest_corpus, load_stopwords
from artmap.explore import build_histogram, match_document
from artmap.metromap import EaConfig, construct_map, fitness, make_line, make_map, structure_quality
from artmap.rules import AssociationRule, TransactionTable, lift, mine_rules, simplify
from artmap.selection import PsoConfig, select_terms_exact, select_terms_pso
from artmap.termgraph import build_graph, enumerate_paths
from artmap.weighting import WeightMatrix, build_weight_matrix, term_frequency

from conftest import DATA, random_corpus, random_dag, random_digraph_rules, srule, tdoc
from test_metromap import brute_force_best, line
from test_rules import exhaustive_rules
from test_weighting import naive_weights

RESULTS: list[str] = []


def record(number, title, ok, detail, elapsed=None, budget=None):
    timing = ""
    if elapsed is not None:
        timing = f" [{elapsed:.2f}s" + (f" / budget {budget}s]" if budget else "]")
    RESULTS.append(f"{'PASS' if ok else 'FAIL'}  C{number:02d} {title}: {detail}{timing}")


class Timer:
    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start


def test_c01_tf_partition():
    docs = random_corpus(np.random.default_rng(1), 100, 40, max_len=30)
    vocab = build_vocabulary(docs)
    with Timer() as t:
        worst = max(abs(sum(term_frequency(d, term) for term in vocab.terms) - 1.0) for d in docs)
    ok = worst <= 1e-9 and t.elapsed < 1.0
    record(1, "TF partition", ok, f"max |sum_j TF - 1| = {worst:.2e} over 100 docs", t.elapsed, 1)
    assert ok


def test_c02_weight_matrix_oracle():
    rng = np.random.default_rng(2)
    mismatches = 0
    with Timer() as t:
        for _ in range(20):
            docs = random_corpus(rng, int(rng.integers(1, 6)), int(rng.integers(1, 11)))
            w = build_weight_matrix(docs, build_vocabulary(docs))
            terms, rows = naive_weights(docs)
            mismatches += not (list(w.terms) == terms and w.weights.tolist() == rows)
    ok = mismatches == 0 and t.elapsed < 1.0
    record(2, "weight matrix vs naive loop", ok, f"{20 - mismatches}/20 exact", t.elapsed, 1)
    assert ok


def _matrix(rows):
    m = rows.shape[1]
    vocab = Vocabulary(tuple(f"t{j:02d}" for j in range(m)), (1,) * m, rows.shape[0])
    return WeightMatrix(rows, tuple(f"d{i}" for i in range(rows.shape[0])), vocab)


def test_c03_pso_optimality():
    rng = np.random.default_rng(3)
    optimal = feasible = 0
    with Timer() as t:
        for inst in range(100):
            w = _matrix(rng.random((20, 15)) * (rng.random((20, 15)) < 0.4))
            exact = select_terms_exact(w, 5)
            got = select_terms_pso(w, PsoConfig(k_max=5, seed=inst))
            feasible += int(got.y.sum()) <= 5
            optimal += math.isclose(got.aws, exact.aws, rel_tol=1e-9, abs_tol=1e-12)
    ok = optimal >= 95 and feasible == 100 and t.elapsed < 30
    record(3, "PSO optimality", ok, f"optimum in {optimal}/100, feasible {feasible}/100", t.elapsed, 30)
    assert ok


def test_c04_simplification_count():
    rng = np.random.default_rng(4)
    items = tuple("abcdefghij")
    table = TransactionTable(items, np.vstack([np.ones((1, 10)), rng.random((19, 10)) < 0.5]))
    correct = 0
    with Timer() as t:
        for _ in range(1000):
            p, q = (int(v) for v in rng.integers(1, 6, size=2))
            perm = rng.permutation(10)
            rule = AssociationRule(
                tuple(items[j] for j in perm[:p]), tuple(items[j] for j in perm[p:p + q]), 0.1, 0.1
            )
            correct += len(simplify(rule, table)) == p * q
    ok = correct == 1000 and t.elapsed < 1.0
    record(4, "simplification count p*q", ok, f"{correct}/1000", t.elapsed, 1)
    assert ok


def test_c05_mining_completeness():
    rng = np.random.default_rng(5)
    checks = equal = 0
    with Timer() as t:
        for _ in range(50):
            n_items, n_rows = int(rng.integers(1, 7)), int(rng.integers(1, 11))
            table = TransactionTable(tuple("abcdef"[:n_items]), rng.random((n_rows, n_items)) < 0.6)
            for supp in (0.1, 0.3):
                for conf in (0.5, 0.8):
                    max_len = max(n_items, 2)
                    got = {(r.antecedents, r.consequents, r.support, r.confidence)
                           for r in mine_rules(table, supp, conf, max_len)}
                    checks += 1
                    equal += got == exhaustive_rules(table, supp, conf, max_len)
    ok = equal == checks == 200 and t.elapsed < 10
    record(5, "mining vs exhaustive enumeration", ok, f"{equal}/{checks} equal", t.elapsed, 10)
    assert ok


def test_c06_lift_identities():
    rng = np.random.default_rng(6)
    items = tuple(f"i{k}" for k in range(8))
    table = TransactionTable(items, np.vstack([np.ones((1, 8)), rng.random((29, 8)) < 0.5]))
    symmetric = 0
    for _ in range(1000):
        x, y = rng.choice(items, 2, replace=False)
        symmetric += lift(table, x, y) == lift(table, y, x)
    # columns independent by construction: every (x, y) combination equally often
    indep = TransactionTable(("x", "y"), [[1, 1], [1, 0], [0, 1], [0, 0]] * 5)
    # x in 2 of 3 rows, y in 1 of 2 rows, crossed
    indep2 = TransactionTable(("x", "y"), [[a, b] for a in (1, 1, 0) for b in (1, 0)])
    devs = [abs(lift(indep, "x", "y") - 1.0), abs(lift(indep2, "x", "y") - 1.0)]
    ok = symmetric == 1000 and max(devs) <= 1e-9
    record(6, "lift symmetry and independence", ok,
           f"symmetric {symmetric}/1000, max |lift-1| on independent columns {max(devs):.1e}")
    assert ok


def test_c07_graph_partition():
    rng = np.random.default_rng(7)
    good = 0
    with Timer() as t:
        for _ in range(100):
            g = build_graph(random_digraph_rules(rng, int(rng.integers(2, 15)), int(rng.integers(1, 40))))
            disjoint = not (g.ante & g.cons or g.ante & g.mixed or g.cons & g.mixed)
            non_isolated = {x for e in g.edges for x in e}
            good += disjoint and (g.ante | g.cons | g.mixed) == non_isolated
    ok = good == 100 and t.elapsed < 1.0
    record(7, "Ante/Cons/Mixed partition", ok, f"{good}/100", t.elapsed, 1)
    assert ok


def test_c08_squality_fixtures():
    r1, r2, r3 = srule("a", "b"), srule("b", "c"), srule("c", "d")
    with Timer() as t:
        values = (
            structure_quality([line(r1, r2), line(r2, r3)]),
            structure_quality([line(r1), line(r1)]),
            structure_quality([line(r1), line(r3)]),
        )
    ok = values == (0.75, 0.0, 1.0) and t.elapsed < 1.0
    record(8, "sQuality fixtures", ok, f"overlap/identical/disjoint = {values}", t.elapsed, 1)
    assert ok


def test_c09_fitness_recomposition():
    rng = np.random.default_rng(9)
    tau, l_max, w = 10, 10, 0.5
    good = total = 0
    while total < 1000:
        g = build_graph(random_dag(rng, int(rng.integers(4, 14)), 0.4) or [srule("a", "b")])
        paths = enumerate_paths(g, tau)
        for _ in range(50):
            k = int(rng.integers(1, min(l_max, len(paths)) + 1))
            m = make_map([make_line(g, paths[i]) for i in rng.choice(len(paths), k, replace=False)], w)
            recomputed = (m.coverage + w * (1 - m.squality)) * m.n_lines
            good += math.isclose(m.fitness, recomputed, rel_tol=1e-9) and m.fitness == fitness(m, w)
            total += 1
    ok = good == total
    record(9, "fitness recomposition", ok, f"{good}/{total} within 1e-9 (tau=10, L=10, w=0.5)")
    assert ok


def test_c10_ea_argmax_small():
    rng = np.random.default_rng(10)
    graphs = []
    while len(graphs) < 20:
        g = build_graph(random_dag(rng, int(rng.integers(5, 8)), 0.45) or [srule("a", "b")])
        if 2 <= len(enumerate_paths(g, 10)) <= 20:
            graphs.append(g)
    matched, slowest = 0, 0.0
    for seed, g in enumerate(graphs):
        with Timer() as t:
            m = construct_map(g, EaConfig(l_max=2, seed=seed))
        slowest = max(slowest, t.elapsed)
        matched += math.isclose(m.fitness, brute_force_best(g, 10, 2, 0.5), rel_tol=1e-12)
    ok = matched >= 18 and slowest < 5
    record(10, "EA argmax at small scale", ok, f"optimal on {matched}/20 graphs", slowest, 5)
    assert ok


def test_c11_feasibility_under_defaults():
    g = build_graph(random_dag(np.random.default_rng(11), 30, 0.12))
    feasible = 0
    with Timer() as t:
        for seed in range(100):
            m = construct_map(g, EaConfig(seed=seed))
            feasible += 1 <= m.n_lines <= 10 and all(ln.intermediate_stops <= 10 for ln in m.lines)
    ok = feasible == 100 and t.elapsed < 60
    record(11, "feasibility under defaults", ok, f"{feasible}/100 maps satisfy tau=10, L=10", t.elapsed, 60)
    assert ok


def test_c12_thirty_percent_boundary():
    kw = [f"k{i:02d}" for i in range(21)]
    with Timer() as t:
        seven = match_document(tdoc("d7", *kw[:7], "filler"), kw, 0.30)
        six = match_document(tdoc("d6", *kw[:6], "filler"), kw, 0.30)
    ok = seven and not six and t.elapsed < 1.0
    record(12, "30% matching boundary", ok, f"7/21 hit={seven}, 6/21 hit={six}", t.elapsed, 1)
    assert ok


@pytest.fixture(scope="module")
def pipeline_runs(tmp_path_factory):
    src = str(DATA / "fixture_corpus.jsonl")
    exp = str(DATA / "fixture_explore.jsonl")
    runs, codes = [], []
    with Timer() as t:
        for k in range(2):
            wd = tmp_path_factory.mktemp(f"run{k}")
            codes.append(main(["pipeline", "--corpus", src, "--explore-corpus", exp, "--seed", "42",
                               "--workdir", str(wd)]))
            runs.append(wd)
    return runs, codes, t.elapsed


def test_c13_end_to_end_determinism(pipeline_runs):
    (a, b), codes, elapsed = pipeline_runs
    files = sorted(p.name for p in a.iterdir())
    same = [f for f in files if (a / f).read_bytes() == (b / f).read_bytes()]
    ok = codes == [0, 0] and len(files) >= 10 and same == files and elapsed < 120
    record(13, "end-to-end determinism", ok,
           f"{len(same)}/{len(files)} outputs byte-identical across two seed-42 runs", elapsed, 120)
    assert ok


def test_c14_threshold_monotonicity(pipeline_runs):
    (a, _), _, _ = pipeline_runs
    keywords = json.loads((a / "keywords.json").read_text())["keywords"]
    docs = ingest_corpus(DATA / "fixture_explore.jsonl")
    stop = load_stopwords()
    thresholds = [round(0.1 * i, 1) for i in range(1, 10)]
    reports = [build_histogram(docs, keywords, th, stop) for th in thresholds]
    years = set().union(*(r.total_docs for r in reports))
    monotone = all(
        reports[i + 1].yearly_hits.get(y, 0) <= reports[i].yearly_hits.get(y, 0)
        for i in range(len(reports) - 1)
        for y in years
    )
    totals = [r.total_hits for r in reports]
    ok = monotone and totals[0] > 0
    record(14, "threshold monotonicity", ok, f"total hits over 0.1..0.9 = {totals}")
    assert ok

