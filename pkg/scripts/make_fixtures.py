"""Regenerate the bundled synthetic fixture corpora.

The source corpus has 50 abstracts mixing a few topical vocabularies with
filler and stop words; the exploration corpus spreads 400 abstracts over
1955-2019 with topical terms growing more common in later years.

    python scripts/make_fixtures.py [outdir]
"""

import json
import sys
from pathlib import Path

import numpy as np

TOPICS = {
    "respiratory": ["pneumonia", "ventilation", "pulmonary", "lung", "respiratory", "oxygen", "h7n9"],
    "virology": ["rna", "virus", "viruses", "transfection", "protein", "cells", "downregulation", "viral"],
    "epidemiology": ["quarantine", "pathogens", "diseases", "outbreak", "transmission", "diagnostic"],
    "cardiology": ["cardiac", "heart", "myocardial", "mitochondrial", "arrhythmia"],
}
FILLER = [
    "study", "results", "patients", "analysis", "method", "data", "clinical", "observed",
    "increase", "model", "showed", "group", "response", "samples", "levels", "treatment",
]
GLUE = ["the", "of", "and", "in", "a", "was", "with", "is", "to", "for", "by"]


def sentence(rng, topics, n_words, topical_share):
    pool = [w for t in topics for w in TOPICS[t]]
    words = []
    for _ in range(n_words):
        u = rng.random()
        if u < topical_share:
            words.append(pool[rng.integers(len(pool))])
        elif u < topical_share + 0.25:
            words.append(GLUE[rng.integers(len(GLUE))])
        else:
            words.append(FILLER[rng.integers(len(FILLER))])
    words[0] = words[0].capitalize()
    return " ".join(words) + rng.choice([".", ".", ";", "!"])


def abstract(rng, topical_share, n_sentences=3):
    names = sorted(TOPICS)
    k = 1 + int(rng.random() < 0.4)
    topics = [names[i] for i in rng.choice(len(names), k, replace=False)]
    return " ".join(sentence(rng, topics, int(rng.integers(8, 16)), topical_share) for _ in range(n_sentences))


def main(outdir):
    outdir = Path(outdir)
    rng = np.random.default_rng(20200323)
    with open(outdir / "fixture_corpus.jsonl", "w", encoding="utf-8") as fh:
        for i in range(50):
            fh.write(json.dumps({"id": f"src-{i:03d}", "year": 2020, "abstract": abstract(rng, 0.55)}) + "\n")
    with open(outdir / "fixture_explore.jsonl", "w", encoding="utf-8") as fh:
        for i in range(400):
            year = int(rng.integers(1955, 2020))
            share = 0.1 + 0.6 * (year - 1955) / 64
            rec = {"id": f"exp-{i:04d}", "abstract": abstract(rng, share, n_sentences=2)}
            if i % 50 != 7:
                rec["year"] = year
            fh.write(json.dumps(rec) + "\n")


if __name__ == "__main__":
    main(sys.argv[1] if len(sys.argv) > 1 else Path(__file__).resolve().parent.parent / "src" / "artmap" / "data")
