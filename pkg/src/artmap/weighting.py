"""TF/ITF weighting and the weighted document-by-term transaction database."""

from __future__ import annotations

import csv
import math
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .corpus import TokenizedDocument, Vocabulary
from .errors import ConsistencyError, CorpusParseError, DataError, UnknownTermError


@dataclass(frozen=True)
class WeightMatrix:
    """N x M matrix of TF*ITF weights; rows are documents, columns vocabulary terms."""

    weights: np.ndarray
    doc_ids: tuple[str, ...]
    vocabulary: Vocabulary

    @property
    def shape(self):
        return self.weights.shape

    @property
    def terms(self):
        return self.vocabulary.terms

    def column_sums(self) -> np.ndarray:
        return self.weights.sum(axis=0)


def term_frequency(doc: TokenizedDocument, term: str) -> float:
    if doc.term_count == 0:
        raise DataError(f"document {doc.id!r} has no terms; term frequency undefined")
    return doc.terms.count(term) / doc.term_count


def inverse_term_frequency(vocab: Vocabulary, term: str) -> float:
    """|ln(df / N)|; zero exactly when the term occurs in every document."""
    if term not in vocab:
        raise UnknownTermError(f"term {term!r} is not in the vocabulary")
    return abs(math.log(vocab.df(term) / vocab.corpus_size))


def itf_vector(vocab: Vocabulary) -> np.ndarray:
    return np.array([inverse_term_frequency(vocab, t) for t in vocab.terms], dtype=float)


def build_weight_matrix(docs: list[TokenizedDocument], vocab: Vocabulary) -> WeightMatrix:
    if len(docs) != vocab.corpus_size:
        raise ConsistencyError(
            f"vocabulary was built from {vocab.corpus_size} documents, got {len(docs)}"
        )
    itf = itf_vector(vocab)
    weights = np.zeros((len(docs), len(vocab)), dtype=float)
    for i, doc in enumerate(docs):
        if doc.term_count == 0:
            raise DataError(f"document {doc.id!r} has no terms")
        for term, n in Counter(doc.terms).items():
            j = vocab.index.get(term)
            if j is None:
                raise ConsistencyError(f"term {term!r} of document {doc.id!r} missing from vocabulary")
            weights[i, j] = (n / doc.term_count) * itf[j]
    return WeightMatrix(weights, tuple(d.id for d in docs), vocab)


def write_weight_matrix(w: WeightMatrix, path: str | Path) -> None:
    """CSV checkpoint: ``doc_id`` column then one column per term, floats in repr form."""
    n = w.shape[0]
    with open(path, "w", encoding="utf-8", newline="") as fh:
        out = csv.writer(fh, lineterminator="\n")
        out.writerow(["doc_id", *w.terms])
        for i in range(n):
            out.writerow([w.doc_ids[i], *(repr(float(x)) for x in w.weights[i])])


def read_weight_matrix(path: str | Path) -> WeightMatrix:
    with open(path, encoding="utf-8", newline="") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0][:1] != ["doc_id"]:
        raise CorpusParseError(path, 1, "expected header starting with 'doc_id'")
    terms = tuple(rows[0][1:])
    ids, data = [], []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != len(terms) + 1:
            raise CorpusParseError(path, lineno, f"expected {len(terms) + 1} cells, got {len(row)}")
        ids.append(row[0])
        try:
            data.append([float(x) for x in row[1:]])
        except ValueError as exc:
            raise CorpusParseError(path, lineno, str(exc)) from None
    weights = np.array(data, dtype=float).reshape(len(ids), len(terms))
    # A cell is positive iff the term occurs in the document and ITF > 0; an
    # all-zero column is a term present in every document (df = N).
    present = (weights > 0).sum(axis=0)
    df = tuple(int(c) if c else len(ids) for c in present)
    return WeightMatrix(weights, tuple(ids), Vocabulary(terms, df, len(ids)))
