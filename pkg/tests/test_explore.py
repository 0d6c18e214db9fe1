import logging

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from artmap.corpus import Document, tokenize
from artmap.errors import DataError, EmptyCorpusError
from artmap.explore import (
    UNKNOWN_YEAR,
    build_histogram,
    frequency_csv,
    histogram_csv,
    histogram_svg,
    match_document,
    read_histogram_csv,
    term_frequencies,
)

from conftest import tdoc

KW21 = [f"k{i:02d}" for i in range(21)]


def test_seven_of_twenty_one_is_a_hit():
    assert match_document(tdoc("d", *KW21[:7], "other"), KW21, 0.30)


def test_six_of_twenty_one_is_not():
    assert not match_document(tdoc("d", *KW21[:6], "other"), KW21, 0.30)


def test_threshold_one_inclusive():
    assert match_document(tdoc("d", *KW21), KW21, 1.0)
    assert not match_document(tdoc("d", *KW21[1:]), KW21, 1.0)


def test_presence_not_occurrences():
    kw = ["a", "b", "c", "d"]
    assert not match_document(tdoc("d", "a", "a", "a", "a"), kw, 0.5)


def test_match_errors():
    with pytest.raises(DataError):
        match_document(tdoc("d", "a"), [], 0.3)
    with pytest.raises(DataError):
        match_document(tdoc("d", "a"), ["a"], 0.0)


def test_histogram_three_docs():
    docs = [
        Document("1", "rna virus", 2000),
        Document("2", "nothing here", 2000),
        Document("3", "virus rna cells", 2001),
    ]
    rep = build_histogram(docs, ["rna", "virus"], 0.3)
    assert rep.yearly_hits == {2000: 1, 2001: 1}
    assert rep.total_docs == {2000: 2, 2001: 1}


def test_histogram_zero_matches():
    docs = [Document("1", "x", 1990), Document("2", "y", 1991), Document("3", "z", 1991)]
    rep = build_histogram(docs, ["rna"], 0.3)
    assert rep.yearly_hits == {1990: 0, 1991: 0}
    assert rep.total_docs == {1990: 1, 1991: 2}


def test_missing_year_goes_to_unknown(caplog):
    docs = [Document("1", "rna", None), Document("2", "rna", 2010)]
    rep = build_histogram(docs, ["rna"], 0.3)
    assert rep.yearly_hits == {UNKNOWN_YEAR: 1, 2010: 1}
    assert rep.years() == [2010, UNKNOWN_YEAR]
    with caplog.at_level(logging.WARNING):
        build_histogram([Document("1", "rna")], ["rna"], 0.3)
    assert "year" in caplog.text


def test_degenerate_documents_count_in_totals():
    rep = build_histogram([Document("1", "", 2000), Document("2", "the", 2000)], ["rna"], 0.3, {"the"})
    assert rep.total_docs == {2000: 2} and rep.yearly_hits == {2000: 0}


def test_histogram_csv_layout():
    rep = build_histogram(
        [Document("1", "rna", None), Document("2", "rna", 2010), Document("3", "x", 1999)], ["rna"], 0.3
    )
    text = histogram_csv(rep)
    assert text.splitlines() == ["year,hits,total", "1999,0,1", "2010,1,1", "unknown,1,1"]
    back = read_histogram_csv(text)
    assert back.yearly_hits == rep.yearly_hits and back.total_docs == rep.total_docs


def test_svg_has_one_bar_per_year():
    rep = build_histogram([Document(str(i), "rna", 2000 + i % 3) for i in range(7)], ["rna"], 0.3)
    svg = histogram_svg(rep)
    assert svg.startswith("<svg") and svg.rstrip().endswith("</svg>")
    assert svg.count("<rect") == 3
    assert "1 keywords" in svg and "30%" in svg


def test_term_frequencies():
    rep = term_frequencies([tdoc("1", "cell", "cell"), tdoc("2", "cell")])
    assert rep.as_dict() == {"cell": 3}
    rep = term_frequencies([tdoc("1", "b", "a", "c", "c")])
    assert [t for t, _ in rep.term_counts] == ["c", "a", "b"]
    assert frequency_csv(rep).splitlines() == ["term,count", "c,2", "a,1", "b,1"]
    with pytest.raises(EmptyCorpusError):
        term_frequencies([])


@given(st.integers(0, 2**32 - 1))
def test_histogram_equals_individual_matches(seed):
    rng = np.random.default_rng(seed)
    words = ["rna", "virus", "cells", "lung", "heart", "x", "y"]
    docs = [
        Document(str(i), " ".join(rng.choice(words, int(rng.integers(1, 6)))), int(rng.integers(1990, 1995)))
        for i in range(20)
    ]
    kw = list(rng.choice(words[:5], int(rng.integers(1, 5)), replace=False))
    thr = float(rng.choice([0.1, 0.3, 0.5, 1.0]))
    rep = build_histogram(docs, kw, thr)
    assert rep.total_hits == sum(match_document(tokenize(d), kw, thr) for d in docs)
    for y in rep.total_docs:
        assert rep.yearly_hits[y] <= rep.total_docs[y]


@given(st.integers(0, 2**32 - 1))
def test_unseen_keyword_never_raises_ratio(seed):
    rng = np.random.default_rng(seed)
    words = ["a", "b", "c", "d", "e"]
    doc = tdoc("d", *rng.choice(words, 4))
    kw = list(rng.choice(words, 3, replace=False))
    for thr in (0.2, 0.34, 0.5, 0.67, 1.0):
        if match_document(doc, kw + ["never-present"], thr):
            assert match_document(doc, kw, thr)
