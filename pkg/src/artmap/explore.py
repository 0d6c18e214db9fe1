"""Keyword matching over a second corpus: per-year hit histograms and term counts."""

from __future__ import annotations

import csv
import io
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from .corpus import Document, TokenizedDocument, tokenize
from .errors import DataError, DegenerateDocumentError, EmptyCorpusError

log = logging.getLogger(__name__)

UNKNOWN_YEAR = "unknown"
DEFAULT_THRESHOLD = 0.30

# absorbs the representation error of decimal thresholds such as 0.3 or 0.1 * 3
_EPS = 1e-12


@dataclass(frozen=True)
class MatchReport:
    keywords: tuple[str, ...]
    threshold: float
    yearly_hits: dict
    total_docs: dict

    def years(self) -> list:
        """Known years ascending, then the unknown bucket if present."""
        known = sorted(y for y in self.total_docs if y != UNKNOWN_YEAR)
        return known + ([UNKNOWN_YEAR] if UNKNOWN_YEAR in self.total_docs else [])

    @property
    def total_hits(self) -> int:
        return sum(self.yearly_hits.values())


@dataclass(frozen=True)
class FrequencyReport:
    term_counts: tuple[tuple[str, int], ...]

    def as_dict(self) -> dict[str, int]:
        return dict(self.term_counts)


def _check(keywords: Sequence[str], threshold: float) -> tuple[str, ...]:
    if not keywords:
        raise DataError("keyword list is empty")
    if not 0 < threshold <= 1:
        raise DataError(f"threshold must be in (0, 1], got {threshold}")
    return tuple(dict.fromkeys(keywords))


def match_ratio(doc: TokenizedDocument, keywords: Sequence[str]) -> float:
    kw = _check(keywords, 1.0)
    present = set(doc.terms)
    return sum(k in present for k in kw) / len(kw)


def match_document(doc: TokenizedDocument, keywords: Sequence[str], threshold: float = DEFAULT_THRESHOLD) -> bool:
    """True when the document contains at least ``threshold`` of the distinct keywords."""
    kw = _check(keywords, threshold)
    present = set(doc.terms)
    hits = sum(k in present for k in kw)
    return hits / len(kw) >= threshold - _EPS


def build_histogram(
    corpus: Iterable[Document],
    keywords: Sequence[str],
    threshold: float = DEFAULT_THRESHOLD,
    stopwords: Iterable[str] = frozenset(),
) -> MatchReport:
    kw = _check(keywords, threshold)
    stop = frozenset(stopwords)
    hits: Counter = Counter()
    totals: Counter = Counter()
    for doc in corpus:
        year = doc.year if doc.year is not None else UNKNOWN_YEAR
        totals[year] += 1
        hits[year] += 0
        try:
            tdoc = tokenize(doc, stop)
        except DegenerateDocumentError:
            continue
        if match_document(tdoc, kw, threshold):
            hits[year] += 1
    if totals and set(totals) == {UNKNOWN_YEAR}:
        log.warning("no document in the exploration corpus carries a year")
    return MatchReport(kw, threshold, dict(hits), dict(totals))


def term_frequencies(corpus: Iterable[TokenizedDocument]) -> FrequencyReport:
    counts: Counter = Counter()
    n = 0
    for doc in corpus:
        counts.update(doc.terms)
        n += 1
    if n == 0:
        raise EmptyCorpusError("cannot count terms of an empty corpus")
    return FrequencyReport(tuple(sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))))


def histogram_csv(report: MatchReport) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["year", "hits", "total"])
    for y in report.years():
        out.writerow([y, report.yearly_hits.get(y, 0), report.total_docs[y]])
    return buf.getvalue()


def frequency_csv(report: FrequencyReport) -> str:
    buf = io.StringIO()
    out = csv.writer(buf, lineterminator="\n")
    out.writerow(["term", "count"])
    out.writerows(report.term_counts)
    return buf.getvalue()


def read_histogram_csv(text: str) -> MatchReport:
    """Parse a histogram CSV back; keywords and threshold are not stored in it."""
    rows = list(csv.DictReader(io.StringIO(text)))
    hits, totals = {}, {}
    for row in rows:
        y = row["year"] if row["year"] == UNKNOWN_YEAR else int(row["year"])
        hits[y] = int(row["hits"])
        totals[y] = int(row["total"])
    return MatchReport((), float("nan"), hits, totals)


def _esc(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;").replace('"', "&quot;")


def histogram_svg(report: MatchReport, width: int = 800, height: int = 400) -> str:
    """Static SVG bar chart, one bar per year on a linear axis."""
    years = report.years()
    margin_l, margin_r, margin_t, margin_b = 50, 20, 40, 60
    plot_w = width - margin_l - margin_r
    plot_h = height - margin_t - margin_b
    top = max([report.yearly_hits.get(y, 0) for y in years] + [1])
    bar_w = plot_w / max(len(years), 1)
    title = f"Documents matching >= {report.threshold:.0%} of {len(report.keywords)} keywords"
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f"<title>{_esc(title)}</title>",
        f'<text x="{width / 2:.1f}" y="20" text-anchor="middle" font-size="14">{_esc(title)}</text>',
        f'<line x1="{margin_l}" y1="{margin_t + plot_h}" x2="{margin_l + plot_w}" '
        f'y2="{margin_t + plot_h}" stroke="black"/>',
        f'<line x1="{margin_l}" y1="{margin_t}" x2="{margin_l}" y2="{margin_t + plot_h}" stroke="black"/>',
        f'<text x="{margin_l - 5}" y="{margin_t + 4}" text-anchor="end" font-size="10">{top}</text>',
        f'<text x="{margin_l - 5}" y="{margin_t + plot_h}" text-anchor="end" font-size="10">0</text>',
    ]
    for k, y in enumerate(years):
        h = report.yearly_hits.get(y, 0) / top * plot_h
        x = margin_l + k * bar_w
        parts.append(
            f'<rect x="{x + 0.1 * bar_w:.2f}" y="{margin_t + plot_h - h:.2f}" '
            f'width="{0.8 * bar_w:.2f}" height="{h:.2f}" fill="#4363d8">'
            f"<title>{_esc(str(y))}: {report.yearly_hits.get(y, 0)}</title></rect>"
        )
        parts.append(
            f'<text x="{x + bar_w / 2:.2f}" y="{margin_t + plot_h + 12}" font-size="9" '
            f'text-anchor="end" transform="rotate(-60 {x + bar_w / 2:.2f} {margin_t + plot_h + 12})">'
            f"{_esc(str(y))}</text>"
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
