"""Corpus ingestion, tokenization and vocabulary construction."""

from __future__ import annotations

import csv
import json
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional

from .errors import (
    CorpusParseError,
    DegenerateDocumentError,
    DuplicateDocumentError,
    EmptyCorpusError,
)

# Anything that is not a letter, digit or hyphen separates terms.
_PUNCT = re.compile(r"[^\w\-]|_")


@dataclass(frozen=True)
class Document:
    id: str
    text: str
    year: Optional[int] = None

    @property
    def degenerate(self) -> bool:
        return not self.text.strip()


@dataclass(frozen=True)
class TokenizedDocument:
    id: str
    terms: tuple[str, ...]
    year: Optional[int] = None

    @property
    def term_count(self) -> int:
        return len(self.terms)


@dataclass(frozen=True)
class Vocabulary:
    terms: tuple[str, ...]
    document_frequency: tuple[int, ...]
    corpus_size: int
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "index", {t: j for j, t in enumerate(self.terms)})

    def __len__(self):
        return len(self.terms)

    def __contains__(self, term):
        return term in self.index

    def df(self, term: str) -> int:
        return self.document_frequency[self.index[term]]


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Read a stop-word file (one word per line, ``#`` starts a comment line).

    With no path, the bundled English list is returned.
    """
    if path is None:
        text = resources.files("artmap").joinpath("data/stopwords_en.txt").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return frozenset(words)


def _parse_year(raw, path, line):
    if raw is None or raw == "":
        return None
    if isinstance(raw, bool):
        raise CorpusParseError(path, line, f"year must be an integer, got {raw!r}")
    try:
        year = int(raw)
    except (TypeError, ValueError):
        raise CorpusParseError(path, line, f"year must be an integer, got {raw!r}") from None
    if isinstance(raw, float) and raw != year:
        raise CorpusParseError(path, line, f"year must be an integer, got {raw!r}")
    return year


def _iter_jsonl(path):
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusParseError(path, lineno, f"invalid JSON ({exc.msg})") from None
            if not isinstance(rec, dict):
                raise CorpusParseError(path, lineno, "expected a JSON object")
            yield lineno, rec


def _iter_csv(path):
    with open(path, encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        missing = {"id", "abstract"} - set(header)
        if missing:
            raise CorpusParseError(path, 1, f"CSV header lacks {sorted(missing)}")
        for rec in reader:
            # line_num is the physical line of the record just read
            yield reader.line_num, rec


def ingest_corpus(path: str | Path, format: str | None = None) -> list[Document]:
    """Load documents from a JSON-lines or CSV corpus file.

    ``format`` is ``"jsonl"`` or ``"csv"``; when omitted it is inferred from the
    file extension. Records need ``id`` and ``abstract``; ``year`` is optional.
    Duplicate ids are rejected.
    """
    path = Path(path)
    if format is None:
        format = "csv" if path.suffix.lower() == ".csv" else "jsonl"
    if format == "jsonl":
        records = _iter_jsonl(path)
    elif format == "csv":
        records = _iter_csv(path)
    else:
        raise ValueError(f"unknown corpus format {format!r}")

    docs = []
    seen = {}
    for lineno, rec in records:
        doc_id = rec.get("id")
        if doc_id is None or doc_id == "":
            raise CorpusParseError(path, lineno, "missing 'id'")
        if not isinstance(doc_id, str):
            raise CorpusParseError(path, lineno, "'id' must be a string")
        text = rec.get("abstract")
        if text is None:
            raise CorpusParseError(path, lineno, "missing 'abstract'")
        if not isinstance(text, str):
            raise CorpusParseError(path, lineno, "'abstract' must be a string")
        if doc_id in seen:
            raise DuplicateDocumentError(
                f"{path}: duplicate id {doc_id!r} on lines {seen[doc_id]} and {lineno}"
            )
        seen[doc_id] = lineno
        docs.append(Document(doc_id, text, _parse_year(rec.get("year"), path, lineno)))
    return docs


def split_terms(text: str) -> list[str]:
    """Lowercase, strip punctuation and split on whitespace (no stop-word removal)."""
    terms = []
    for tok in _PUNCT.sub(" ", text.lower()).split():
        tok = tok.strip("-")
        if tok:
            terms.append(tok)
    return terms


def tokenize(doc: Document, stopwords: Iterable[str] = frozenset()) -> TokenizedDocument:
    if doc.degenerate:
        raise DegenerateDocumentError(f"document {doc.id!r} has empty text")
    stop = stopwords if isinstance(stopwords, (set, frozenset)) else frozenset(stopwords)
    terms = tuple(t for t in split_terms(doc.text) if t not in stop)
    if not terms:
        raise DegenerateDocumentError(f"document {doc.id!r} has no terms after stop-word removal")
    return TokenizedDocument(doc.id, terms, doc.year)


def tokenize_corpus(docs: Iterable[Document], stopwords: Iterable[str] = frozenset()) -> list[TokenizedDocument]:
    """Tokenize every document, dropping those that are or become degenerate."""
    stop = frozenset(stopwords)
    out = []
    for doc in docs:
        try:
            out.append(tokenize(doc, stop))
        except DegenerateDocumentError:
            continue
    return out


def build_vocabulary(docs: list[TokenizedDocument]) -> Vocabulary:
    if not docs:
        raise EmptyCorpusError("cannot build a vocabulary from zero documents")
    df = Counter()
    for doc in docs:
        df.update(set(doc.terms))
    terms = tuple(sorted(df))
    return Vocabulary(terms, tuple(df[t] for t in terms), len(docs))


def write_tokens(docs: Iterable[TokenizedDocument], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for doc in docs:
            fh.write(json.dumps({"id": doc.id, "year": doc.year, "terms": list(doc.terms)}) + "\n")


def read_tokens(path: str | Path) -> list[TokenizedDocument]:
    docs = []
    for lineno, rec in _iter_jsonl(Path(path)):
        try:
            docs.append(TokenizedDocument(rec["id"], tuple(rec["terms"]), rec.get("year")))
        except KeyError as exc:
            raise CorpusParseError(path, lineno, f"missing {exc}") from None
    return docs
