"""Association rule mining over selected terms and decomposition into simple rules."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Iterable

import numpy as np

from .errors import ConfigError, DataError, UndefinedLiftError
from .selection import SelectionVector
from .weighting import WeightMatrix


@dataclass(frozen=True)
class TransactionTable:
    """Binary presence table: one row per document, one column per item."""

    items: tuple[str, ...]
    rows: np.ndarray  # bool, shape (n_transactions, n_items)

    def __post_init__(self):
        rows = np.asarray(self.rows, dtype=bool)
        if rows.ndim != 2 or rows.shape[1] != len(self.items):
            raise DataError(f"table of shape {rows.shape} does not match {len(self.items)} items")
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "_col", {t: j for j, t in enumerate(self.items)})

    @property
    def n_transactions(self) -> int:
        return self.rows.shape[0]

    def column(self, item: str) -> np.ndarray:
        try:
            return self.rows[:, self._col[item]]
        except KeyError:
            raise DataError(f"item {item!r} not in transaction table") from None

    def count(self, itemset: Iterable[str]) -> int:
        mask = np.ones(self.n_transactions, dtype=bool)
        for item in itemset:
            mask &= self.column(item)
        return int(mask.sum())

    def support(self, itemset: Iterable[str]) -> float:
        return self.count(itemset) / self.n_transactions


@dataclass(frozen=True)
class AssociationRule:
    antecedents: tuple[str, ...]
    consequents: tuple[str, ...]
    support: float
    confidence: float

    def __post_init__(self):
        if not self.antecedents or not self.consequents:
            raise DataError("a rule needs at least one antecedent and one consequent")
        if set(self.antecedents) & set(self.consequents):
            raise DataError(f"antecedents and consequents overlap in {self}")

    @property
    def key(self):
        return (self.antecedents, self.consequents)


@dataclass(frozen=True)
class SimpleRule:
    antecedent: str
    consequent: str
    lift: float
    support_x: float
    support_y: float
    support_xy: float

    def __post_init__(self):
        if self.antecedent == self.consequent:
            raise DataError(f"self-loop rule on {self.antecedent!r}")

    @property
    def key(self) -> tuple[str, str]:
        return (self.antecedent, self.consequent)

    @property
    def confidence(self) -> float:
        return self.support_xy / self.support_x


def binarize(w: WeightMatrix, selected: SelectionVector) -> TransactionTable:
    cols = np.flatnonzero(selected.y)
    if len(cols) == 0:
        raise DataError("cannot binarize with an empty term selection")
    return TransactionTable(tuple(w.terms[j] for j in cols), w.weights[:, cols] > 0)


def _frequent_itemsets(table: TransactionTable, min_support: float, max_len: int) -> dict[tuple, int]:
    """Level-wise (Apriori) search; itemsets are sorted tuples of item names."""
    n = table.n_transactions
    frequent = {}
    level = {}
    for item in sorted(table.items):
        c = table.count((item,))
        if c / n >= min_support:
            level[(item,)] = c
    size = 1
    while level:
        frequent.update(level)
        if size == max_len:
            break
        keys = sorted(level)
        candidates = set()
        for a, b in combinations(keys, 2):
            if a[:-1] != b[:-1]:
                continue
            cand = a + (b[-1],)
            # prune: every (size)-subset must itself be frequent
            if all(sub in level for sub in combinations(cand, size)):
                candidates.add(cand)
        level = {}
        for cand in sorted(candidates):
            c = table.count(cand)
            if c / n >= min_support:
                level[cand] = c
        size += 1
    return frequent


def mine_rules(
    table: TransactionTable,
    min_support: float = 0.05,
    min_confidence: float = 0.5,
    max_len: int = 10,
) -> list[AssociationRule]:
    """All rules X => Y with supp(X u Y) >= min_support, conf >= min_confidence
    and |X| + |Y| <= max_len, in lexicographic (antecedents, consequents) order."""
    if not 0 < min_support <= 1:
        raise ConfigError("min_support", f"must be in (0, 1], got {min_support}")
    if not 0 < min_confidence <= 1:
        raise ConfigError("min_confidence", f"must be in (0, 1], got {min_confidence}")
    if max_len < 2:
        raise ConfigError("max_len", f"must be >= 2, got {max_len}")
    n = table.n_transactions
    if n == 0 or not table.items:
        raise DataError("cannot mine rules from an empty transaction table")

    freq = _frequent_itemsets(table, min_support, max_len)
    rules = []
    for itemset, c_xy in freq.items():
        if len(itemset) < 2:
            continue
        for r in range(1, len(itemset)):
            for ante in combinations(itemset, r):
                conf = c_xy / freq[ante]
                if conf >= min_confidence:
                    cons = tuple(i for i in itemset if i not in ante)
                    rules.append(AssociationRule(ante, cons, c_xy / n, conf))
    rules.sort(key=lambda rule: rule.key)
    return rules


def lift(table: TransactionTable, x: str, y: str) -> float:
    """supp(xy) / (supp(x) * supp(y)), evaluated on counts so it is exactly symmetric."""
    cx, cy = table.count((x,)), table.count((y,))
    if cx == 0 or cy == 0:
        raise UndefinedLiftError(f"lift({x!r}, {y!r}) undefined: zero marginal support")
    cxy = table.count((x, y))
    return (cxy * table.n_transactions) / (cx * cy)


def simplify(rule: AssociationRule, table: TransactionTable) -> list[SimpleRule]:
    out = []
    for x in rule.antecedents:
        for y in rule.consequents:
            out.append(
                SimpleRule(
                    x, y, lift(table, x, y),
                    table.support((x,)), table.support((y,)), table.support((x, y)),
                )
            )
    return out


def simplify_all(
    rules: Iterable[AssociationRule],
    table: TransactionTable,
    stoplist: Iterable[str] = (),
) -> list[SimpleRule]:
    """Simplify every rule, drop pairs touching the stoplist and merge duplicates
    keeping the highest lift. Output is sorted by (antecedent, consequent)."""
    stop = frozenset(stoplist)
    best: dict[tuple[str, str], SimpleRule] = {}
    for rule in rules:
        for s in simplify(rule, table):
            if s.antecedent in stop or s.consequent in stop:
                continue
            prev = best.get(s.key)
            if prev is None or s.lift > prev.lift:
                best[s.key] = s
    return [best[k] for k in sorted(best)]


def orient(rules: Iterable[SimpleRule]) -> list[SimpleRule]:
    """Keep one direction of every antiparallel pair x => y, y => x.

    The higher-confidence direction wins, i.e. the arc leaves the less supported
    term; equal supports keep the lexicographically smaller antecedent. Arcs then
    follow a strict order on (support, term), so the result is acyclic and has
    both source and sink nodes.
    """
    rules = list(rules)
    by_key = {r.key: r for r in rules}

    def rank(term, r):
        supp = r.support_x if term == r.antecedent else r.support_y
        return (supp, term)

    out = []
    for r in rules:
        if (r.consequent, r.antecedent) in by_key and rank(r.antecedent, r) > rank(r.consequent, r):
            continue
        out.append(r)
    return out


def rule_to_dict(rule: AssociationRule | SimpleRule) -> dict:
    if isinstance(rule, SimpleRule):
        return {
            "antecedents": [rule.antecedent],
            "consequents": [rule.consequent],
            "support": rule.support_xy,
            "confidence": rule.confidence,
            "lift": rule.lift,
            "support_x": rule.support_x,
            "support_y": rule.support_y,
        }
    return {
        "antecedents": list(rule.antecedents),
        "consequents": list(rule.consequents),
        "support": rule.support,
        "confidence": rule.confidence,
    }


def write_rules(rules: Iterable[AssociationRule | SimpleRule], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        for rule in rules:
            fh.write(json.dumps(rule_to_dict(rule)) + "\n")


def read_rules(path: str | Path) -> list[AssociationRule]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if line.strip():
                d = json.loads(line)
                out.append(AssociationRule(tuple(d["antecedents"]), tuple(d["consequents"]),
                                           d["support"], d["confidence"]))
    return out


def read_simple_rules(path: str | Path) -> list[SimpleRule]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            if not line.strip():
                continue
            d = json.loads(line)
            (x,), (y,) = d["antecedents"], d["consequents"]
            out.append(SimpleRule(x, y, d["lift"], d["support_x"], d["support_y"], d["support"]))
    return out
