"""Directed term graph built from simple rules, its node partition and path search."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

import numpy as np

from .errors import EmptyGraphError
from .rules import SimpleRule, rule_to_dict

DEFAULT_PATH_LIMIT = 10_000

Path_ = tuple[str, ...]


@dataclass(frozen=True)
class TermGraph:
    nodes: tuple[str, ...]
    edges: dict[tuple[str, str], SimpleRule]
    successors: dict[str, tuple[str, ...]]
    predecessors: dict[str, tuple[str, ...]]
    ante: frozenset[str]
    cons: frozenset[str]
    mixed: frozenset[str]

    def rule(self, x: str, y: str) -> SimpleRule:
        return self.edges[(x, y)]

    def out_degree(self, node: str) -> int:
        return len(self.successors.get(node, ()))

    def in_degree(self, node: str) -> int:
        return len(self.predecessors.get(node, ()))


def build_graph(rules: Iterable[SimpleRule]) -> TermGraph:
    """One node per term, one arc per simple rule, nodes partitioned by degree.

    Sources (indegree 0) go to ``ante``, sinks (outdegree 0) to ``cons`` and the
    rest to ``mixed``. Duplicate (antecedent, consequent) pairs keep the max lift.
    """
    edges: dict[tuple[str, str], SimpleRule] = {}
    for r in rules:
        prev = edges.get(r.key)
        if prev is None or r.lift > prev.lift:
            edges[r.key] = r
    if not edges:
        raise EmptyGraphError("cannot build a term graph from zero rules")
    edges = {k: edges[k] for k in sorted(edges)}

    succ: dict[str, list[str]] = {}
    pred: dict[str, list[str]] = {}
    for x, y in edges:
        succ.setdefault(x, []).append(y)
        pred.setdefault(y, []).append(x)
    nodes = tuple(sorted(set(succ) | set(pred)))
    ante = frozenset(n for n in nodes if n not in pred)
    cons = frozenset(n for n in nodes if n not in succ)
    mixed = frozenset(n for n in nodes if n in succ and n in pred)
    return TermGraph(
        nodes,
        edges,
        {k: tuple(sorted(v)) for k, v in succ.items()},
        {k: tuple(sorted(v)) for k, v in pred.items()},
        ante,
        cons,
        mixed,
    )


def enumerate_paths(
    g: TermGraph, max_len: int, limit: Optional[int] = None
) -> list[Path_]:
    """All node-simple ante-to-cons paths with at most ``max_len`` intermediate stops.

    Paths come out in DFS order from the sorted ante nodes, successors visited in
    sorted order. With ``limit`` set, enumeration stops after that many paths.
    """
    paths, _ = _enumerate(g, max_len, limit)
    return paths


def _enumerate(g: TermGraph, max_len: int, limit: Optional[int]) -> tuple[list[Path_], bool]:
    if max_len < 0:
        raise ValueError(f"max_len must be >= 0, got {max_len}")
    out: list[Path_] = []
    max_nodes = max_len + 2
    for start in sorted(g.ante):
        stack = [(start, iter(g.successors.get(start, ())))]
        on_path = {start}
        trail = [start]
        while stack:
            node, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                on_path.discard(trail.pop())
                continue
            if nxt in on_path:
                continue
            if nxt in g.cons:
                out.append(tuple(trail) + (nxt,))
                if limit is not None and len(out) >= limit:
                    return out, True
                continue
            if len(trail) + 1 < max_nodes:
                trail.append(nxt)
                on_path.add(nxt)
                stack.append((nxt, iter(g.successors.get(nxt, ()))))
    return out, False


def sample_paths(
    g: TermGraph, max_len: int, n: int, rng: np.random.Generator, max_attempts: Optional[int] = None
) -> list[Path_]:
    """Draw up to ``n`` distinct feasible paths by random self-avoiding walks."""
    starts = sorted(g.ante)
    if not starts or not g.cons:
        return []
    max_attempts = max_attempts or 50 * n
    found: dict[Path_, None] = {}
    for _ in range(max_attempts):
        if len(found) >= n:
            break
        node = starts[rng.integers(len(starts))]
        trail = [node]
        seen = {node}
        while node not in g.cons and len(trail) < max_len + 2:
            options = [s for s in g.successors.get(node, ()) if s not in seen]
            if not options:
                break
            node = options[rng.integers(len(options))]
            trail.append(node)
            seen.add(node)
        if node in g.cons and len(trail) >= 2:
            found.setdefault(tuple(trail), None)
    return list(found)


def feasible_path_pool(
    g: TermGraph, tau: int, limit: int = DEFAULT_PATH_LIMIT, rng: Optional[np.random.Generator] = None
) -> tuple[list[Path_], bool]:
    """Feasible lines for the map search and whether enumeration was truncated.

    When the exhaustive enumeration exceeds ``limit`` the pool is replaced by a
    seeded random sample of ``limit`` paths, so the EA is not biased toward the
    lexicographically first start nodes.
    """
    paths, truncated = _enumerate(g, tau, limit)
    if truncated:
        rng = rng if rng is not None else np.random.default_rng(0)
        paths = sorted(sample_paths(g, tau, limit, rng))
    return paths, truncated


_SHAPES = {"ante": "box", "mixed": "ellipse", "cons": "doublecircle"}


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def partition_of(g: TermGraph, node: str) -> str:
    if node in g.ante:
        return "ante"
    if node in g.cons:
        return "cons"
    return "mixed"


def to_dot(g: TermGraph, name: str = "termgraph") -> str:
    lines = [f"digraph {_q(name)} {{"]
    for node in g.nodes:
        lines.append(f"  {_q(node)} [shape={_SHAPES[partition_of(g, node)]}];")
    for (x, y), r in g.edges.items():
        lines.append(f'  {_q(x)} -> {_q(y)} [label="{r.lift:.4g}", lift={r.lift!r}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(g: TermGraph) -> str:
    return json.dumps(
        {
            "nodes": list(g.nodes),
            "ante": sorted(g.ante),
            "mixed": sorted(g.mixed),
            "cons": sorted(g.cons),
            "edges": [rule_to_dict(r) for r in g.edges.values()],
        },
        indent=2,
    )


def read_graph(path: str | Path) -> TermGraph:
    d = json.loads(Path(path).read_text(encoding="utf-8"))
    rules = []
    for e in d["edges"]:
        (x,), (y,) = e["antecedents"], e["consequents"]
        rules.append(SimpleRule(x, y, e["lift"], e["support_x"], e["support_y"], e["support"]))
    return build_graph(rules)
