"""Metro map scoring and evolutionary construction over the term graph.

A metro line is a feasible source-to-sink path of the term graph; a metro map is
a set of at most ``l_max`` distinct lines. Maps are scored by

    fitness = (coverage + w * (1 - squality)) * n_lines

where coverage is the mean over lines of the mean lift of each line's rules and
squality is the mean, over unordered line pairs, of the fraction of cross-line
rule pairs that differ. ``diversity_sign="prose"`` swaps ``1 - squality`` for
``squality`` so diverse maps are rewarded instead.
"""

from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from .errors import ConfigError, DataError, NoFeasibleMapError
from .rules import SimpleRule
from .termgraph import DEFAULT_PATH_LIMIT, TermGraph, feasible_path_pool

DIVERSITY_SIGNS = ("paper", "prose")


@dataclass(frozen=True)
class MetroLine:
    stops: tuple[str, ...]
    rules: tuple[SimpleRule, ...]
    coverage: float

    @property
    def rule_keys(self) -> frozenset[tuple[str, str]]:
        return frozenset(r.key for r in self.rules)

    @property
    def intermediate_stops(self) -> int:
        return len(self.stops) - 2


@dataclass(frozen=True)
class MetroMap:
    lines: tuple[MetroLine, ...]
    coverage: float
    squality: float
    fitness: float
    n_lines: int
    weight_w: float = 0.5
    diversity_sign: str = "paper"

    def stops(self) -> list[str]:
        return [s for line in self.lines for s in line.stops]


@dataclass(frozen=True)
class EaConfig:
    population_size: int = 100
    generations: int = 300
    crossover_rate: float = 0.8
    mutation_rate: float = 0.2
    seed: int = 0
    tau: int = 10
    l_max: int = 10
    weight_w: float = 0.5
    diversity_sign: str = "paper"
    tournament_size: int = 3
    elite: int = 2
    path_limit: int = DEFAULT_PATH_LIMIT

    def validate(self) -> "EaConfig":
        for name in ("crossover_rate", "mutation_rate"):
            v = getattr(self, name)
            if not 0 <= v <= 1:
                raise ConfigError(name, f"must be in [0, 1], got {v}")
        for name in ("tau", "l_max", "population_size", "generations", "tournament_size", "path_limit"):
            v = getattr(self, name)
            if v < 1:
                raise ConfigError(name, f"must be >= 1, got {v}")
        if not 0 <= self.elite <= self.population_size:
            raise ConfigError("elite", f"must be in [0, population_size], got {self.elite}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed", "must be a 64-bit unsigned integer")
        if self.diversity_sign not in DIVERSITY_SIGNS:
            raise ConfigError("diversity_sign", f"must be one of {DIVERSITY_SIGNS}")
        return self


def line_coverage(line: MetroLine | Sequence[SimpleRule]) -> float:
    rules = line.rules if isinstance(line, MetroLine) else line
    if not rules:
        raise DataError("coverage of an empty line is undefined")
    return sum(r.lift for r in rules) / len(rules)


def make_line(g: TermGraph, stops: Sequence[str]) -> MetroLine:
    stops = tuple(stops)
    if len(stops) < 2:
        raise DataError("a metro line needs at least two stops")
    if len(set(stops)) != len(stops):
        raise DataError(f"metro line {stops} repeats a stop")
    try:
        rules = tuple(g.rule(x, y) for x, y in zip(stops, stops[1:]))
    except KeyError as exc:
        raise DataError(f"metro line {stops} uses missing edge {exc.args[0]}") from None
    return MetroLine(stops, rules, line_coverage(rules))


def _pair_difference(a: frozenset, b: frozenset) -> float:
    # ordered pairs (r in a, s in b) with r != s; rules within a line are distinct
    total = len(a) * len(b)
    return (total - len(a & b)) / total


def _squality(rule_sets: Sequence[frozenset]) -> float:
    if len(rule_sets) < 2:
        return 1.0
    pairs = list(combinations(rule_sets, 2))
    return sum(_pair_difference(a, b) for a, b in pairs) / len(pairs)


def _coverage(line_covs: Sequence[float]) -> float:
    return sum(line_covs) / len(line_covs)


def _fitness(coverage: float, squality: float, n_lines: int, weight_w: float, diversity_sign: str) -> float:
    diversity = 1.0 - squality if diversity_sign == "paper" else squality
    return (coverage + weight_w * diversity) * n_lines


def map_coverage(m: MetroMap | Sequence[MetroLine]) -> float:
    lines = m.lines if isinstance(m, MetroMap) else m
    if not lines:
        raise DataError("coverage of an empty map is undefined")
    return _coverage([line.coverage for line in lines])


def structure_quality(m: MetroMap | Sequence[MetroLine]) -> float:
    """Mean fraction of differing rule pairs over all unordered line pairs.

    A single-line map has no line pairs and is defined to score 1.0.
    """
    lines = m.lines if isinstance(m, MetroMap) else m
    return _squality([line.rule_keys for line in lines])


def fitness(m: MetroMap, weight_w: float = 0.5, diversity_sign: str = "paper") -> float:
    return _fitness(m.coverage, m.squality, m.n_lines, weight_w, diversity_sign)


def make_map(lines: Iterable[MetroLine], weight_w: float = 0.5, diversity_sign: str = "paper") -> MetroMap:
    lines = tuple(lines)
    if not lines:
        raise DataError("a metro map needs at least one line")
    cov = map_coverage(lines)
    sq = structure_quality(lines)
    return MetroMap(lines, cov, sq, _fitness(cov, sq, len(lines), weight_w, diversity_sign),
                    len(lines), weight_w, diversity_sign)


class _Scorer:
    """Fitness of genomes (sorted tuples of pool indices), memoized."""

    def __init__(self, lines: Sequence[MetroLine], weight_w: float, diversity_sign: str):
        self.cov = [line.coverage for line in lines]
        self.keys = [line.rule_keys for line in lines]
        self.w = weight_w
        self.sign = diversity_sign
        self._cache: dict[tuple[int, ...], float] = {}
        self._pairs: dict[tuple[int, int], float] = {}

    def _pair(self, i: int, j: int) -> float:
        d = self._pairs.get((i, j))
        if d is None:
            d = self._pairs[(i, j)] = _pair_difference(self.keys[i], self.keys[j])
        return d

    def __call__(self, genome: tuple[int, ...]) -> float:
        f = self._cache.get(genome)
        if f is None:
            n = len(genome)
            cov = _coverage([self.cov[i] for i in genome])
            if n < 2:
                sq = 1.0
            else:
                pairs = list(combinations(genome, 2))
                sq = sum(self._pair(i, j) for i, j in pairs) / len(pairs)
            f = self._cache[genome] = _fitness(cov, sq, n, self.w, self.sign)
        return f


class _Evolver:
    """Variation operators on genomes; draws come from one seeded stream."""

    def __init__(self, n_paths: int, l_max: int, cfg: EaConfig, rng: random.Random):
        self.P = n_paths
        self.L = min(l_max, n_paths)
        self.cfg = cfg
        self.rng = rng

    def random_genome(self) -> tuple[int, ...]:
        size = self.rng.randint(1, self.L)
        return tuple(sorted(self.rng.sample(range(self.P), size)))

    def _repair(self, genes: list[int]) -> tuple[int, ...]:
        genes = list(dict.fromkeys(genes))
        while len(genes) > self.L:
            genes.pop(self.rng.randrange(len(genes)))
        return tuple(sorted(genes))

    def crossover(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        ca = self.rng.randint(0, len(a))
        cb = self.rng.randint(0, len(b))
        child = self._repair(list(a[:ca]) + list(b[cb:]))
        return child if child else a

    def mutate(self, genome: tuple[int, ...]) -> tuple[int, ...]:
        genes = list(genome)
        ops = []
        if len(genes) < self.P:
            ops.append("replace")
            if len(genes) < self.L:
                ops.append("add")
        if len(genes) > 1:
            ops.append("remove")
        if not ops:
            return genome
        op = ops[self.rng.randrange(len(ops))]
        if op == "remove":
            genes.pop(self.rng.randrange(len(genes)))
        else:
            present = set(genes)
            new = self.rng.randrange(self.P)
            while new in present:
                new = self.rng.randrange(self.P)
            if op == "replace":
                genes[self.rng.randrange(len(genes))] = new
            else:
                genes.append(new)
        return tuple(sorted(genes))

    def tournament(self, pop: list[tuple[int, ...]], scores: list[float]) -> tuple[int, ...]:
        n = len(pop)
        best = self.rng.randrange(n)
        for _ in range(self.cfg.tournament_size - 1):
            i = self.rng.randrange(n)
            if scores[i] > scores[best] or (scores[i] == scores[best] and i < best):
                best = i
        return pop[best]


def construct_map(g: TermGraph, cfg: EaConfig = EaConfig()) -> MetroMap:
    """Evolve a metro map of feasible lines maximizing the map fitness."""
    cfg.validate()
    seq = np.random.SeedSequence(cfg.seed)
    pool_seq, ea_seq = seq.spawn(2)
    paths, _ = feasible_path_pool(g, cfg.tau, cfg.path_limit, np.random.default_rng(pool_seq))
    if not paths:
        raise NoFeasibleMapError(
            f"no source-to-sink path with at most {cfg.tau} intermediate stops"
        )
    lines = [make_line(g, p) for p in paths]
    score = _Scorer(lines, cfg.weight_w, cfg.diversity_sign)
    rng = random.Random(int(ea_seq.generate_state(2, np.uint64)[0]))
    evo = _Evolver(len(lines), cfg.l_max, cfg, rng)

    pop = [evo.random_genome() for _ in range(cfg.population_size)]
    best, best_fit = None, -np.inf

    for gen in range(cfg.generations + 1):
        scores = [score(gnm) for gnm in pop]
        for gnm, f in zip(pop, scores):
            if f > best_fit or (f == best_fit and gnm < best):
                best, best_fit = gnm, f
        if gen == cfg.generations:
            break
        order = sorted(range(len(pop)), key=lambda i: (-scores[i], pop[i]))
        nxt = [pop[i] for i in order[: cfg.elite]]
        while len(nxt) < cfg.population_size:
            child = evo.tournament(pop, scores)
            if rng.random() < cfg.crossover_rate:
                child = evo.crossover(child, evo.tournament(pop, scores))
            if rng.random() < cfg.mutation_rate:
                child = evo.mutate(child)
            nxt.append(child)
        pop = nxt

    return make_map((lines[i] for i in best), cfg.weight_w, cfg.diversity_sign)


def extract_keywords(m: MetroMap, stoplist: Iterable[str] = ()) -> list[str]:
    """Distinct stops of all lines in first-appearance order, minus the stoplist."""
    stop = frozenset(stoplist)
    seen: dict[str, None] = {}
    for s in m.stops():
        if s not in stop:
            seen.setdefault(s, None)
    return list(seen)


def map_to_dict(m: MetroMap, seed: int | None = None, config: EaConfig | None = None) -> dict:
    return {
        "lines": [list(line.stops) for line in m.lines],
        "line_coverage": [line.coverage for line in m.lines],
        "coverage": m.coverage,
        "squality": m.squality,
        "fitness": m.fitness,
        "n_lines": m.n_lines,
        "seed": seed,
        "config": asdict(config) if config is not None else {
            "weight_w": m.weight_w, "diversity_sign": m.diversity_sign},
    }


def map_to_json(m: MetroMap, seed: int | None = None, config: EaConfig | None = None) -> str:
    return json.dumps(map_to_dict(m, seed, config), indent=2)


def map_from_dict(d: dict, g: TermGraph) -> MetroMap:
    cfg = d.get("config") or {}
    return make_map(
        (make_line(g, stops) for stops in d["lines"]),
        cfg.get("weight_w", 0.5),
        cfg.get("diversity_sign", "paper"),
    )


_PALETTE = (
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4",
    "#42d4f4", "#f032e6", "#9a6324", "#800000", "#000075",
)


def _q(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def map_to_dot(m: MetroMap, name: str = "metromap") -> str:
    """DOT drawing: each stop once, one colored edge per line segment."""
    out = [f"digraph {_q(name)} {{", "  node [shape=circle];"]
    seen: dict[str, None] = {}
    for s in m.stops():
        seen.setdefault(s, None)
    for s in seen:
        out.append(f"  {_q(s)};")
    for k, line in enumerate(m.lines):
        color = _PALETTE[k % len(_PALETTE)]
        for r in line.rules:
            out.append(
                f'  {_q(r.antecedent)} -> {_q(r.consequent)} '
                f'[color="{color}", label="L{k + 1}", penwidth=2];'
            )
    out.append("}")
    return "\n".join(out) + "\n"
