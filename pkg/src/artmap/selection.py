"""Term selection: maximize the summed weight of at most K vocabulary columns.

Two solvers share one objective. ``select_terms_exact`` exploits that the
objective is separable over columns (all weights are nonnegative), so the top-K
column sums are optimal. ``select_terms_pso`` is a binary particle swarm with a
sigmoid transfer function and a repair step that keeps every particle feasible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import ConfigError, DataError
from .weighting import WeightMatrix


@dataclass(frozen=True)
class SelectionVector:
    y: np.ndarray
    selected_terms: tuple[str, ...]
    aws: float

    @classmethod
    def from_bits(cls, w: WeightMatrix, y) -> "SelectionVector":
        y = np.asarray(y, dtype=np.int8)
        terms = tuple(t for t, bit in zip(w.terms, y) if bit)
        return cls(y, terms, aws_score(w, y))

    def __eq__(self, other):
        if not isinstance(other, SelectionVector):
            return NotImplemented
        return (
            np.array_equal(self.y, other.y)
            and self.selected_terms == other.selected_terms
            and self.aws == other.aws
        )

    def __hash__(self):
        return hash((self.selected_terms, self.aws))


@dataclass(frozen=True)
class PsoConfig:
    swarm_size: int = 30
    iterations: int = 200
    inertia: float = 0.729
    cognitive_coeff: float = 1.49445
    social_coeff: float = 1.49445
    seed: int = 0
    k_max: int = 10
    v_max: float = 4.0

    def validate(self) -> "PsoConfig":
        if self.swarm_size < 2:
            raise ConfigError("swarm_size", f"must be >= 2, got {self.swarm_size}")
        if self.iterations < 1:
            raise ConfigError("iterations", f"must be >= 1, got {self.iterations}")
        if self.k_max < 1:
            raise ConfigError("k_max", f"must be >= 1, got {self.k_max}")
        if not 0 <= self.seed < 2**64:
            raise ConfigError("seed", "must be a 64-bit unsigned integer")
        if self.v_max <= 0:
            raise ConfigError("v_max", "must be positive")
        return self


def aws_score(w: WeightMatrix, y) -> float:
    """Summed weight of the selected columns."""
    bits = y.y if isinstance(y, SelectionVector) else np.asarray(y)
    if bits.shape != (w.shape[1],):
        raise DataError(f"selection has shape {bits.shape}, matrix has {w.shape[1]} columns")
    return float(w.column_sums()[bits.astype(bool)].sum())


def _top_k(sums: np.ndarray, k: int) -> np.ndarray:
    # stable sort on the negated sums keeps the lower index first among ties
    order = np.argsort(-sums, kind="stable")
    chosen = [j for j in order[:k] if sums[j] > 0]
    y = np.zeros(len(sums), dtype=np.int8)
    y[chosen] = 1
    return y


def select_terms_exact(w: WeightMatrix, k: int) -> SelectionVector:
    """Optimal selection: the k columns with largest positive sums."""
    if k < 1:
        raise ConfigError("k", f"must be >= 1, got {k}")
    return SelectionVector.from_bits(w, _top_k(w.column_sums(), k))


def _repair(bits: np.ndarray, k: int, drop_order: np.ndarray) -> None:
    """Unset the lowest-column-sum selected bits in place until at most k remain."""
    excess = int(bits.sum()) - k
    if excess <= 0:
        return
    for j in drop_order:
        if bits[j]:
            bits[j] = 0
            excess -= 1
            if excess == 0:
                return


def select_terms_pso(w: WeightMatrix, cfg: PsoConfig) -> SelectionVector:
    cfg.validate()
    n_dim = w.shape[1]
    if n_dim < 1:
        raise ConfigError("matrix", "needs at least one vocabulary column")
    k = min(cfg.k_max, n_dim)
    sums = w.column_sums()
    # ascending by sum, higher index first among ties so lower indices survive
    drop_order = np.lexsort((-np.arange(n_dim), sums))

    rngs = [np.random.default_rng(s) for s in np.random.SeedSequence(cfg.seed).spawn(cfg.swarm_size)]
    p_on = k / n_dim
    pos = np.array([(r.random(n_dim) < p_on).astype(np.int8) for r in rngs])
    vel = np.array([r.uniform(-cfg.v_max, cfg.v_max, n_dim) for r in rngs])
    for row in pos:
        _repair(row, k, drop_order)
    fit = pos @ sums

    pbest = pos.copy()
    pbest_fit = fit.copy()
    g = int(np.argmax(pbest_fit))
    gbest, gbest_fit = pbest[g].copy(), pbest_fit[g]

    for _ in range(cfg.iterations):
        for p, r in enumerate(rngs):
            r1, r2, u = r.random(n_dim), r.random(n_dim), r.random(n_dim)
            v = (
                cfg.inertia * vel[p]
                + cfg.cognitive_coeff * r1 * (pbest[p] - pos[p])
                + cfg.social_coeff * r2 * (gbest - pos[p])
            )
            vel[p] = np.clip(v, -cfg.v_max, cfg.v_max)
            pos[p] = (u < 1.0 / (1.0 + np.exp(-vel[p]))).astype(np.int8)
            _repair(pos[p], k, drop_order)
            f = float(pos[p] @ sums)
            if f > pbest_fit[p]:
                pbest[p] = pos[p]
                pbest_fit[p] = f
        # global best is updated once per iteration, scanning particles in index order
        g = int(np.argmax(pbest_fit))
        if pbest_fit[g] > gbest_fit:
            gbest, gbest_fit = pbest[g].copy(), pbest_fit[g]

    return SelectionVector.from_bits(w, gbest)


def selection_to_json(sel: SelectionVector, k: int, seed: int | None) -> str:
    return json.dumps(
        {"selected_terms": list(sel.selected_terms), "aws": sel.aws, "k": k, "seed": seed},
        indent=2,
    )


def read_selection(path: str | Path, w: WeightMatrix) -> SelectionVector:
    rec = json.loads(Path(path).read_text(encoding="utf-8"))
    terms = rec["selected_terms"]
    missing = [t for t in terms if t not in w.vocabulary]
    if missing:
        raise DataError(f"selected terms not in the weight matrix: {missing}")
    y = np.zeros(w.shape[1], dtype=np.int8)
    y[[w.vocabulary.index[t] for t in terms]] = 1
    return SelectionVector.from_bits(w, y)
