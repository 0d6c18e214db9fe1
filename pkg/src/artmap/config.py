"""Pipeline configuration: one flat record with every stage's parameters."""

from __future__ import annotations

import sys
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any, Mapping, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import ConfigError
from .metromap import DIVERSITY_SIGNS, EaConfig
from .selection import PsoConfig


@dataclass(frozen=True)
class PipelineConfig:
    # files
    corpus: Optional[str] = None
    explore_corpus: Optional[str] = None
    workdir: str = "artmap-out"
    stopwords: Optional[str] = None
    stoplist: Optional[str] = None
    # term selection
    k: int = 10
    seed: int = 42
    swarm_size: int = 30
    iterations: int = 200
    inertia: float = 0.729
    cognitive_coeff: float = 1.49445
    social_coeff: float = 1.49445
    # rule mining; max_rule_len of None means k
    min_support: float = 0.05
    min_confidence: float = 0.5
    max_rule_len: Optional[int] = None
    # term graph: "confidence" keeps one direction of each antiparallel rule pair
    orient: str = "confidence"
    # metro map
    tau: int = 10
    max_lines: int = 10
    weight: float = 0.5
    population: int = 100
    generations: int = 300
    crossover_rate: float = 0.8
    mutation_rate: float = 0.2
    diversity_sign: str = "paper"
    path_limit: int = 10_000
    # exploration
    threshold: float = 0.30

    def validate(self) -> "PipelineConfig":
        if not 0 < self.min_support <= 1:
            raise ConfigError("min_support", f"must be in (0, 1], got {self.min_support}")
        if not 0 < self.min_confidence <= 1:
            raise ConfigError("min_confidence", f"must be in (0, 1], got {self.min_confidence}")
        if self.max_rule_len is not None and self.max_rule_len < 2:
            raise ConfigError("max_rule_len", f"must be >= 2, got {self.max_rule_len}")
        if not 0 < self.threshold <= 1:
            raise ConfigError("threshold", f"must be in (0, 1], got {self.threshold}")
        if self.orient not in ("confidence", "none"):
            raise ConfigError("orient", f"must be 'confidence' or 'none', got {self.orient!r}")
        if self.diversity_sign not in DIVERSITY_SIGNS:
            raise ConfigError("diversity_sign", f"must be one of {DIVERSITY_SIGNS}")
        self.pso_config().validate()
        self.ea_config().validate()
        return self

    @property
    def rule_len(self) -> int:
        return self.max_rule_len if self.max_rule_len is not None else max(self.k, 2)

    def pso_config(self) -> PsoConfig:
        return PsoConfig(
            swarm_size=self.swarm_size,
            iterations=self.iterations,
            inertia=self.inertia,
            cognitive_coeff=self.cognitive_coeff,
            social_coeff=self.social_coeff,
            seed=self.seed,
            k_max=self.k,
        )

    def ea_config(self) -> EaConfig:
        return EaConfig(
            population_size=self.population,
            generations=self.generations,
            crossover_rate=self.crossover_rate,
            mutation_rate=self.mutation_rate,
            seed=self.seed,
            tau=self.tau,
            l_max=self.max_lines,
            weight_w=self.weight,
            diversity_sign=self.diversity_sign,
            path_limit=self.path_limit,
        )

    @classmethod
    def from_mapping(cls, data: Mapping[str, Any], base: "PipelineConfig | None" = None) -> "PipelineConfig":
        types = {f.name: f.type for f in fields(cls)}
        updates = {}
        for key, value in data.items():
            name = key.replace("-", "_")
            if name not in types:
                raise ConfigError(key, "unknown configuration key")
            updates[name] = _coerce(name, types[name], value)
        return replace(base or cls(), **updates)

    @classmethod
    def from_file(cls, path: str | Path) -> "PipelineConfig":
        with open(path, "rb") as fh:
            try:
                data = tomllib.load(fh)
            except tomllib.TOMLDecodeError as exc:
                raise ConfigError(str(path), f"invalid TOML: {exc}") from None
        return cls.from_mapping(data)

    def to_toml(self) -> str:
        lines = []
        for f in fields(self):
            v = getattr(self, f.name)
            if v is None:
                lines.append(f"# {f.name} unset")
            elif isinstance(v, str):
                lines.append(f'{f.name} = "{_toml_escape(v)}"')
            else:
                lines.append(f"{f.name} = {v!r}")
        return "\n".join(lines) + "\n"


def _toml_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


def _coerce(name: str, annotation: str, value: Any) -> Any:
    if value is None:
        if "Optional" not in annotation:
            raise ConfigError(name, "may not be null")
        return None
    if "int" in annotation:
        if isinstance(value, bool) or not isinstance(value, int):
            raise ConfigError(name, f"expected an integer, got {value!r}")
        return value
    if "float" in annotation:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigError(name, f"expected a number, got {value!r}")
        return float(value)
    if not isinstance(value, str):
        raise ConfigError(name, f"expected a string, got {value!r}")
    return value
