"""Run configuration: defaults, key=value files and the environment."""

import os
from dataclasses import dataclass, replace

from .errors import DomainError

ENV_VAR = "P6TAU_CONFIG"


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = 1e-8
    max_terms: int = 64
    output_format: str = "json"
    seed: int = 0

    def __post_init__(self):
        if not 0 < self.tolerance <= 1e-2:
            raise DomainError(f"tolerance must lie in (0, 1e-2], got {self.tolerance}")
        if not 16 <= self.max_terms <= 256:
            raise DomainError(f"max_terms must lie in [16, 256], got {self.max_terms}")
        if self.output_format not in ("csv", "json"):
            raise DomainError(f"output_format must be csv or json, got {self.output_format!r}")

    def updated(self, **overrides):
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


_CASTS = {"tolerance": float, "max_terms": int, "output_format": str, "seed": int}


def parse_config(text):
    """Parse ``key = value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"config line {lineno}: expected key=value, got {raw!r}")
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _CASTS:
            raise DomainError(f"config line {lineno}: unknown key {key!r}")
        try:
            values[key] = _CASTS[key](value)
        except ValueError as exc:
            raise DomainError(f"config line {lineno}: bad value for {key}: {value!r}") from exc
    return values


def load_config(path=None, **overrides):
    """Defaults, then the file at ``path`` (or $P6TAU_CONFIG), then overrides."""
    path = path or os.environ.get(ENV_VAR)
    values = {}
    if path:
        with open(path, encoding="utf-8") as fh:
            values = parse_config(fh.read())
    return RunConfig(**values).updated(**overrides)
