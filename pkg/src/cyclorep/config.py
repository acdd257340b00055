"""Run configuration: defaults, an optional ``key = value`` file and CLI overrides."""

from __future__ import annotations

import configparser
import os
from dataclasses import dataclass, replace

CONFIG_ENV = "CYCLOREP_CONFIG"
FORMATS = ("json", "csv", "text")


@dataclass(frozen=True)
class RunConfig:
    precision: int = 50
    tol: float = 1e-10
    memory_cap: int = 1 << 31
    workers: int = os.cpu_count() or 1
    format: str = "text"

    def __post_init__(self) -> None:
        for name in ("precision", "tol", "memory_cap", "workers"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive, got {getattr(self, name)!r}")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {', '.join(FORMATS)}, got {self.format!r}")

    def updated(self, **overrides) -> "RunConfig":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})


_CASTS = {"precision": int, "tol": float, "memory_cap": int, "workers": int, "format": str}


def parse_config(text: str) -> RunConfig:
    """Parse ``key = value`` lines; ``#`` starts a comment, unknown keys are errors."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#",))
    cp.read_string("[run]\n" + text)
    values = {}
    for key, raw in cp["run"].items():
        key = key.replace("-", "_")
        if key not in _CASTS:
            raise ValueError(f"unknown config key {key!r}")
        values[key] = _CASTS[key](raw)
    return RunConfig(**values)


def load_config(path: str | None = None) -> RunConfig:
    """Config from ``path``, else from the file named by ``$CYCLOREP_CONFIG``, else defaults."""
    path = path or os.environ.get(CONFIG_ENV)
    if not path:
        return RunConfig()
    with open(path, encoding="utf-8") as fh:
        return parse_config(fh.read())
