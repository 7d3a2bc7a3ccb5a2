"""Run configuration shared by the CLI and the experiment scripts."""
from __future__ import annotations

import os
from dataclasses import asdict, dataclass
from pathlib import Path


@dataclass(frozen=True)
class RunConfig:
    max_ring: int = 8
    max_module: int = 8
    deg: int = 4
    workers: int = 1
    seed: int = 0
    sample: int | None = None
    theorems: tuple = ("all",)
    out: str | None = None
    checkpoint: str | None = None

    def __post_init__(self):
        for name in ("max_ring", "max_module", "deg", "workers"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.sample is not None and self.sample < 1:
            raise ValueError("sample must be positive")

    def fingerprint(self) -> dict:
        """Fields that determine the report contents (not where it is written)."""
        d = asdict(self)
        for k in ("out", "checkpoint", "workers"):
            d.pop(k)
        d["theorems"] = list(self.theorems)
        return d


def cache_dir() -> Path:
    return Path(os.environ.get("FACTORLAB_CACHE_DIR", ".factorlab-cache"))


def resolve_checkpoint(path: str | None) -> Path | None:
    """Relative checkpoint paths live under ``FACTORLAB_CACHE_DIR``."""
    if path is None:
        return None
    p = Path(path)
    return p if p.is_absolute() else cache_dir() / p
