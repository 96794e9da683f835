"""Run configurations for the scripts in ``scripts/``."""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass, field
from pathlib import Path

from .oracle import DEFAULT_ALLOWLIST


@dataclass(frozen=True)
class TableConfig:
    residues: tuple[int, ...] = (3, 5, 1)
    out_dir: Path = Path("results")
    formats: tuple[str, ...] = ("table", "json", "csv")


@dataclass(frozen=True)
class SweepConfig:
    primes: tuple[int, ...] = DEFAULT_ALLOWLIST
    groups: tuple[str, ...] = ("8", "4x2", "2x2x2")
    workers: int = 1
    out_dir: Path = Path("results")
    allowlist: tuple[int, ...] = field(default=DEFAULT_ALLOWLIST)


def with_overrides(cfg, **kw):
    """Copy of ``cfg`` with the non-None entries of ``kw`` replaced."""
    return dataclasses.replace(cfg, **{k: v for k, v in kw.items() if v is not None})
