"""Run-time limits and pipeline settings."""
from __future__ import annotations

import os
from dataclasses import dataclass, replace

ENV_MAX_CELLS = "TUBULAR_JSJ_MAX_CELLS"
ENV_MAX_CYCLES = "TUBULAR_JSJ_MAX_CYCLES"


@dataclass(frozen=True)
class Limits:
    """Resource caps. ``max_cells`` bounds developed balls and sphere sizes,
    ``max_cycles`` bounds cycle enumeration."""

    max_cells: int = 2_000_000
    max_cycles: int = 500_000

    @classmethod
    def from_env(cls, **overrides) -> "Limits":
        base = cls()
        if ENV_MAX_CELLS in os.environ:
            base = replace(base, max_cells=int(os.environ[ENV_MAX_CELLS]))
        if ENV_MAX_CYCLES in os.environ:
            base = replace(base, max_cycles=int(os.environ[ENV_MAX_CYCLES]))
        clean = {k: v for k, v in overrides.items() if v is not None}
        return replace(base, **clean)


@dataclass(frozen=True)
class PipelineConfig:
    """Settings for the full decomposition run.

    ``max_cycle_len`` of ``None`` means the theoretical cap F*M, clamped to
    ``default_len_clamp`` with a warning recorded in the report.
    """

    max_cycle_len: int | None = None
    default_len_clamp: int = 8
    threads: int = 1
    scan_all_domains: bool = False
    limits: Limits = Limits()
