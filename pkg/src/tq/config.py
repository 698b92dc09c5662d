"""Run configuration shared by the CLI and the experiment scripts."""

from __future__ import annotations

import os
from contextlib import contextmanager
from dataclasses import dataclass, field

from .quiver import DEFAULT_PATH_CAP


@dataclass
class PipelineConfig:
    path_cap: int = DEFAULT_PATH_CAP
    saturation_method: str = "primes"  # or "generators"
    exhaustive_very_ample: bool = False
    search_bound: int = 2
    reorder: bool = False

    @classmethod
    def from_env(cls, **overrides) -> "PipelineConfig":
        cfg = cls(**overrides)
        raw = os.environ.get("TQ_PATH_CAP")
        if raw and "path_cap" not in overrides:
            cfg.path_cap = int(raw)
        return cfg

    @contextmanager
    def applied(self):
        """Export the path cap so every path enumeration sees it; restore it on exit."""
        old = os.environ.get("TQ_PATH_CAP")
        os.environ["TQ_PATH_CAP"] = str(self.path_cap)
        try:
            yield self
        finally:
            if old is None:
                os.environ.pop("TQ_PATH_CAP", None)
            else:
                os.environ["TQ_PATH_CAP"] = old


@dataclass
class ExperimentConfig:
    """Inputs for a scripted run over catalog fixtures."""

    names: list = field(default_factory=lambda: [
        "paper:f1-list", "paper:f2-list", "paper:p1-o2", "paper:p1-fine", "paper:threefold-list",
    ])
    pipeline: PipelineConfig = field(default_factory=PipelineConfig)
    use_listed_order: bool = True
