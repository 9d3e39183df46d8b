"""Simulation defaults loaded from ``configs/simulation_defaults.yml``."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import Any, Dict

from core_runtime.config_loader import load_yaml_defaults

CONFIG_PATH = Path(__file__).resolve().parent / "configs" / "simulation_defaults.yml"

_BUILTIN_DEFAULTS: Dict[str, Any] = {
    "step": {"h": 0.01, "max_h": 0.1, "sphere_max_h": 0.01},
    "checkpoints": {"first": 3.0, "ratio": 1.05},
    "ensemble": {"block_steps": 4096, "paths_per_batch": 256, "step_budget": 2.0e11},
}


@lru_cache(maxsize=1)
def simulation_defaults() -> Dict[str, Any]:
    return load_yaml_defaults(CONFIG_PATH, _BUILTIN_DEFAULTS)


__all__ = ["CONFIG_PATH", "simulation_defaults"]
