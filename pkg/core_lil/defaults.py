"""Harness thresholds loaded from ``configs/harness_thresholds.yml``."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import Any, Dict

from core_runtime.config_loader import load_yaml_defaults

CONFIG_PATH = Path(__file__).resolve().parent / "configs" / "harness_thresholds.yml"

_BUILTIN_DEFAULTS: Dict[str, Any] = {
    "cloud": {"inflation": 0.25, "angular_bins": 16, "radial_floor": 0.2},
    "limsup": {"band": [0.4, 1.4], "window_start": 100.0},
    "boundary": {"tolerance": 1.0e-12, "max_condition": 1.0e12},
    "uniform_bound": {"tolerance": 1.0e-10},
}


@lru_cache(maxsize=1)
def harness_thresholds() -> Dict[str, Any]:
    return load_yaml_defaults(CONFIG_PATH, _BUILTIN_DEFAULTS)


__all__ = ["CONFIG_PATH", "harness_thresholds"]
