"""Spectral defaults loaded from ``configs/spectral_defaults.yml``."""

from __future__ import annotations

from functools import lru_cache
from pathlib import Path
from typing import Any, Dict

from core_runtime.config_loader import load_yaml_defaults

CONFIG_PATH = Path(__file__).resolve().parent / "configs" / "spectral_defaults.yml"

_BUILTIN_DEFAULTS: Dict[str, Any] = {
    "truncation": {
        "circle_modes": 128,
        "torus_wave_numbers": 64,
        "sphere_max_degree": 20,
    },
    "heat_kernel": {"min_time": 1.0e-4},
    "quadrature": {
        "periodic_points": 4096,
        "torus_points_per_axis": 256,
        "sphere_colatitude": 64,
        "sphere_longitude": 128,
    },
    "mixing_profile": {"lattice_points": 64, "torus_lattice_points": 16},
}


@lru_cache(maxsize=1)
def spectral_defaults() -> Dict[str, Any]:
    return load_yaml_defaults(CONFIG_PATH, _BUILTIN_DEFAULTS)


__all__ = ["CONFIG_PATH", "spectral_defaults"]
