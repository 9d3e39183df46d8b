"""YAML defaults with built-in fallbacks."""

from __future__ import annotations

import copy
import logging
from pathlib import Path
from typing import Any, Dict, Mapping

import yaml

logger = logging.getLogger(__name__)


def _merge(base: Dict[str, Any], override: Mapping[str, Any]) -> Dict[str, Any]:
    merged = copy.deepcopy(base)
    for key, value in override.items():
        if isinstance(value, Mapping) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_yaml_defaults(config_path: str | Path, defaults: Mapping[str, Any]) -> Dict[str, Any]:
    """Load a YAML file and overlay it on ``defaults``.

    A missing or empty file yields a copy of ``defaults``; keys present in
    the file win over the built-in values.
    """

    path = Path(config_path)
    try:
        with open(path, "r", encoding="utf-8") as config_file:
            payload = yaml.safe_load(config_file) or {}
    except FileNotFoundError:
        logger.warning("Config file not found: %s, using defaults", path)
        return copy.deepcopy(dict(defaults))

    if not isinstance(payload, Mapping):
        logger.warning("Config file %s is not a mapping, using defaults", path)
        return copy.deepcopy(dict(defaults))
    return _merge(dict(defaults), payload)


__all__ = ["load_yaml_defaults"]
