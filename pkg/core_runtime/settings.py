"""Runtime settings for the lab's command line runs.

A lightweight holder that reads environment overrides for the output and
log locations, the worker thread count and the log level.
"""

from __future__ import annotations

import os
from pathlib import Path

TOOL_NAME = "lil-manifold-lab"
TOOL_VERSION = "1.0.0"


class Settings:
    """Container for environment-driven runtime options."""

    def __init__(self) -> None:
        self.tool_name: str = TOOL_NAME
        self.tool_version: str = os.getenv("LILM_TOOL_VERSION", TOOL_VERSION)
        self.out_dir: Path = Path(os.getenv("LILM_OUT_DIR", "data/runs"))
        self.log_dir: Path = Path(os.getenv("LILM_LOG_DIR", "data/logs"))
        self.threads: int = self._parse_threads(os.getenv("LILM_THREADS", "1"))
        self.log_level: str = os.getenv("LILM_LOG_LEVEL", "INFO").upper()

    @staticmethod
    def _parse_threads(raw_threads: str) -> int:
        try:
            threads = int(raw_threads)
        except ValueError:
            return 1
        return max(1, threads)


__all__ = ["Settings", "TOOL_NAME", "TOOL_VERSION"]
