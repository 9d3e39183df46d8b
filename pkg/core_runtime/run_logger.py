"""
Run Logger
----------
JSON-lines event ledger for command line runs.

Every entry carries a UTC timestamp, the emitting module, a category and a
payload. Entries are mirrored to stdlib ``logging`` so console output and the
ledger agree. The ledger lives beside, never inside, result artifacts.
"""

from __future__ import annotations

import datetime
import json
import logging
from pathlib import Path
from typing import Any, Dict

from core_runtime.settings import Settings


class RunLogger:
    def __init__(self, name: str, log_dir: str | Path | None = None):
        self.name = name
        self.log_dir = Path(log_dir) if log_dir is not None else Settings().log_dir
        self.log_path = self.log_dir / f"run_{name}_log.jsonl"
        self._logger = logging.getLogger(f"lilm.{name}")

    def log(self, data: Dict[str, Any], category: str = "general") -> None:
        entry = {
            "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat(),
            "module": self.name,
            "category": category,
            "data": data,
        }
        self._append_json(self.log_path, entry)
        self._logger.info("%s | %s", category, json.dumps(data, sort_keys=True, default=str))

    def run_log(self, run_data: Dict[str, Any]) -> None:
        self.log(run_data, category="run")

    def check_log(self, check_data: Dict[str, Any]) -> None:
        self.log(check_data, category="check")

    def artifact_log(self, artifact_data: Dict[str, Any]) -> None:
        self.log(artifact_data, category="artifact")

    def _append_json(self, path: Path, data: Dict[str, Any]) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "a", encoding="utf-8") as file:
            file.write(json.dumps(data, default=str) + "\n")


def get_run_logger(module_name: str, log_dir: str | Path | None = None) -> RunLogger:
    return RunLogger(module_name, log_dir=log_dir)


__all__ = ["RunLogger", "get_run_logger"]
