"""Byte-reproducible CSV/JSON artifacts written atomically.

Artifacts embed their provenance (tool version, config hash, seed) and
nothing time-dependent, so re-running a command with the same triple
reproduces every file exactly.
"""

from __future__ import annotations

import csv
import hashlib
import io
import json
import os
import tempfile
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence


@dataclass(frozen=True, slots=True)
class Provenance:
    tool: str
    tool_version: str
    config_hash: str
    seed: int | None

    def as_dict(self) -> dict[str, Any]:
        return asdict(self)


def config_hash(config: Mapping[str, Any]) -> str:
    """SHA-256 of the canonical JSON form of ``config``."""

    canonical = json.dumps(config, sort_keys=True, separators=(",", ":"), default=str)
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def _atomic_write(path: Path, text: str) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp_name = tempfile.mkstemp(prefix=f".{path.name}.", suffix=".tmp", dir=path.parent)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp_name, path)
    except BaseException:
        if os.path.exists(tmp_name):
            os.unlink(tmp_name)
        raise
    return path


def _format_cell(value: Any) -> Any:
    if isinstance(value, float):
        return repr(value)
    return value


def write_csv_artifact(
    path: str | Path,
    header: Sequence[str],
    rows: Iterable[Sequence[Any]],
    provenance: Provenance,
) -> Path:
    """Write a CSV whose leading ``#`` lines carry the provenance."""

    buffer = io.StringIO()
    for key, value in provenance.as_dict().items():
        buffer.write(f"# {key}={value}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(list(header))
    for row in rows:
        writer.writerow([_format_cell(value) for value in row])
    return _atomic_write(Path(path), buffer.getvalue())


def write_json_artifact(path: str | Path, payload: Mapping[str, Any], provenance: Provenance) -> Path:
    document = {"provenance": provenance.as_dict(), **payload}
    text = json.dumps(document, indent=2, sort_keys=True, allow_nan=True, default=_json_default) + "\n"
    return _atomic_write(Path(path), text)


def _json_default(value: Any) -> Any:
    tolist = getattr(value, "tolist", None)
    if callable(tolist):
        return tolist()
    as_dict = getattr(value, "as_dict", None)
    if callable(as_dict):
        return as_dict()
    raise TypeError(f"Object of type {type(value).__name__} is not JSON serializable")


__all__ = ["Provenance", "config_hash", "write_csv_artifact", "write_json_artifact"]
