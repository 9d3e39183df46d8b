"""Checkpoint CSV tables and JSON resume files for path states."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Dict, Iterator, List, Sequence

from core_runtime.artifact_writer import Provenance, write_csv_artifact, write_json_artifact
from core_simulation.brownian_simulator import PathState
from core_simulation.ensemble import EnsembleResult
from core_spectral.errors import SpectralLabError

SNAPSHOT_FORMAT = "path-state/1"


def checkpoint_header(n_observables: int, coordinate_count: int) -> List[str]:
    return (
        ["t", "path_id"]
        + [f"mu_f{k + 1}" for k in range(n_observables)]
        + [f"L_f{k + 1}" for k in range(n_observables)]
        + [f"x{i + 1}" for i in range(coordinate_count)]
    )


def checkpoint_rows(result: EnsembleResult) -> Iterator[List[Any]]:
    for row, t in enumerate(result.times):
        for path_id in range(result.n_paths):
            yield (
                [float(t), path_id]
                + [float(v) for v in result.mu[row, path_id]]
                + [float(v) for v in result.occupation[row, path_id]]
                + [float(v) for v in result.positions[row, path_id]]
            )


def write_checkpoint_csv(path: str | Path, result: EnsembleResult, provenance: Provenance) -> Path:
    header = checkpoint_header(result.mu.shape[2], result.positions.shape[2])
    return write_csv_artifact(path, header, checkpoint_rows(result), provenance)


def write_resume_file(path: str | Path, states: Sequence[PathState], provenance: Provenance) -> Path:
    payload = {"format": SNAPSHOT_FORMAT, "states": [state.snapshot() for state in states]}
    return write_json_artifact(path, payload, provenance)


def read_resume_file(path: str | Path) -> List[PathState]:
    with open(path, "r", encoding="utf-8") as handle:
        document: Dict[str, Any] = json.load(handle)
    if document.get("format") != SNAPSHOT_FORMAT:
        raise SpectralLabError(f"{path} is not a path-state snapshot (format {document.get('format')!r})")
    return [PathState.from_snapshot(entry) for entry in document["states"]]


__all__ = [
    "SNAPSHOT_FORMAT",
    "checkpoint_header",
    "checkpoint_rows",
    "read_resume_file",
    "write_checkpoint_csv",
    "write_resume_file",
]
