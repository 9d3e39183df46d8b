"""Counter-based per-path random streams.

Path ``j`` of a run seeded with ``seed`` draws from Philox keyed by
``SeedSequence(seed, spawn_key=(j,))``. Streams depend only on
``(seed, j)``, never on scheduling, and their full state (key, counter and
buffer) serializes to plain JSON.
"""

from __future__ import annotations

from typing import Any, Dict

import numpy as np

from core_spectral.errors import SpectralLabError

MAX_SEED = 2**64 - 1


def validate_seed(seed: int) -> int:
    seed = int(seed)
    if not 0 <= seed <= MAX_SEED:
        raise SpectralLabError(f"Seeds are unsigned 64-bit integers, got {seed}")
    return seed


def path_seed_sequence(seed: int, path_id: int) -> np.random.SeedSequence:
    if path_id < 0:
        raise SpectralLabError(f"Path ids are nonnegative, got {path_id}")
    return np.random.SeedSequence(validate_seed(seed), spawn_key=(int(path_id),))


def path_generator(seed: int, path_id: int) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(path_seed_sequence(seed, path_id)))


def _to_json(value: Any) -> Any:
    if isinstance(value, np.ndarray):
        return [int(v) for v in value.tolist()]
    if isinstance(value, dict):
        return {key: _to_json(item) for key, item in value.items()}
    if isinstance(value, np.integer):
        return int(value)
    return value


def generator_state(generator: np.random.Generator) -> Dict[str, Any]:
    """JSON-safe copy of the Philox state including the counter."""

    return _to_json(generator.bit_generator.state)


def restore_generator(state: Dict[str, Any]) -> np.random.Generator:
    if state.get("bit_generator") != "Philox":
        raise SpectralLabError(f"Unsupported bit generator in snapshot: {state.get('bit_generator')!r}")
    inner = state["state"]
    restored = {
        "bit_generator": "Philox",
        "state": {
            "counter": np.asarray(inner["counter"], dtype=np.uint64),
            "key": np.asarray(inner["key"], dtype=np.uint64),
        },
        "buffer": np.asarray(state["buffer"], dtype=np.uint64),
        "buffer_pos": int(state["buffer_pos"]),
        "has_uint32": int(state["has_uint32"]),
        "uinteger": int(state["uinteger"]),
    }
    bit_generator = np.random.Philox()
    bit_generator.state = restored
    return np.random.Generator(bit_generator)


__all__ = [
    "MAX_SEED",
    "generator_state",
    "path_generator",
    "path_seed_sequence",
    "restore_generator",
    "validate_seed",
]
