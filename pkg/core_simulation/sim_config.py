"""Validated simulation parameters and the checkpoint schedule."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from core_green.spectral_function import SpectralFunction
from core_simulation.defaults import simulation_defaults
from core_simulation.rng_streams import validate_seed
from core_spectral.errors import ManifoldMismatchError, SpectralLabError
from core_spectral.manifold import ManifoldKind, ManifoldSpec, make_point, volume

MIN_NORMALIZATION_TIME = 3.0


@dataclass(frozen=True, slots=True, eq=False)
class SimConfig:
    """Everything a Brownian run depends on.

    ``start=None`` together with ``uniform_start=True`` draws each path's
    start point from the normalized volume measure using the path's own
    stream.
    """

    manifold: ManifoldSpec
    observables: Tuple[SpectralFunction, ...]
    horizon: float
    seed: int
    start: np.ndarray | None = None
    h: float = field(default_factory=lambda: float(simulation_defaults()["step"]["h"]))
    first_checkpoint: float = field(default_factory=lambda: float(simulation_defaults()["checkpoints"]["first"]))
    checkpoint_ratio: float = field(default_factory=lambda: float(simulation_defaults()["checkpoints"]["ratio"]))
    uniform_start: bool = False
    block_steps: int = field(default_factory=lambda: int(simulation_defaults()["ensemble"]["block_steps"]))
    paths_per_batch: int = field(default_factory=lambda: int(simulation_defaults()["ensemble"]["paths_per_batch"]))

    def __post_init__(self) -> None:
        step = simulation_defaults()["step"]
        object.__setattr__(self, "observables", tuple(self.observables))
        object.__setattr__(self, "seed", validate_seed(self.seed))

        if not self.h > 0:
            raise SpectralLabError(f"Step size must be positive, got {self.h}")
        max_h = float(step["sphere_max_h"] if self.manifold.kind is ManifoldKind.SPHERE2 else step["max_h"])
        if self.h > max_h:
            raise SpectralLabError(f"Step size {self.h} exceeds {max_h} on {self.manifold.label()}")
        if self.first_checkpoint < MIN_NORMALIZATION_TIME:
            raise SpectralLabError(f"First checkpoint must be ≥ {MIN_NORMALIZATION_TIME}, got {self.first_checkpoint}")
        if self.horizon < self.first_checkpoint:
            raise SpectralLabError(f"Horizon {self.horizon} precedes the first checkpoint {self.first_checkpoint}")
        if not 1.0 < self.checkpoint_ratio <= 2.0:
            raise SpectralLabError(f"Checkpoint ratio must lie in (1, 2], got {self.checkpoint_ratio}")
        if self.block_steps < 1 or self.paths_per_batch < 1:
            raise SpectralLabError("block_steps and paths_per_batch must be positive")
        for observable in self.observables:
            if observable.manifold != self.manifold:
                raise ManifoldMismatchError(
                    f"Observable on {observable.manifold.label()} for a run on {self.manifold.label()}"
                )

        if self.start is None:
            if not self.uniform_start:
                raise SpectralLabError("Give a start point or set uniform_start")
        else:
            object.__setattr__(self, "start", make_point(self.manifold, self.start))

    # -------------------------------------------------------
    @property
    def horizon_steps(self) -> int:
        return int(math.ceil(self.horizon / self.h - 1e-9))

    @property
    def observable_count(self) -> int:
        return len(self.observables)

    def coefficient_matrix(self) -> np.ndarray:
        """Observable coefficients padded to a common length, shape (K, size)."""

        size = max([f.size for f in self.observables] + [1])
        matrix = np.zeros((len(self.observables), size))
        for row, observable in enumerate(self.observables):
            matrix[row, : observable.size] = observable.coeffs
        return matrix

    def centering_rates(self) -> np.ndarray:
        """m₀⁻¹ ∫ f_k dm for every observable."""

        m0 = volume(self.manifold)
        return np.array([f.integral() / m0 for f in self.observables], dtype=np.float64)

    def checkpoint_steps(self) -> np.ndarray:
        """Step indices of t_c, t_c ρ, t_c ρ², ... rounded up to the grid, plus the horizon."""

        times = []
        t = self.first_checkpoint
        while t < self.horizon:
            times.append(t)
            t *= self.checkpoint_ratio
        steps = [int(math.ceil(time / self.h - 1e-9)) for time in times]
        steps.append(self.horizon_steps)
        return np.unique(np.minimum(np.asarray(steps, dtype=np.int64), self.horizon_steps))

    def as_dict(self) -> Dict[str, Any]:
        return {
            "manifold": self.manifold.to_json(),
            "observables": [f.to_json()["coeffs"] for f in self.observables],
            "horizon": self.horizon,
            "seed": self.seed,
            "start": None if self.start is None else self.start.tolist(),
            "h": self.h,
            "first_checkpoint": self.first_checkpoint,
            "checkpoint_ratio": self.checkpoint_ratio,
            "uniform_start": self.uniform_start,
            "block_steps": self.block_steps,
            "paths_per_batch": self.paths_per_batch,
        }


def mode_observables(manifold: ManifoldSpec, modes: Sequence[int]) -> Tuple[SpectralFunction, ...]:
    """Basis vectors φ_n for the given indices."""

    return tuple(SpectralFunction.basis_vector(manifold, n) for n in modes)


__all__ = ["MIN_NORMALIZATION_TIME", "SimConfig", "mode_observables"]
