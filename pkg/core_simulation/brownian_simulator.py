"""Brownian paths on the circle, flat tori and the unit sphere.

Circle and torus steps add N(0, h) increments per coordinate to an unwrapped
coordinate and reduce modulo the side lengths, which samples the exact
wrapped-Gaussian transition. Sphere steps push a tangent Gaussian of
covariance h·I₂ through the exponential map and renormalize.

Occupation integrals L_t(f) use the trapezoid rule. All running sums are
sequential cumulative sums, so splitting a run into segments at any step
reproduces the single-call result bit for bit.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Any, Dict, List, Sequence

import numpy as np

from core_simulation.rng_streams import generator_state, path_generator, restore_generator
from core_simulation.sim_config import MIN_NORMALIZATION_TIME, SimConfig
from core_spectral.eigenbasis import spectral_basis
from core_spectral.errors import HorizonExceededError, NormalizationUndefinedError, SpectralLabError
from core_spectral.manifold import ManifoldKind, ManifoldSpec, as_points

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class PathState:
    """A trajectory in flight. Single writer: only the simulator mutates it."""

    path_id: int
    step_index: int
    h: float
    position: np.ndarray
    unwrapped: np.ndarray
    accumulators: np.ndarray
    previous_values: np.ndarray
    rng: np.random.Generator

    @property
    def time(self) -> float:
        return self.step_index * self.h

    def snapshot(self) -> Dict[str, Any]:
        return {
            "path_id": self.path_id,
            "step_index": self.step_index,
            "h": self.h,
            "position": self.position.tolist(),
            "unwrapped": self.unwrapped.tolist(),
            "accumulators": self.accumulators.tolist(),
            "previous_values": self.previous_values.tolist(),
            "rng": generator_state(self.rng),
        }

    @classmethod
    def from_snapshot(cls, payload: Dict[str, Any]) -> "PathState":
        return cls(
            path_id=int(payload["path_id"]),
            step_index=int(payload["step_index"]),
            h=float(payload["h"]),
            position=np.asarray(payload["position"], dtype=np.float64),
            unwrapped=np.asarray(payload["unwrapped"], dtype=np.float64),
            accumulators=np.asarray(payload["accumulators"], dtype=np.float64),
            previous_values=np.asarray(payload["previous_values"], dtype=np.float64),
            rng=restore_generator(payload["rng"]),
        )


@dataclass(slots=True)
class PathRecord:
    """Per-step history of one path, used by distribution checks."""

    times: np.ndarray
    positions: np.ndarray
    unwrapped: np.ndarray


def normalized_occupation(occupation: np.ndarray | float, t: float, rates: np.ndarray | float) -> np.ndarray:
    """μ_t = (L_t(f) − t m₀⁻¹∫f dm) / √(2t log log t)."""

    if t < MIN_NORMALIZATION_TIME * (1.0 - 1e-12):
        raise NormalizationUndefinedError(
            f"μ_t needs t ≥ {MIN_NORMALIZATION_TIME:g} so that log log t > 0, got t={t:g}"
        )
    scale = math.sqrt(2.0 * t * math.log(math.log(t)))
    return (np.asarray(occupation) - t * np.asarray(rates)) / scale


def trapezoid_accumulate(occupation: np.ndarray, previous: np.ndarray, values: np.ndarray, h: float) -> np.ndarray:
    """Running L after each step: L += (h/2)(f(X_old) + f(X_new)), steps along axis 0."""

    ends = np.concatenate([np.asarray(previous)[None], values])
    increments = (h / 2.0) * (ends[:-1] + ends[1:])
    return np.cumsum(np.concatenate([np.asarray(occupation)[None], increments]), axis=0)[1:]


def _sphere_exponential(points: np.ndarray, tangent: np.ndarray) -> np.ndarray:
    radius = np.linalg.norm(tangent, axis=-1, keepdims=True)
    moved = np.cos(radius) * points + np.sinc(radius / math.pi) * tangent
    return moved / np.linalg.norm(moved, axis=-1, keepdims=True)


class BrownianSimulator:
    """Steps batches of paths for one :class:`SimConfig`."""

    def __init__(self, config: SimConfig):
        self.config = config
        self.manifold: ManifoldSpec = config.manifold
        self.coefficients = config.coefficient_matrix()
        self.rates = config.centering_rates()
        self.basis = spectral_basis(self.manifold, self.coefficients.shape[1] - 1)
        self._active_modes = [n for n in range(self.coefficients.shape[1]) if np.any(self.coefficients[:, n])]
        self._is_sphere = self.manifold.kind is ManifoldKind.SPHERE2
        self._sqrt_h = math.sqrt(config.h)

    # -------------------------------------------------------
    def observable_values(self, points: np.ndarray) -> np.ndarray:
        """f_k(x_p) with shape (P, K), summed mode by mode in a fixed order."""

        values = self.basis.evaluate(points)
        out = np.zeros((values.shape[0], self.coefficients.shape[0]))
        for n in self._active_modes:
            out += values[:, n : n + 1] * self.coefficients[:, n][None, :]
        return out

    def _draw_start(self, rng: np.random.Generator) -> np.ndarray:
        if self.config.start is not None:
            return self.config.start.copy()
        if self._is_sphere:
            vector = rng.standard_normal(3)
            return vector / np.linalg.norm(vector)
        return rng.uniform(0.0, 1.0, self.manifold.dimension) * np.asarray(self.manifold.lengths)

    def initial_state(self, path_id: int) -> PathState:
        rng = path_generator(self.config.seed, path_id)
        start = self._draw_start(rng)
        position = as_points(self.manifold, start)[0]
        return PathState(
            path_id=path_id,
            step_index=0,
            h=self.config.h,
            position=position,
            unwrapped=start.astype(np.float64),
            accumulators=np.zeros(self.config.observable_count),
            previous_values=self.observable_values(position[None, :])[0],
            rng=rng,
        )

    # -------------------------------------------------------
    def step(self, state: PathState) -> PathState:
        return self.advance(state, 1)

    def advance(self, state: PathState, steps: int) -> PathState:
        return self.advance_batch([state], steps)[0]

    def advance_batch(self, states: Sequence[PathState], steps: int, record: PathRecord | None = None) -> List[PathState]:
        """Advance paths that share a step index by ``steps`` steps, in place."""

        if not states or steps == 0:
            return list(states)
        if steps < 0:
            raise SpectralLabError(f"Cannot step backwards ({steps} steps)")
        index = states[0].step_index
        first_index = index
        if any(state.step_index != index for state in states):
            raise SpectralLabError("Batched paths must share a step index")
        if index + steps > self.config.horizon_steps:
            raise HorizonExceededError(
                f"Advancing to t={(index + steps) * self.config.h:g} passes the horizon {self.config.horizon:g}"
            )

        unwrapped = np.stack([state.unwrapped for state in states])
        position = np.stack([state.position for state in states])
        occupation = np.stack([state.accumulators for state in states])
        previous = np.stack([state.previous_values for state in states])
        block_steps = self.config.block_steps
        history: list[tuple[np.ndarray, np.ndarray]] = []

        remaining = steps
        while remaining:
            block = min(remaining, block_steps - index % block_steps)
            width = 3 if self._is_sphere else self.manifold.dimension
            noise = np.stack([state.rng.standard_normal((block, width)) for state in states], axis=1)
            noise *= self._sqrt_h

            if self._is_sphere:
                track = np.empty_like(noise)
                current = position
                for k in range(block):
                    tangent = noise[k] - np.sum(noise[k] * current, axis=-1, keepdims=True) * current
                    current = _sphere_exponential(current, tangent)
                    track[k] = current
                walk = track
                unwrapped = current
            else:
                walk = np.cumsum(np.concatenate([unwrapped[None], noise]), axis=0)[1:]
                unwrapped = walk[-1]
            positions = as_points(self.manifold, walk.reshape(-1, walk.shape[-1])).reshape(walk.shape)

            values = self.observable_values(positions.reshape(-1, positions.shape[-1])).reshape(
                block, len(states), -1
            )
            occupation = trapezoid_accumulate(occupation, previous, values, self.config.h)[-1]
            previous = values[-1]
            position = walk[-1] if self._is_sphere else positions[-1]
            if record is not None:
                history.append((positions, walk))
            index += block
            remaining -= block

        for row, state in enumerate(states):
            state.step_index = index
            state.position = position[row].copy()
            state.unwrapped = unwrapped[row].copy()
            state.accumulators = occupation[row].copy()
            state.previous_values = previous[row].copy()

        if record is not None:
            record.positions = np.concatenate([record.positions] + [p[:, 0] for p, _ in history])
            record.unwrapped = np.concatenate([record.unwrapped] + [w[:, 0] for _, w in history])
            stepped = np.arange(first_index + 1, first_index + steps + 1) * self.config.h
            record.times = np.concatenate([record.times, stepped])
        return list(states)

    def record_path(self, state: PathState, steps: int) -> PathRecord:
        """Advance one path and keep every intermediate position."""

        width = state.position.shape[0]
        record = PathRecord(times=np.zeros(0), positions=np.zeros((0, width)), unwrapped=np.zeros((0, width)))
        self.advance_batch([state], steps, record=record)
        return record

    # -------------------------------------------------------
    def mu(self, state: PathState) -> np.ndarray:
        """μ_t(f_k) for every observable."""

        return normalized_occupation(state.accumulators, state.time, self.rates)

    def mu_t(self, state: PathState, k: int) -> float:
        if not 0 <= k < self.config.observable_count:
            raise SpectralLabError(f"Observable index {k} outside 0..{self.config.observable_count - 1}")
        return float(normalized_occupation(state.accumulators[k], state.time, self.rates[k]))


def step(state: PathState, config: SimConfig) -> PathState:
    return BrownianSimulator(config).step(state)


def mu_t(state: PathState, k: int, config: SimConfig) -> float:
    return BrownianSimulator(config).mu_t(state, k)


__all__ = [
    "BrownianSimulator",
    "PathRecord",
    "PathState",
    "mu_t",
    "normalized_occupation",
    "step",
    "trapezoid_accumulate",
]
