"""Ensembles of independent Brownian paths with checkpointed μ_t values.

Paths are cut into fixed batches of ``paths_per_batch``; batches run on a
thread pool and are merged by batch index, so results do not depend on the
thread count or on completion order.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, List

import numpy as np

from core_simulation.brownian_simulator import BrownianSimulator, PathState, normalized_occupation
from core_simulation.defaults import simulation_defaults
from core_simulation.sim_config import SimConfig
from core_spectral.errors import SpectralLabError
from core_spectral.manifold import volume

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class PathTrace:
    """Checkpoint history of a single path."""

    path_id: int
    times: np.ndarray
    mu: np.ndarray
    occupation: np.ndarray
    positions: np.ndarray

    def observable(self, k: int) -> np.ndarray:
        return self.mu[:, k]


@dataclass(slots=True)
class EnsembleResult:
    """Checkpoint matrices of shape (checkpoints, paths, observables)."""

    times: np.ndarray
    checkpoint_steps: np.ndarray
    mu: np.ndarray
    occupation: np.ndarray
    positions: np.ndarray
    n_paths: int
    seed: int
    partial: bool = False
    notes: List[str] = field(default_factory=list)
    final_states: List[PathState] = field(default_factory=list)

    @property
    def final_time(self) -> float:
        return float(self.times[-1]) if self.times.size else 0.0

    def trace(self, path_id: int) -> PathTrace:
        if not 0 <= path_id < self.n_paths:
            raise SpectralLabError(f"Path {path_id} outside 0..{self.n_paths - 1}")
        return PathTrace(
            path_id=path_id,
            times=self.times,
            mu=self.mu[:, path_id, :],
            occupation=self.occupation[:, path_id, :],
            positions=self.positions[:, path_id, :],
        )

    def traces(self) -> List[PathTrace]:
        return [self.trace(path_id) for path_id in range(self.n_paths)]

    def as_dict(self) -> Dict[str, Any]:
        return {
            "times": self.times.tolist(),
            "n_paths": self.n_paths,
            "seed": self.seed,
            "partial": self.partial,
            "notes": list(self.notes),
            "mu": self.mu.tolist(),
        }


def _affordable_checkpoints(steps: np.ndarray, n_paths: int, budget: float) -> np.ndarray:
    return steps[steps.astype(np.float64) * n_paths <= budget]


def _run_batch(simulator: BrownianSimulator, path_ids: range, steps: np.ndarray):
    states = [simulator.initial_state(path_id) for path_id in path_ids]
    count = len(states)
    n_obs = simulator.config.observable_count
    width = states[0].position.shape[0]
    occupation = np.empty((steps.size, count, n_obs))
    positions = np.empty((steps.size, count, width))
    current = 0
    for row, target in enumerate(steps):
        simulator.advance_batch(states, int(target) - current)
        current = int(target)
        occupation[row] = np.stack([state.accumulators for state in states])
        positions[row] = np.stack([state.position for state in states])
    return occupation, positions, states


def run_ensemble(
    config: SimConfig,
    n_paths: int,
    threads: int = 1,
    step_budget: float | None = None,
) -> EnsembleResult:
    """Simulate ``n_paths`` paths and collect μ_t(f_k) at every checkpoint.

    When ``n_paths × steps`` passes the step budget, the run stops at the last
    affordable checkpoint and the result is flagged partial.
    """

    if n_paths < 1:
        raise SpectralLabError(f"An ensemble needs at least one path, got {n_paths}")
    budget = float(step_budget if step_budget is not None else simulation_defaults()["ensemble"]["step_budget"])
    all_steps = config.checkpoint_steps()
    steps = _affordable_checkpoints(all_steps, n_paths, budget)
    partial = steps.size < all_steps.size
    notes: List[str] = []
    if partial:
        reached = float(steps[-1] * config.h) if steps.size else 0.0
        notes.append(
            f"step budget {budget:.3g} exhausted: stopped at t={reached:g} of horizon {config.horizon:g}"
        )
        logger.warning("Ensemble truncated by step budget: %s", notes[-1])

    simulator = BrownianSimulator(config)
    batch = config.paths_per_batch
    batches = [range(start, min(start + batch, n_paths)) for start in range(0, n_paths, batch)]
    width = config.manifold.coordinate_count
    occupation = np.zeros((steps.size, n_paths, config.observable_count))
    positions = np.zeros((steps.size, n_paths, width))
    final_states: List[PathState] = []

    if steps.size:
        with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
            outputs = list(pool.map(lambda ids: _run_batch(simulator, ids, steps), batches))
        for ids, (batch_occupation, batch_positions, batch_states) in zip(batches, outputs):
            occupation[:, ids.start : ids.stop] = batch_occupation
            positions[:, ids.start : ids.stop] = batch_positions
            final_states.extend(batch_states)
    else:
        final_states = [simulator.initial_state(path_id) for path_id in range(n_paths)]

    times = steps * config.h
    mu = np.empty_like(occupation)
    for row, t in enumerate(times):
        mu[row] = normalized_occupation(occupation[row], float(t), simulator.rates)

    logger.info(
        "Ensemble on %s: %d paths, %d checkpoints up to t=%g (seed %d)",
        config.manifold.label(),
        n_paths,
        steps.size,
        float(times[-1]) if times.size else 0.0,
        config.seed,
    )
    return EnsembleResult(
        times=times.astype(np.float64),
        checkpoint_steps=steps,
        mu=mu,
        occupation=occupation,
        positions=positions,
        n_paths=n_paths,
        seed=config.seed,
        partial=partial,
        notes=notes,
        final_states=final_states,
    )


# ===========================================================
# Ergodic averages
# ===========================================================


@dataclass(slots=True)
class ErgodicReport:
    observable: int
    time: float
    target: float
    averages: np.ndarray
    l2_norm: float
    tolerance: float
    fraction_within: float

    def as_dict(self) -> Dict[str, Any]:
        return {
            "observable": self.observable,
            "time": self.time,
            "target": self.target,
            "averages": self.averages.tolist(),
            "l2_norm": self.l2_norm,
            "tolerance": self.tolerance,
            "fraction_within": self.fraction_within,
        }


def ergodic_average(result: EnsembleResult, config: SimConfig, k: int = 0, tolerance: float = 0.05) -> ErgodicReport:
    """(1/t) L_t(f) at the last checkpoint against m₀⁻¹ ∫ f dm.

    A path counts as within tolerance when |L_t/t − target| ≤ tolerance·‖f‖_{L²}.
    """

    if not result.times.size:
        raise SpectralLabError("Ergodic average needs at least one checkpoint")
    observable = config.observables[k]
    t = result.final_time
    averages = result.occupation[-1, :, k] / t
    target = observable.integral() / volume(config.manifold)
    norm = float(np.sqrt(np.dot(observable.coeffs, observable.coeffs)))
    within = np.abs(averages - target) <= tolerance * norm
    return ErgodicReport(
        observable=k,
        time=t,
        target=target,
        averages=averages,
        l2_norm=norm,
        tolerance=tolerance,
        fraction_within=float(np.mean(within)),
    )


__all__ = ["EnsembleResult", "ErgodicReport", "PathTrace", "ergodic_average", "run_ensemble"]
