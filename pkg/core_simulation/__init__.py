"""Brownian path simulation, occupation functionals and ensembles."""

from core_simulation.brownian_simulator import (
    BrownianSimulator,
    PathRecord,
    PathState,
    mu_t,
    normalized_occupation,
    step,
    trapezoid_accumulate,
)
from core_simulation.checkpoint_io import read_resume_file, write_checkpoint_csv, write_resume_file
from core_simulation.ensemble import EnsembleResult, ErgodicReport, PathTrace, ergodic_average, run_ensemble
from core_simulation.rng_streams import generator_state, path_generator, restore_generator
from core_simulation.sim_config import MIN_NORMALIZATION_TIME, SimConfig, mode_observables

__all__ = [
    "BrownianSimulator",
    "EnsembleResult",
    "ErgodicReport",
    "MIN_NORMALIZATION_TIME",
    "PathRecord",
    "PathState",
    "PathTrace",
    "SimConfig",
    "ergodic_average",
    "generator_state",
    "mode_observables",
    "mu_t",
    "normalized_occupation",
    "path_generator",
    "read_resume_file",
    "restore_generator",
    "run_ensemble",
    "step",
    "trapezoid_accumulate",
    "write_checkpoint_csv",
    "write_resume_file",
]
