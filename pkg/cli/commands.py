"""Subcommand bodies: thin wrappers that turn validated configs into artifacts."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List

import numpy as np

from cli.run_config import (
    ChaseConfig,
    CharacterizeConfig,
    ClusterConfig,
    CommandConfig,
    GreenConfig,
    HeatKernelConfig,
    LilConfig,
    SimulationConfig,
    SpectraConfig,
)
from core_characterization.characterization_checker import CandidateDensity, ball_equivalence_check, check
from core_green.green_kernel import KernelEvaluation, kernel_g_alpha_spectral, kernel_g_alpha_timeint
from core_green.green_operators import semigroup_check
from core_green.spectral_function import SpectralFunction
from core_lil.cluster_cloud import cloud_header, cluster_cloud
from core_lil.ellipsoid import ellipsoid_from
from core_lil.observable_basis import make_basis
from core_lil.running_limsup import centered_sigma, running_limsup, uniform_limsup_table
from core_lil.target_chase import chase_target
from core_runtime.artifact_writer import Provenance, write_csv_artifact, write_json_artifact
from core_runtime.run_logger import RunLogger
from core_simulation.checkpoint_io import write_checkpoint_csv, write_resume_file
from core_simulation.ensemble import EnsembleResult, ergodic_average, run_ensemble
from core_simulation.sim_config import SimConfig
from core_spectral.eigenbasis import basis_for
from core_spectral.errors import DiagonalKernelError, RunConfigError
from core_spectral.heat_kernel import heat_kernel, mixing_decay_profile
from core_spectral.manifold import ManifoldKind, ManifoldSpec, make_point

logger = logging.getLogger(__name__)


@dataclass(slots=True)
class RunContext:
    out_dir: Path
    threads: int
    provenance: Provenance
    run_logger: RunLogger
    base_dir: Path = field(default_factory=Path.cwd)

    def path(self, name: str) -> Path:
        return self.out_dir / name


@dataclass(slots=True)
class CommandOutcome:
    ok: bool
    artifacts: List[Path] = field(default_factory=list)
    summary: Dict[str, Any] = field(default_factory=dict)


def _origin(manifold: ManifoldSpec) -> np.ndarray:
    if manifold.kind is ManifoldKind.SPHERE2:
        return np.array([0.0, 0.0, 1.0])
    return np.zeros(manifold.dimension)


def _random_points(manifold: ManifoldSpec, count: int, rng: np.random.Generator) -> np.ndarray:
    if manifold.kind is ManifoldKind.SPHERE2:
        vectors = rng.standard_normal((count, 3))
        return vectors / np.linalg.norm(vectors, axis=1, keepdims=True)
    return rng.uniform(0.0, 1.0, (count, manifold.dimension)) * np.asarray(manifold.lengths)


def _config_rng(config: CommandConfig) -> np.random.Generator:
    return np.random.Generator(np.random.Philox(config.seed))


# ===========================================================
# Spectral commands
# ===========================================================


def cmd_spectra(config: SpectraConfig, ctx: RunContext) -> CommandOutcome:
    basis = basis_for(config.manifold_spec(), config.truncation())
    rows = [(n, float(lam), label) for n, lam, label in basis.eigenpair_rows()]
    artifact = write_csv_artifact(ctx.path("spectra.csv"), ["n", "lambda", "label"], rows, ctx.provenance)
    return CommandOutcome(ok=True, artifacts=[artifact], summary={"rows": len(rows)})


def cmd_heat_kernel(config: HeatKernelConfig, ctx: RunContext) -> CommandOutcome:
    manifold = config.manifold_spec()
    trunc = config.truncation()
    x = make_point(manifold, config.x) if config.x is not None else _origin(manifold)
    y = make_point(manifold, config.y) if config.y is not None else _origin(manifold)
    rows = []
    for t in config.times:
        value = heat_kernel(manifold, t, x, y, trunc)
        rows.append((float(t), value.value, value.truncation_error))
    artifacts = [
        write_csv_artifact(ctx.path("heat_kernel.csv"), ["t", "value", "truncation_error"], rows, ctx.provenance)
    ]
    if config.profile_times:
        profile = mixing_decay_profile(manifold, trunc, config.profile_times)
        artifacts.append(write_json_artifact(ctx.path("mixing_profile.json"), profile.as_dict(), ctx.provenance))
    return CommandOutcome(ok=True, artifacts=artifacts, summary={"rows": len(rows)})


def cmd_green(config: GreenConfig, ctx: RunContext) -> CommandOutcome:
    manifold = config.manifold_spec()
    trunc = config.truncation()
    rng = _config_rng(config)
    pairs: List[tuple[np.ndarray, np.ndarray]] = []
    if config.x is not None and config.y is not None:
        pairs.append((make_point(manifold, config.x), make_point(manifold, config.y)))
    if config.random_pairs:
        xs = _random_points(manifold, config.random_pairs, rng)
        ys = _random_points(manifold, config.random_pairs, rng)
        pairs.extend(zip(xs, ys))

    width = manifold.coordinate_count
    header = (
        ["pair"]
        + [f"x{i + 1}" for i in range(width)]
        + [f"y{i + 1}" for i in range(width)]
        + ["spectral", "timeint", "difference", "on_diagonal", "truncation_dependent", "label"]
    )
    rows = []
    mismatches = 0
    divergent = 0
    for index, (x, y) in enumerate(pairs):
        spectral = timeint = None
        on_diagonal = truncation_dependent = False
        if config.route in ("spectral", "both"):
            spectral = kernel_g_alpha_spectral(manifold, config.alpha, x, y, trunc)
            on_diagonal, truncation_dependent = spectral.on_diagonal, spectral.truncation_dependent
        if config.route == "timeint" or (config.route == "both" and not truncation_dependent):
            try:
                timeint = kernel_g_alpha_timeint(manifold, config.alpha, x, y, trunc)
                on_diagonal = timeint.on_diagonal
            except DiagonalKernelError:
                on_diagonal = truncation_dependent = True
        divergent += int(truncation_dependent)
        difference = None
        if spectral is not None and timeint is not None:
            difference = abs(spectral.value - timeint.value)
            if difference > config.route_tolerance * max(1.0, abs(timeint.value)):
                mismatches += 1
        rows.append(
            [index]
            + [float(v) for v in x]
            + [float(v) for v in y]
            + [
                spectral.value if spectral else "",
                timeint.value if timeint else "",
                difference if difference is not None else "",
                int(on_diagonal),
                int(truncation_dependent),
                KernelEvaluation.label_for(float(config.alpha)),
            ]
        )
    artifacts = [write_csv_artifact(ctx.path("green.csv"), header, rows, ctx.provenance)]

    checks: Dict[str, Any] = {
        "route_mismatches": mismatches,
        "route_tolerance": config.route_tolerance,
        "divergent_diagonal_pairs": divergent,
    }
    ok = mismatches == 0
    if config.verify_semigroup:
        coeffs = np.concatenate(([0.0], rng.standard_normal(config.semigroup_modes)))
        report = semigroup_check(config.alpha, config.beta, SpectralFunction(manifold, coeffs))
        checks["semigroup"] = report.as_dict()
        ok = ok and report.passed
    artifacts.append(write_json_artifact(ctx.path("green_checks.json"), checks, ctx.provenance))
    if mismatches:
        logger.warning("Kernel routes disagree on %d of %d pairs", mismatches, len(pairs))
    if divergent:
        logger.info("Skipped the time-integral route on %d divergent diagonal pairs", divergent)
    return CommandOutcome(ok=ok, artifacts=artifacts, summary=checks)


# ===========================================================
# Simulation commands
# ===========================================================


def _sim_config(config: SimulationConfig, observables: List[SpectralFunction], horizon: float | None = None) -> SimConfig:
    manifold = config.manifold_spec()
    start = None
    if not config.uniform_start:
        start = make_point(manifold, config.start) if config.start is not None else _origin(manifold)
    return SimConfig(
        manifold=manifold,
        observables=tuple(observables),
        horizon=horizon if horizon is not None else config.horizon,
        seed=config.seed,
        start=start,
        h=config.h,
        first_checkpoint=config.first_checkpoint,
        checkpoint_ratio=config.checkpoint_ratio,
        uniform_start=config.uniform_start,
    )


def _ensemble(config: SimulationConfig, sim: SimConfig, ctx: RunContext) -> EnsembleResult:
    result = run_ensemble(sim, config.n_paths, threads=ctx.threads, step_budget=config.step_budget)
    ctx.run_logger.run_log(
        {"paths": config.n_paths, "checkpoints": int(result.times.size), "partial": result.partial}
    )
    return result


def cmd_simulate(config: SimulationConfig, ctx: RunContext) -> CommandOutcome:
    sim = _sim_config(config, config.observable_functions())
    result = _ensemble(config, sim, ctx)
    artifacts = [write_checkpoint_csv(ctx.path("simulate_checkpoints.csv"), result, ctx.provenance)]
    if config.resume_out:
        artifacts.append(write_resume_file(ctx.path("simulate_resume.json"), result.final_states, ctx.provenance))
    summary: Dict[str, Any] = {"partial": result.partial, "notes": result.notes, "final_time": result.final_time}
    if result.times.size:
        summary["ergodic"] = [
            ergodic_average(result, sim, k).as_dict() for k in range(sim.observable_count)
        ]
        summary["final_mu_mean"] = result.mu[-1].mean(axis=0).tolist()
    artifacts.append(write_json_artifact(ctx.path("simulate_summary.json"), summary, ctx.provenance))
    return CommandOutcome(ok=not result.partial, artifacts=artifacts, summary=summary)


def cmd_lil(config: LilConfig, ctx: RunContext) -> CommandOutcome:
    observables = config.observable_functions()
    sim = _sim_config(config, observables)
    result = _ensemble(config, sim, ctx)

    rows = []
    ratios: List[float | None] = []
    uniform_rows = []
    for trace in result.traces():
        table = running_limsup(trace.times, trace.mu[:, 0], observables[0], config.window_start)
        rows.extend([trace.path_id, t, m, "" if r is None else r] for t, m, r in table.rows())
        ratios.append(table.final_ratio)
        uniform = uniform_limsup_table(trace.times, trace.mu, observables, config.window_start)
        uniform_rows.append({"path_id": trace.path_id, "observables": uniform.rows()})

    low, high = config.band
    in_band = [r is not None and low <= r <= high for r in ratios]
    fraction = float(np.mean(in_band)) if in_band else 0.0
    summary = {
        "sigma": centered_sigma(observables[0]),
        "final_ratios": ratios,
        "band": [low, high],
        "fraction_in_band": fraction,
        "uniform": uniform_rows,
        "partial": result.partial,
    }
    artifacts = [
        write_csv_artifact(ctx.path("lil_running_max.csv"), ["path_id", "T", "running_max", "ratio"], rows, ctx.provenance),
        write_json_artifact(ctx.path("lil_summary.json"), summary, ctx.provenance),
    ]
    ok = not result.partial and (not config.require_band or fraction >= config.band_fraction)
    return CommandOutcome(ok=ok, artifacts=artifacts, summary=summary)


def cmd_cluster(config: ClusterConfig, ctx: RunContext) -> CommandOutcome:
    manifold = config.manifold_spec()
    basis = make_basis(manifold, config.n, config.truncation() if config.modes is not None else None)
    ellipsoid = ellipsoid_from(basis.functions, manifold)
    sim = _sim_config(config, list(basis.functions))
    result = _ensemble(config, sim, ctx)

    rows = []
    summaries = []
    for trace in result.traces():
        report = cluster_cloud(
            trace.times,
            trace.mu,
            ellipsoid,
            t_min=config.t_min,
            inflation=config.inflation,
            angular_bins=config.angular_bins,
            radial_floor=config.radial_floor,
        )
        rows.extend([trace.path_id] + row for row in report.rows())
        summaries.append({"path_id": trace.path_id, **report.summary()})

    contained = float(np.mean([s["all_contained"] for s in summaries])) if summaries else 0.0
    summary = {"paths": summaries, "fraction_contained": contained, "partial": result.partial}
    artifacts = [
        write_csv_artifact(ctx.path("cluster_cloud.csv"), ["path_id"] + cloud_header(config.n), rows, ctx.provenance),
        write_json_artifact(ctx.path("cluster_summary.json"), summary, ctx.provenance),
    ]
    ok = not result.partial and (not config.require_containment or contained >= config.containment_fraction)
    return CommandOutcome(ok=ok, artifacts=artifacts, summary=summary)


def cmd_chase(config: ChaseConfig, ctx: RunContext) -> CommandOutcome:
    manifold = config.manifold_spec()
    n = len(config.target)
    basis = make_basis(manifold, n, config.truncation() if config.modes is not None else None)
    ellipsoid = ellipsoid_from(basis.functions, manifold)
    sim = _sim_config(config, list(basis.functions), horizon=config.budget)
    result = _ensemble(config, sim, ctx)

    reports = []
    for trace in result.traces():
        chase = chase_target(trace.times, trace.mu, config.target, ellipsoid, config.eps, config.budget)
        reports.append({"path_id": trace.path_id, **chase.as_dict()})
    successes = float(np.mean([r["success"] for r in reports])) if reports else 0.0
    summary = {"results": reports, "success_fraction": successes, "partial": result.partial}
    artifacts = [write_json_artifact(ctx.path("chase_report.json"), summary, ctx.provenance)]
    ok = not result.partial and (not config.require_success or successes >= config.success_fraction)
    return CommandOutcome(ok=ok, artifacts=artifacts, summary=summary)


def cmd_characterize(config: CharacterizeConfig, ctx: RunContext) -> CommandOutcome:
    manifold = config.manifold_spec()
    try:
        g = config.density_function(ctx.base_dir)
    except (OSError, json.JSONDecodeError, KeyError) as exc:
        raise RunConfigError(f"Cannot load density: {exc}") from exc
    density = CandidateDensity(g)
    report = check(density, manifold)
    payload: Dict[str, Any] = {"density": g.to_json(), "report": report.as_dict()}
    if g.mean_zero and g.size - 1 <= config.n_max:
        payload["ball_equivalence"] = ball_equivalence_check(density, manifold, config.n_max).as_dict()
    artifact = write_json_artifact(ctx.path("characterize.json"), payload, ctx.provenance)
    ok = not config.require_member or report.verdict
    return CommandOutcome(ok=ok, artifacts=[artifact], summary={"verdict": report.verdict})


COMMANDS: Dict[str, Callable[[Any, RunContext], CommandOutcome]] = {
    "spectra": cmd_spectra,
    "heat-kernel": cmd_heat_kernel,
    "green": cmd_green,
    "simulate": cmd_simulate,
    "lil": cmd_lil,
    "cluster": cmd_cluster,
    "chase": cmd_chase,
    "characterize": cmd_characterize,
}


__all__ = [
    "COMMANDS",
    "CommandOutcome",
    "RunContext",
    "cmd_characterize",
    "cmd_chase",
    "cmd_cluster",
    "cmd_green",
    "cmd_heat_kernel",
    "cmd_lil",
    "cmd_simulate",
    "cmd_spectra",
]
