"""Run configurations for every subcommand, validated with pydantic.

Unknown keys are rejected. Each model hashes to the config hash stamped
into the artifacts; runtime-only options (output directory, threads) stay
out of the hash.
"""

from __future__ import annotations

import json
import math
import re
from pathlib import Path
from typing import Any, Dict, List, Literal, Type

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from core_green.spectral_function import SpectralFunction
from core_lil.observable_basis import make_basis
from core_simulation.rng_streams import MAX_SEED
from core_spectral.eigenbasis import SpectralTruncation, default_truncation
from core_spectral.errors import RunConfigError
from core_spectral.manifold import ManifoldSpec

_OBSERVABLE_PATTERN = re.compile(r"^(phi|f)(\d+)$")


class StrictModel(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ManifoldConfig(StrictModel):
    kind: Literal["circle", "torus", "flat_torus", "sphere", "sphere2"] = "circle"
    L: float | List[float] | None = Field(default=None, description="Circumference or torus side lengths")

    def to_spec(self) -> ManifoldSpec:
        return ManifoldSpec.from_json(self.model_dump(exclude_none=True))


class CommandConfig(StrictModel):
    manifold: ManifoldConfig = Field(default_factory=lambda: ManifoldConfig(kind="circle", L=2 * math.pi))
    modes: int | None = Field(default=None, ge=0, description="Nonconstant modes kept; default per manifold")
    seed: int = Field(default=0, ge=0, le=MAX_SEED)

    def manifold_spec(self) -> ManifoldSpec:
        return self.manifold.to_spec()

    def truncation(self) -> SpectralTruncation:
        if self.modes is None:
            return default_truncation(self.manifold_spec())
        return SpectralTruncation(self.modes)


class SpectraConfig(CommandConfig):
    pass


class HeatKernelConfig(CommandConfig):
    times: List[float] = Field(default_factory=lambda: [0.1, 1.0, 10.0])
    x: List[float] | None = None
    y: List[float] | None = None
    profile_times: List[float] = Field(default_factory=list)

    @field_validator("times", "profile_times")
    @classmethod
    def _positive_times(cls, value: List[float]) -> List[float]:
        if any(t <= 0 for t in value):
            raise ValueError("heat-kernel times must be positive")
        return value


class GreenConfig(CommandConfig):
    alpha: float = Field(default=1.0, gt=0)
    route: Literal["spectral", "timeint", "both"] = "both"
    x: List[float] | None = None
    y: List[float] | None = None
    random_pairs: int = Field(default=10, ge=0)
    route_tolerance: float = Field(default=1e-6, gt=0)
    verify_semigroup: bool = False
    beta: float = Field(default=0.5, gt=0)
    semigroup_modes: int = Field(default=20, ge=1)


class SimulationConfig(CommandConfig):
    start: List[float] | None = None
    uniform_start: bool = False
    h: float = Field(default=0.01, gt=0)
    horizon: float = Field(default=1000.0, gt=0)
    observables: List[str] = Field(default_factory=lambda: ["phi1"])
    n_paths: int = Field(default=8, ge=1)
    first_checkpoint: float = Field(default=3.0, ge=3.0)
    checkpoint_ratio: float = Field(default=1.05, gt=1.0, le=2.0)
    step_budget: float | None = Field(default=None, gt=0)
    resume_out: bool = False

    @field_validator("observables")
    @classmethod
    def _observable_names(cls, value: List[str]) -> List[str]:
        for name in value:
            match = _OBSERVABLE_PATTERN.match(name)
            if match is None or int(match.group(2)) < (0 if match.group(1) == "phi" else 1):
                raise ValueError(f"observable {name!r} must look like phi<n> or f<n> (n ≥ 1 for f)")
        return value

    def observable_functions(self) -> List[SpectralFunction]:
        manifold = self.manifold_spec()
        functions = []
        for name in self.observables:
            match = _OBSERVABLE_PATTERN.match(name)
            family, index = match.group(1), int(match.group(2))
            if family == "phi":
                functions.append(SpectralFunction.basis_vector(manifold, index))
            else:
                functions.append(make_basis(manifold, index, SpectralTruncation(index)).functions[-1])
        return functions


class LilConfig(SimulationConfig):
    window_start: float = Field(default=100.0, ge=3.0)
    require_band: bool = False
    band: List[float] = Field(default_factory=lambda: [0.4, 1.4], min_length=2, max_length=2)
    band_fraction: float = Field(default=0.875, ge=0.0, le=1.0)


class ClusterConfig(SimulationConfig):
    n: int = Field(default=2, ge=1)
    t_min: float = Field(default=1000.0, ge=3.0)
    inflation: float = Field(default=0.25, ge=0.0)
    angular_bins: int = Field(default=16, ge=1)
    radial_floor: float = Field(default=0.2, ge=0.0)
    require_containment: bool = False
    containment_fraction: float = Field(default=0.9, ge=0.0, le=1.0)


class ChaseConfig(SimulationConfig):
    target: List[float] = Field(default_factory=lambda: [0.0])
    eps: List[float] = Field(default_factory=lambda: [0.05])
    budget: float = Field(default=1.0e5, gt=0)
    require_success: bool = False
    success_fraction: float = Field(default=0.9, ge=0.0, le=1.0)


class CharacterizeConfig(CommandConfig):
    density: Dict[str, Any] | str
    n_max: int = Field(default=32, ge=1)
    require_member: bool = False

    def density_function(self, base_dir: Path | None = None) -> SpectralFunction:
        payload = self.density
        if isinstance(payload, str):
            path = Path(payload)
            if base_dir is not None and not path.is_absolute():
                path = base_dir / path
            with open(path, "r", encoding="utf-8") as handle:
                payload = json.load(handle)
        if "manifold" not in payload:
            payload = {**payload, "manifold": self.manifold.model_dump(exclude_none=True)}
        return SpectralFunction.from_json(payload)


COMMAND_MODELS: Dict[str, Type[CommandConfig]] = {
    "spectra": SpectraConfig,
    "heat-kernel": HeatKernelConfig,
    "green": GreenConfig,
    "simulate": SimulationConfig,
    "lil": LilConfig,
    "cluster": ClusterConfig,
    "chase": ChaseConfig,
    "characterize": CharacterizeConfig,
}


def load_config_file(path: str | Path | None) -> Dict[str, Any]:
    if path is None:
        return {}
    try:
        with open(path, "r", encoding="utf-8") as handle:
            payload = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise RunConfigError(f"Cannot read run config {path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise RunConfigError(f"Run config {path} must be a JSON object")
    return payload


def build_run_config(command: str, file_payload: Dict[str, Any], overrides: Dict[str, Any]) -> CommandConfig:
    """Overlay non-None CLI overrides on the file payload and validate."""

    model = COMMAND_MODELS.get(command)
    if model is None:
        raise RunConfigError(f"Unknown subcommand {command!r}")
    merged = dict(file_payload)
    merged.update({key: value for key, value in overrides.items() if value is not None})
    try:
        return model.model_validate(merged)
    except ValidationError as exc:
        raise RunConfigError(f"Invalid {command} config: {exc}") from exc


def config_payload(config: CommandConfig) -> Dict[str, Any]:
    """Canonical JSON-ready form used for hashing."""

    return config.model_dump(mode="json")


__all__ = [
    "COMMAND_MODELS",
    "ChaseConfig",
    "CharacterizeConfig",
    "ClusterConfig",
    "CommandConfig",
    "GreenConfig",
    "HeatKernelConfig",
    "LilConfig",
    "ManifoldConfig",
    "SimulationConfig",
    "SpectraConfig",
    "build_run_config",
    "config_payload",
    "load_config_file",
]
