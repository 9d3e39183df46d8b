"""Closed-form eigen-decomposition of -Δ_M on the supported manifolds.

Index 0 is always the constant mode m₀^{-1/2}. Within an eigenvalue block
circle and torus modes are ordered by wave vector (lexicographic) with the
cosine before the sine; sphere harmonics by degree ℓ, then order m = -ℓ..ℓ.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any, List

import numpy as np
from scipy.special import gammaln, lpmv

from core_spectral.defaults import spectral_defaults
from core_spectral.errors import EigenIndexError, TruncationError
from core_spectral.manifold import ManifoldKind, ManifoldSpec, as_points, volume

logger = logging.getLogger(__name__)


class ModeFamily(Enum):
    CONSTANT = "const"
    COSINE = "cos"
    SINE = "sin"
    HARMONIC = "Y"


_FAMILY_CODE = {ModeFamily.CONSTANT: 0, ModeFamily.COSINE: 1, ModeFamily.SINE: 2, ModeFamily.HARMONIC: 3}
_CODE_FAMILY = {code: family for family, code in _FAMILY_CODE.items()}


@dataclass(frozen=True, slots=True)
class SpectralTruncation:
    """Number N of nonconstant modes kept (N = 0 keeps the constant only)."""

    modes: int

    def __post_init__(self) -> None:
        if isinstance(self.modes, bool) or int(self.modes) != self.modes or self.modes < 0:
            raise TruncationError(f"Truncation must be a nonnegative integer, got {self.modes!r}")

    @property
    def size(self) -> int:
        return self.modes + 1


@dataclass(frozen=True, slots=True)
class EigenPair:
    """(n, λ_n, φ_n) with φ_n identified by its family and wave/degree key."""

    index: int
    eigenvalue: float
    family: ModeFamily
    key: tuple[int, ...]
    label: str


def default_truncation(manifold: ManifoldSpec) -> SpectralTruncation:
    settings = spectral_defaults()["truncation"]
    if manifold.kind is ManifoldKind.CIRCLE:
        return SpectralTruncation(int(settings["circle_modes"]))
    if manifold.kind is ManifoldKind.FLAT_TORUS:
        return SpectralTruncation(int(settings["torus_wave_numbers"]) ** manifold.dimension - 1)
    max_degree = int(settings["sphere_max_degree"])
    return SpectralTruncation((max_degree + 1) ** 2 - 1)


def _mode_label(family: ModeFamily, key: tuple[int, ...]) -> str:
    if family is ModeFamily.CONSTANT:
        return "const"
    if family is ModeFamily.HARMONIC:
        return f"Y(l={key[0]},m={key[1]})"
    wave = str(key[0]) if len(key) == 1 else "(" + ",".join(str(k) for k in key) + ")"
    return f"{family.value}(k={wave})"


# ===========================================================
# Enumeration per manifold
# ===========================================================


def _enumerate_circle(manifold: ManifoldSpec, modes: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    length = manifold.lengths[0]
    indices = np.arange(1, modes + 1)
    wave = (indices + 1) // 2
    families = np.where(indices % 2 == 1, _FAMILY_CODE[ModeFamily.COSINE], _FAMILY_CODE[ModeFamily.SINE])
    eigenvalues = (2.0 * math.pi * wave / length) ** 2
    return eigenvalues, families, wave.reshape(-1, 1)


def _half_lattice(dimension: int, bound: int) -> np.ndarray:
    axes = [np.arange(-bound, bound + 1)] * dimension
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, dimension)
    keep = np.zeros(grid.shape[0], dtype=bool)
    decided = np.zeros(grid.shape[0], dtype=bool)
    for axis in range(dimension):
        column = grid[:, axis]
        keep |= ~decided & (column > 0)
        decided |= column != 0
    return grid[keep]


def _enumerate_torus(manifold: ManifoldSpec, modes: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    dimension = manifold.dimension
    inverse_sq = 1.0 / np.asarray(manifold.lengths) ** 2
    bound = max(1, int(math.ceil((modes / 2.0) ** (1.0 / dimension))))
    while True:
        waves = _half_lattice(dimension, bound)
        base = (2.0 * math.pi) ** 2 * ((waves**2) @ inverse_sq)
        if 2 * waves.shape[0] >= modes:
            eigenvalues = np.repeat(base, 2)
            all_waves = np.repeat(waves, 2, axis=0)
            families = np.tile(
                [_FAMILY_CODE[ModeFamily.COSINE], _FAMILY_CODE[ModeFamily.SINE]], waves.shape[0]
            )
            rounded = np.round(eigenvalues, 9)
            sort_keys = [families] + [all_waves[:, axis] for axis in reversed(range(dimension))] + [rounded]
            order = np.lexsort(tuple(sort_keys))
            eigenvalues = eigenvalues[order][:modes]
            omitted_floor = float(np.min((2.0 * math.pi * (bound + 1)) ** 2 * inverse_sq))
            if modes == 0 or eigenvalues[-1] < omitted_floor:
                eigenvalues = np.maximum.accumulate(eigenvalues) if modes else eigenvalues
                return eigenvalues, families[order][:modes], all_waves[order][:modes]
        bound *= 2


def _enumerate_sphere(modes: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    max_degree = max(1, int(math.ceil(math.sqrt(modes + 1))) - 1)
    while (max_degree + 1) ** 2 - 1 < modes:
        max_degree += 1
    keys = [(degree, order) for degree in range(1, max_degree + 1) for order in range(-degree, degree + 1)]
    keys_array = np.asarray(keys[:modes], dtype=np.int64).reshape(-1, 2)
    degrees = keys_array[:, 0].astype(np.float64)
    eigenvalues = degrees * (degrees + 1.0)
    families = np.full(keys_array.shape[0], _FAMILY_CODE[ModeFamily.HARMONIC])
    return eigenvalues, families, keys_array


# ===========================================================
# Spectral basis
# ===========================================================


class SpectralBasis:
    """The first N + 1 eigenpairs of a manifold with vectorized evaluation."""

    def __init__(self, manifold: ManifoldSpec, truncation: SpectralTruncation):
        self.manifold = manifold
        self.truncation = truncation
        self.volume = volume(manifold)
        modes = truncation.modes

        if manifold.kind is ManifoldKind.CIRCLE:
            eigenvalues, families, keys = _enumerate_circle(manifold, modes)
        elif manifold.kind is ManifoldKind.FLAT_TORUS:
            eigenvalues, families, keys = _enumerate_torus(manifold, modes)
        else:
            eigenvalues, families, keys = _enumerate_sphere(modes)

        key_width = 2 if manifold.kind is ManifoldKind.SPHERE2 else manifold.dimension
        self.eigenvalues = np.concatenate(([0.0], eigenvalues)).astype(np.float64)
        self.families = np.concatenate(([_FAMILY_CODE[ModeFamily.CONSTANT]], families)).astype(np.int64)
        self.keys = np.vstack([np.zeros((1, key_width), dtype=np.int64), keys.reshape(-1, key_width)])
        for array in (self.eigenvalues, self.families, self.keys):
            array.setflags(write=False)

        if manifold.kind is ManifoldKind.SPHERE2:
            degrees = self.keys[1:, 0]
            orders = np.abs(self.keys[1:, 1])
            norms = np.sqrt((2 * degrees + 1) / (4.0 * math.pi)) * np.exp(
                0.5 * (gammaln(degrees - orders + 1) - gammaln(degrees + orders + 1))
            )
            self._harmonic_scale = np.where(self.keys[1:, 1] == 0, norms, math.sqrt(2.0) * norms)
        else:
            self._frequencies = 2.0 * math.pi * self.keys[1:] / np.asarray(manifold.lengths)

        logger.debug("Enumerated %d eigenpairs on %s", self.size, manifold.label())

    # -------------------------------------------------------
    @property
    def size(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def spectral_gap(self) -> float:
        if self.size < 2:
            return math.inf
        return float(self.eigenvalues[1])

    def pair(self, index: int) -> EigenPair:
        if index < 0 or index >= self.size:
            raise EigenIndexError(f"Eigen index {index} outside 0..{self.size - 1}")
        family = _CODE_FAMILY[int(self.families[index])]
        key = tuple(int(k) for k in self.keys[index]) if index else ()
        return EigenPair(
            index=index,
            eigenvalue=float(self.eigenvalues[index]),
            family=family,
            key=key,
            label=_mode_label(family, key),
        )

    def pairs(self) -> List[EigenPair]:
        return [self.pair(index) for index in range(self.size)]

    def evaluate(self, points: Any, size: int | None = None) -> np.ndarray:
        """Matrix of φ_n(x_p) with shape (P, size)."""

        count = self.size if size is None else size
        if count > self.size:
            raise EigenIndexError(f"Requested {count} modes, basis holds {self.size}")
        xs = as_points(self.manifold, points)
        values = np.empty((xs.shape[0], count), dtype=np.float64)
        values[:, 0] = 1.0 / math.sqrt(self.volume)
        if count == 1:
            return values
        if self.manifold.kind is ManifoldKind.SPHERE2:
            values[:, 1:] = self._evaluate_harmonics(xs, count - 1)
        else:
            phase = xs @ self._frequencies[: count - 1].T
            amplitude = math.sqrt(2.0 / self.volume)
            is_cosine = self.families[1:count] == _FAMILY_CODE[ModeFamily.COSINE]
            values[:, 1:] = amplitude * np.where(is_cosine, np.cos(phase), np.sin(phase))
        return values

    def _evaluate_harmonics(self, xs: np.ndarray, count: int) -> np.ndarray:
        cos_theta = np.clip(xs[:, 2], -1.0, 1.0)
        longitude = np.arctan2(xs[:, 1], xs[:, 0])
        degrees = self.keys[1 : count + 1, 0]
        orders = self.keys[1 : count + 1, 1]
        legendre = lpmv(np.abs(orders)[None, :], degrees[None, :], cos_theta[:, None])
        azimuth = np.where(
            orders[None, :] >= 0,
            np.cos(orders[None, :] * longitude[:, None]),
            np.sin(-orders[None, :] * longitude[:, None]),
        )
        return self._harmonic_scale[None, :count] * legendre * azimuth

    def eigenpair_rows(self) -> List[tuple[int, float, str]]:
        return [(pair.index, pair.eigenvalue, pair.label) for pair in self.pairs()]


@lru_cache(maxsize=64)
def spectral_basis(manifold: ManifoldSpec, modes: int) -> SpectralBasis:
    return SpectralBasis(manifold, SpectralTruncation(modes))


def basis_for(manifold: ManifoldSpec, truncation: SpectralTruncation | int | None = None) -> SpectralBasis:
    if truncation is None:
        truncation = default_truncation(manifold)
    modes = truncation.modes if isinstance(truncation, SpectralTruncation) else int(truncation)
    return spectral_basis(manifold, modes)


def eigenvalues(manifold: ManifoldSpec, size: int) -> np.ndarray:
    """λ_0..λ_{size-1}."""

    return spectral_basis(manifold, max(size - 1, 0)).eigenvalues[:size]


def eigenpairs(manifold: ManifoldSpec, trunc: SpectralTruncation | None = None) -> List[EigenPair]:
    return basis_for(manifold, trunc).pairs()


def eval_eigenfunction(
    manifold: ManifoldSpec,
    n: int,
    x: Any,
    trunc: SpectralTruncation | None = None,
) -> float:
    """φ_n(x) by closed form; ``trunc`` bounds the admissible index when given."""

    if n < 0:
        raise EigenIndexError(f"Eigen index must be nonnegative, got {n}")
    if trunc is not None and n > trunc.modes:
        raise EigenIndexError(f"Eigen index {n} outside enumerated range 0..{trunc.modes}")
    basis = spectral_basis(manifold, n)
    return float(basis.evaluate(x)[0, n])


__all__ = [
    "EigenPair",
    "ModeFamily",
    "SpectralBasis",
    "SpectralTruncation",
    "basis_for",
    "default_truncation",
    "eigenpairs",
    "eigenvalues",
    "eval_eigenfunction",
    "spectral_basis",
]
