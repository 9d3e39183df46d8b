"""Quadrature grids on the supported manifolds.

Circle and torus use the periodic trapezoid rule (spectrally exact for
trigonometric polynomials below the Nyquist limit); the sphere uses a
product grid, Gauss–Legendre in cos θ times uniform in longitude.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from core_spectral.defaults import spectral_defaults
from core_spectral.eigenbasis import SpectralBasis
from core_spectral.errors import SpectralLabError
from core_spectral.manifold import ManifoldKind, ManifoldSpec


@dataclass(frozen=True, slots=True)
class QuadratureGrid:
    points: np.ndarray
    weights: np.ndarray

    @property
    def size(self) -> int:
        return int(self.weights.shape[0])

    def integrate(self, values: np.ndarray) -> np.ndarray | float:
        """∫ values dm along the first axis."""

        result = np.tensordot(self.weights, values, axes=(0, 0))
        return float(result) if np.ndim(result) == 0 else result


def periodic_grid(manifold: ManifoldSpec, points_per_axis: int | None = None) -> QuadratureGrid:
    if manifold.kind is ManifoldKind.SPHERE2:
        raise SpectralLabError("Periodic grids exist only on circles and tori")
    settings = spectral_defaults()["quadrature"]
    if points_per_axis is None:
        key = "periodic_points" if manifold.dimension == 1 else "torus_points_per_axis"
        points_per_axis = int(settings[key])
    if points_per_axis < 2:
        raise SpectralLabError("A periodic grid needs at least two nodes per axis")

    axes = [np.arange(points_per_axis) * (length / points_per_axis) for length in manifold.lengths]
    mesh = np.meshgrid(*axes, indexing="ij")
    points = np.stack([axis.reshape(-1) for axis in mesh], axis=-1)
    cell = math.prod(length / points_per_axis for length in manifold.lengths)
    weights = np.full(points.shape[0], cell)
    return QuadratureGrid(points=points, weights=weights)


def sphere_grid(colatitude_nodes: int | None = None, longitude_nodes: int | None = None) -> QuadratureGrid:
    settings = spectral_defaults()["quadrature"]
    n_theta = int(colatitude_nodes or settings["sphere_colatitude"])
    n_phi = int(longitude_nodes or settings["sphere_longitude"])

    nodes, gauss_weights = np.polynomial.legendre.leggauss(n_theta)
    longitudes = 2.0 * math.pi * np.arange(n_phi) / n_phi
    cos_theta, phi = np.meshgrid(nodes, longitudes, indexing="ij")
    sin_theta = np.sqrt(1.0 - cos_theta**2)
    points = np.stack(
        [
            (sin_theta * np.cos(phi)).reshape(-1),
            (sin_theta * np.sin(phi)).reshape(-1),
            cos_theta.reshape(-1),
        ],
        axis=-1,
    )
    weights = np.repeat(gauss_weights * (2.0 * math.pi / n_phi), n_phi)
    return QuadratureGrid(points=points, weights=weights)


def quadrature_grid(manifold: ManifoldSpec, resolution: int | None = None) -> QuadratureGrid:
    if manifold.kind is ManifoldKind.SPHERE2:
        if resolution is None:
            return sphere_grid()
        return sphere_grid(resolution, 2 * resolution)
    return periodic_grid(manifold, resolution)


def point_lattice(manifold: ManifoldSpec, per_axis: int | None = None) -> np.ndarray:
    """Dense lattice used to approximate suprema over M."""

    if per_axis is None:
        settings = spectral_defaults()["mixing_profile"]
        key = "torus_lattice_points" if manifold.dimension > 1 and manifold.is_periodic_box else "lattice_points"
        per_axis = int(settings[key])
    if manifold.kind is ManifoldKind.SPHERE2:
        return sphere_grid(per_axis, 2 * per_axis).points
    return periodic_grid(manifold, per_axis).points


def gram_by_quadrature(basis: SpectralBasis, size: int | None = None, resolution: int | None = None) -> np.ndarray:
    """Quadrature estimate of ∫ φ_i φ_j dm for i, j < size."""

    grid = quadrature_grid(basis.manifold, resolution)
    values = basis.evaluate(grid.points, size)
    return values.T @ (grid.weights[:, None] * values)


__all__ = [
    "QuadratureGrid",
    "gram_by_quadrature",
    "periodic_grid",
    "point_lattice",
    "quadrature_grid",
    "sphere_grid",
]
