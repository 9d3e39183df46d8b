"""Manifold spectral layer: manifolds, eigenbases, heat kernels, quadrature."""

from core_spectral.eigenbasis import (
    EigenPair,
    ModeFamily,
    SpectralBasis,
    SpectralTruncation,
    basis_for,
    default_truncation,
    eigenpairs,
    eigenvalues,
    eval_eigenfunction,
    spectral_basis,
)
from core_spectral.heat_kernel import (
    HeatKernel,
    HeatKernelValue,
    MixingProfile,
    heat_kernel,
    heat_kernel_mass,
    mixing_decay_profile,
    truncation_error_bound,
    wrapped_gaussian_kernel,
)
from core_spectral.manifold import (
    ManifoldKind,
    ManifoldSpec,
    as_points,
    geodesic_distance,
    make_point,
    sphere_point,
    volume,
)

__all__ = [
    "EigenPair",
    "HeatKernel",
    "HeatKernelValue",
    "ManifoldKind",
    "ManifoldSpec",
    "MixingProfile",
    "ModeFamily",
    "SpectralBasis",
    "SpectralTruncation",
    "as_points",
    "basis_for",
    "default_truncation",
    "eigenpairs",
    "eigenvalues",
    "eval_eigenfunction",
    "geodesic_distance",
    "heat_kernel",
    "heat_kernel_mass",
    "make_point",
    "mixing_decay_profile",
    "spectral_basis",
    "sphere_point",
    "truncation_error_bound",
    "volume",
    "wrapped_gaussian_kernel",
]
