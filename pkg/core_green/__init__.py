"""Green operators, Sobolev scales and Green kernels on spectral functions."""

from core_green.green_kernel import (
    KernelEvaluation,
    QuadratureConfig,
    circle_green_closed_form,
    circle_green_series,
    green_kernel,
    kernel_g_alpha_spectral,
    kernel_g_alpha_timeint,
)
from core_green.green_operators import (
    HalfInverseResult,
    OperatorKind,
    OperatorTag,
    SemigroupReport,
    apply_G_alpha,
    apply_G_half_inverse,
    embedding_constant,
    green_bilinear_form,
    green_quadratic_form,
    inner_product_L2,
    l2_embedding_constant,
    l2_norm,
    lil_sigma,
    semigroup_check,
    sobolev_inner,
    sobolev_norm,
)
from core_green.spectral_function import SpectralFunction

__all__ = [
    "HalfInverseResult",
    "KernelEvaluation",
    "OperatorKind",
    "OperatorTag",
    "QuadratureConfig",
    "SemigroupReport",
    "SpectralFunction",
    "apply_G_alpha",
    "apply_G_half_inverse",
    "circle_green_closed_form",
    "circle_green_series",
    "embedding_constant",
    "green_bilinear_form",
    "green_kernel",
    "green_quadratic_form",
    "inner_product_L2",
    "kernel_g_alpha_spectral",
    "kernel_g_alpha_timeint",
    "l2_embedding_constant",
    "l2_norm",
    "lil_sigma",
    "semigroup_check",
    "sobolev_inner",
    "sobolev_norm",
]
