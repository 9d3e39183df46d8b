from __future__ import annotations

import math
import sys
from pathlib import Path

import numpy as np
import pytest

PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from core_green.green_operators import (  # noqa: E402
    OperatorKind,
    OperatorTag,
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
from core_green.spectral_function import SpectralFunction  # noqa: E402
from core_spectral.eigenbasis import eigenvalues  # noqa: E402
from core_spectral.errors import ManifoldMismatchError, NotMeanZeroError, SpectralLabError  # noqa: E402
from core_spectral.manifold import ManifoldSpec  # noqa: E402
from core_spectral.quadrature import periodic_grid  # noqa: E402

CIRCLE = ManifoldSpec.circle(2 * math.pi)


def _phi(n: int, manifold: ManifoldSpec = CIRCLE, scale: float = 1.0) -> SpectralFunction:
    return SpectralFunction.basis_vector(manifold, n, scale=scale)


def _random_mean_zero(rng: np.random.Generator, modes: int, manifold: ManifoldSpec = CIRCLE) -> SpectralFunction:
    return SpectralFunction(manifold, np.concatenate(([0.0], rng.standard_normal(modes))))


# ===========================================================
# SpectralFunction
# ===========================================================


def test_spectral_function_json_and_arithmetic() -> None:
    payload = {"manifold": {"kind": "circle", "L": 2 * math.pi}, "coeffs": [{"n": 1, "c": 0.5}, {"n": 3, "c": -2.0}]}
    f = SpectralFunction.from_json(payload)
    assert f.size == 4
    assert f.mean_zero
    assert list(f.coeffs) == [0.0, 0.5, 0.0, -2.0]
    assert f.to_json() == payload

    g = f + _phi(5)
    assert g.size == 6
    assert list((g - f).coeffs) == [0, 0, 0, 0, 0, 1.0]
    assert list((2 * f).coeffs) == [0.0, 1.0, 0.0, -4.0]
    assert list((-f).coeffs) == [0.0, -0.5, 0.0, 2.0]
    with pytest.raises(ManifoldMismatchError):
        f + _phi(1, ManifoldSpec.sphere2())
    with pytest.raises(SpectralLabError):
        SpectralFunction(CIRCLE, [0.0, math.nan])


def test_spectral_function_integral_and_evaluation() -> None:
    constant = _phi(0, scale=3.0)
    assert not constant.mean_zero
    assert constant.integral() == pytest.approx(3.0 * math.sqrt(2 * math.pi))
    f = SpectralFunction(CIRCLE, [0.0, 1.0, 1.0])
    x = 0.4
    assert f.evaluate(x)[0] == pytest.approx((math.cos(x) + math.sin(x)) / math.sqrt(math.pi))


# ===========================================================
# G_α and G_{1/2}^{-1}
# ===========================================================


def test_apply_G_alpha_examples() -> None:
    assert list(apply_G_alpha(_phi(1), 1.0).coeffs) == pytest.approx([0.0, 2.0])
    assert np.all(apply_G_alpha(_phi(0, scale=5.0), 0.7).coeffs == 0.0)
    assert apply_G_alpha(_phi(3), 0.5).coeffs[3] == pytest.approx(math.sqrt(2) / 2)
    with pytest.raises(SpectralLabError):
        apply_G_alpha(_phi(1), 0.0)
    with pytest.raises(SpectralLabError):
        apply_G_alpha(_phi(1), -1.0)


def test_multiplier_is_exact_on_every_basis_vector() -> None:
    lambdas = eigenvalues(CIRCLE, 41)
    for alpha in (0.3, 1.0, 2.5):
        for n in range(1, 41):
            coeffs = apply_G_alpha(_phi(n), alpha).coeffs
            assert coeffs[n] == pytest.approx(2.0**alpha * lambdas[n] ** (-alpha), rel=1e-15)
            assert np.count_nonzero(coeffs) == 1


def test_apply_G_half_inverse_examples() -> None:
    assert apply_G_half_inverse(_phi(1)).function.coeffs[1] == pytest.approx(1 / math.sqrt(2))
    assert apply_G_half_inverse(_phi(3)).function.coeffs[3] == pytest.approx(math.sqrt(2))
    result = apply_G_half_inverse(_phi(3))
    assert result.domain_energy == pytest.approx(4.0)
    with pytest.raises(NotMeanZeroError):
        apply_G_half_inverse(_phi(0))


def test_half_inverse_round_trip() -> None:
    h = _random_mean_zero(np.random.default_rng(1), 30)
    recovered = apply_G_half_inverse(apply_G_alpha(h, 0.5)).function
    assert recovered.coeffs == pytest.approx(h.coeffs, rel=1e-14, abs=0.0)


def test_operator_tag_dispatch() -> None:
    f = _phi(3)
    assert OperatorTag(OperatorKind.G_ALPHA, 1.0).apply(f).coeffs[3] == pytest.approx(0.5)
    assert OperatorTag(OperatorKind.G_HALF_INVERSE).apply(f).coeffs[3] == pytest.approx(math.sqrt(2))
    with pytest.raises(SpectralLabError):
        OperatorTag(OperatorKind.G_ALPHA, 0.0)


# ===========================================================
# Norms and forms
# ===========================================================


def test_sobolev_norm_examples() -> None:
    lambdas = eigenvalues(CIRCLE, 8)
    for n in range(1, 8):
        for alpha in (0.5, 1.0, 3.0):
            assert sobolev_norm(_phi(n, scale=lambdas[n] ** (-alpha / 2)), alpha) == pytest.approx(1.0, abs=1e-12)
    assert sobolev_norm(SpectralFunction.zero(CIRCLE, 4), 1.0) == 0.0
    assert sobolev_norm(_phi(1) + _phi(3), 1.0) == pytest.approx(math.sqrt(5))
    with pytest.raises(NotMeanZeroError):
        sobolev_norm(_phi(0), 1.0)


def test_inner_product_examples_and_quadrature() -> None:
    assert inner_product_L2(_phi(1), _phi(2)) == 0.0
    assert inner_product_L2(_phi(1), _phi(1)) == 1.0
    with pytest.raises(ManifoldMismatchError):
        inner_product_L2(_phi(1), _phi(1, ManifoldSpec.sphere2()))

    rng = np.random.default_rng(3)
    f = SpectralFunction(CIRCLE, rng.standard_normal(11))
    g = SpectralFunction(CIRCLE, rng.standard_normal(15))
    grid = periodic_grid(CIRCLE)
    quadrature = grid.integrate(f.evaluate(grid.points) * g.evaluate(grid.points))
    assert inner_product_L2(f, g) == pytest.approx(quadrature, abs=1e-8)


def test_sobolev_inner_product_definition() -> None:
    rng = np.random.default_rng(11)
    for _ in range(20):
        f1 = _random_mean_zero(rng, 12)
        f2 = _random_mean_zero(rng, 12)
        alpha = float(rng.uniform(0.2, 3.0))
        lhs = sobolev_inner(apply_G_alpha(f1, alpha / 2), apply_G_alpha(f2, alpha / 2), alpha)
        rhs = 2.0**alpha * inner_product_L2(f1, f2)
        assert lhs == pytest.approx(rhs, rel=1e-12, abs=1e-12)


def test_norm_identity_between_h1_and_half_inverse() -> None:
    g = _random_mean_zero(np.random.default_rng(5), 25)
    assert sobolev_norm(g, 1.0) == pytest.approx(math.sqrt(2) * l2_norm(apply_G_half_inverse(g).function), rel=1e-12)


def test_green_form_examples() -> None:
    assert green_quadratic_form(_phi(1)) == pytest.approx(2.0)
    lambdas = eigenvalues(CIRCLE, 10)
    for k in range(1, 10):
        assert green_quadratic_form(_phi(k, scale=math.sqrt(lambdas[k] / 2))) == pytest.approx(1.0)
    assert green_quadratic_form(SpectralFunction.zero(CIRCLE, 3)) == 0.0
    f = _random_mean_zero(np.random.default_rng(2), 10)
    half = apply_G_alpha(f, 0.5)
    assert green_quadratic_form(f) == pytest.approx(inner_product_L2(half, half), rel=1e-12)
    assert green_bilinear_form(f, f) == pytest.approx(green_quadratic_form(f), rel=1e-14)


def test_lil_sigma_examples() -> None:
    assert lil_sigma(_phi(1)) == pytest.approx(math.sqrt(2 / math.pi))
    assert lil_sigma(_phi(4, scale=math.sqrt(4 / 2))) == pytest.approx(math.sqrt(1 / math.pi))
    assert lil_sigma(SpectralFunction.zero(CIRCLE)) == 0.0
    with pytest.raises(NotMeanZeroError):
        lil_sigma(_phi(0))


def test_self_adjointness() -> None:
    rng = np.random.default_rng(8)
    for alpha in (0.5, 1.0, 1.7):
        f = SpectralFunction(CIRCLE, rng.standard_normal(16))
        g = SpectralFunction(CIRCLE, rng.standard_normal(16))
        left = inner_product_L2(apply_G_alpha(f, alpha), g)
        right = inner_product_L2(f, apply_G_alpha(g, alpha))
        assert left == pytest.approx(right, abs=1e-12)


def test_embedding_constants_bound_the_norms() -> None:
    rng = np.random.default_rng(4)
    for manifold in (CIRCLE, ManifoldSpec.circle(20.0), ManifoldSpec.flat_torus([3.0, 3.0])):
        for _ in range(10):
            f = _random_mean_zero(rng, 20, manifold)
            constant = embedding_constant(manifold, 0.5, 1.5)
            assert sobolev_norm(f, 0.5) <= constant * sobolev_norm(f, 1.5) * (1 + 1e-12)
            assert l2_norm(f) <= l2_embedding_constant(manifold, 1.0) * sobolev_norm(f, 1.0) * (1 + 1e-12)
    assert embedding_constant(CIRCLE, 0.5, 1.5) == 1.0
    with pytest.raises(SpectralLabError):
        embedding_constant(CIRCLE, 2.0, 1.0)


# ===========================================================
# Semigroup
# ===========================================================


def test_semigroup_examples() -> None:
    report = semigroup_check(0.5, 0.5, _phi(1))
    assert report.passed
    assert apply_G_alpha(apply_G_alpha(_phi(1), 0.5), 0.5).coeffs[1] == pytest.approx(2.0)
    assert semigroup_check(1.0, 2.0, _phi(0, scale=3.0)).max_relative_error == 0.0


def test_semigroup_random_triples() -> None:
    rng = np.random.default_rng(2024)
    for _ in range(20):
        alpha, beta = rng.uniform(0.1, 3.0, 2)
        f = SpectralFunction(CIRCLE, rng.standard_normal(21))
        report = semigroup_check(float(alpha), float(beta), f)
        assert report.passed, report.as_dict()
        assert report.max_relative_error <= 1e-12
    assert semigroup_check(0.3, 1.7, SpectralFunction(CIRCLE, rng.standard_normal(21))).passed
