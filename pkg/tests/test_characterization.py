from __future__ import annotations

import math
import sys
from pathlib import Path

import numpy as np
import pytest

PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from core_characterization.characterization_checker import (  # noqa: E402
    CandidateDensity,
    ball_equivalence_check,
    check,
    half_inverse_norm,
    limit_functional_bound,
    mu_of,
)
from core_green.green_operators import sobolev_norm  # noqa: E402
from core_green.spectral_function import SpectralFunction  # noqa: E402
from core_lil.ellipsoid import ball_membership, ball_radius, ellipsoid_from  # noqa: E402
from core_lil.observable_basis import make_basis  # noqa: E402
from core_spectral.eigenbasis import SpectralTruncation  # noqa: E402
from core_spectral.errors import ManifoldMismatchError, NotMeanZeroError, TruncationError  # noqa: E402
from core_spectral.manifold import ManifoldSpec  # noqa: E402

CIRCLE = ManifoldSpec.circle(2 * math.pi)
BOUNDARY_C = math.sqrt(2 / math.pi)


def _density(coeffs) -> CandidateDensity:
    return CandidateDensity(SpectralFunction(CIRCLE, np.asarray(coeffs, dtype=np.float64)))


def _random_densities(manifold: ManifoldSpec, modes: int, count: int, seed: int):
    """Random mean-zero densities scaled to land on both sides of the threshold."""

    rng = np.random.default_rng(seed)
    threshold = ball_radius(manifold)
    for _ in range(count):
        g = SpectralFunction(manifold, np.concatenate(([0.0], rng.standard_normal(modes))))
        scale = rng.uniform(0.5, 1.5) * threshold / half_inverse_norm(g)
        yield CandidateDensity(scale * g)


@pytest.mark.parametrize("c, member", [(0.5, True), (0.79, True), (BOUNDARY_C, True), (0.80, False), (2.0, False)])
def test_scaled_first_mode_membership(c: float, member: bool) -> None:
    report = check(_density([0.0, c]), CIRCLE)
    assert report.cond_a and report.cond_b and report.cond_c
    assert report.cond_d is member
    assert report.verdict is member
    assert report.threshold == pytest.approx(math.sqrt(1 / math.pi))
    assert report.half_inverse_norm == pytest.approx(c / math.sqrt(2))


def test_constant_density_fails_zero_mass() -> None:
    report = check(_density([1.0]), CIRCLE)
    assert not report.cond_b
    assert report.mean == pytest.approx(math.sqrt(2 * math.pi))
    assert not report.verdict


def test_zero_density_is_member() -> None:
    report = check(CandidateDensity(SpectralFunction.zero(CIRCLE)), CIRCLE)
    assert report.verdict
    assert report.half_inverse_norm == 0.0
    assert report.margin == pytest.approx(math.sqrt(1 / math.pi))
    assert set(report.as_dict()) >= {"cond_a", "cond_b", "cond_c", "cond_d", "verdict", "margin"}


def test_check_rejects_other_manifold() -> None:
    with pytest.raises(ManifoldMismatchError):
        check(_density([0.0, 0.1]), ManifoldSpec.circle(1.0))


def test_mu_of_examples() -> None:
    phi1 = SpectralFunction.basis_vector(CIRCLE, 1)
    constant = SpectralFunction.basis_vector(CIRCLE, 0)
    assert mu_of(CandidateDensity(phi1), phi1) == 1.0
    assert mu_of(CandidateDensity(phi1), constant) == 0.0

    coeffs = [0.0, 0.3, -0.2, 0.1, 0.05]
    density = _density(coeffs)
    basis = make_basis(CIRCLE, 4)
    lambdas = [1.0, 1.0, 4.0, 4.0]
    for j, f in enumerate(basis.functions):
        assert mu_of(density, f) == pytest.approx(math.sqrt(lambdas[j] / 2) * coeffs[j + 1], rel=1e-15)
    with pytest.raises(ManifoldMismatchError):
        mu_of(density, SpectralFunction.basis_vector(ManifoldSpec.circle(1.0), 1))


def test_ball_equivalence_over_random_densities() -> None:
    for density in _random_densities(CIRCLE, 32, 100, seed=3):
        report = ball_equivalence_check(density, CIRCLE, 32)
        assert report.modes == 32
        assert report.discrepancy <= 1e-14
        assert report.agree


def test_ball_equivalence_at_the_boundary_and_across_it() -> None:
    boundary = ball_equivalence_check(_density([0.0, BOUNDARY_C]), CIRCLE, 32)
    assert boundary.cond_d and boundary.ball_member
    assert boundary.form_value == pytest.approx(1.0, abs=1e-12)

    outside = ball_equivalence_check(_density([0.0, BOUNDARY_C + 1e-6]), CIRCLE, 32)
    assert not outside.cond_d and not outside.ball_member

    inside = ball_equivalence_check(_density([0.0, BOUNDARY_C - 1e-6]), CIRCLE, 32)
    assert inside.cond_d and inside.ball_member


def test_ball_equivalence_preconditions() -> None:
    with pytest.raises(NotMeanZeroError):
        ball_equivalence_check(_density([0.1, 0.2]), CIRCLE, 32)
    with pytest.raises(TruncationError):
        ball_equivalence_check(_density(np.full(40, 0.01) * np.r_[0.0, np.ones(39)]), CIRCLE, 32)
    zero = ball_equivalence_check(CandidateDensity(SpectralFunction.zero(CIRCLE)), CIRCLE, 32)
    assert zero.modes == 0 and zero.agree


def test_condition_d_value_is_scaled_h1_norm() -> None:
    for manifold in (CIRCLE, ManifoldSpec.flat_torus([1.0, 1.5]), ManifoldSpec.sphere2()):
        for density in _random_densities(manifold, 24, 10, seed=11):
            value = check(density, manifold).half_inverse_norm
            assert value == pytest.approx(sobolev_norm(density.g, 1.0) / math.sqrt(2), rel=1e-14)


def test_accepted_densities_are_closed_under_scaling_and_truncation() -> None:
    accepted = [d for d in _random_densities(CIRCLE, 16, 40, seed=5) if check(d, CIRCLE).verdict]
    assert accepted
    for density in accepted:
        for c in (0.0, 0.25, 0.5, 0.99, 1.0):
            assert check(CandidateDensity(c * density.g), CIRCLE).verdict
        for modes in (1, 4, 8, 15):
            assert check(CandidateDensity(density.g.truncated(modes)), CIRCLE).verdict


def test_accepted_densities_map_into_the_ball() -> None:
    for density in _random_densities(CIRCLE, 32, 60, seed=8):
        if not check(density, CIRCLE).verdict:
            continue
        for n in (1, 2, 8, 32):
            basis = make_basis(CIRCLE, n, SpectralTruncation(32))
            vector = [mu_of(density, f) for f in basis.functions]
            assert ball_membership(vector, ellipsoid_from(basis.functions, CIRCLE)).member


def test_limit_functional_bound_holds() -> None:
    rng = np.random.default_rng(17)
    density = next(_random_densities(CIRCLE, 20, 1, seed=2))
    for _ in range(20):
        f = SpectralFunction(CIRCLE, np.concatenate(([0.0], rng.standard_normal(30))))
        bound = limit_functional_bound(density, f, alpha=1.0)
        assert bound.embedding_constant == 1.0
        assert bound.holds
        assert bound.value <= bound.l2_bound <= bound.sobolev_bound + 1e-12

    small = ManifoldSpec.circle(100.0)
    g = CandidateDensity(SpectralFunction(small, [0.0, 0.1, 0.1]))
    bound = limit_functional_bound(g, SpectralFunction(small, [0.0, 1.0]), alpha=2.0)
    assert bound.embedding_constant == pytest.approx((2 * math.pi / 100.0) ** -2)
    assert bound.holds
    with pytest.raises(NotMeanZeroError):
        limit_functional_bound(g, SpectralFunction(small, [1.0, 1.0]))
