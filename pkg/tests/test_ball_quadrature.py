# -*- coding: utf-8 -*-
import math

import numpy as np
import pytest
from scipy import special

from src.ball_quadrature.config import COARSE_CUTOFF, Method, NormEstimate, QuadratureConfig
from src.ball_quadrature.disk import disk_rule, radial_breakpoints, radial_rule
from src.ball_quadrature.norms import radial_norm, refine_cutoff, unstable, weighted_norm
from src.ball_quadrature.sampler import ball_sampler, monte_carlo_mean
from src.core.errors import DomainError
from src.special_functions.gamma import ball_mass


def modulus_squared(w):
    return np.sum(np.abs(w) ** 2, axis=1)


# --- config ----------------------------------------------------------------------

@pytest.mark.parametrize("kwargs", [
    dict(radial_nodes=1), dict(angular_nodes=2), dict(mc_samples=10),
    dict(boundary_cutoff=1.0), dict(boundary_cutoff=0.0), dict(seed=-1),
])
def test_quadrature_config_rejects_bad_values(kwargs):
    with pytest.raises(DomainError):
        QuadratureConfig(**kwargs)


def test_quadrature_config_from_settings_and_copies():
    settings = {"radial_nodes": 8, "angular_nodes": 32, "mc_samples": 5000,
                "boundary_cutoff": 0.99, "seed": 3}
    cfg = QuadratureConfig.from_settings(settings)
    assert cfg.to_dict() == settings
    assert cfg.with_cutoff(0.5).boundary_cutoff == 0.5
    assert cfg.with_seed(4).seed == 4 and cfg.seed == 3
    assert cfg.with_samples(200).mc_samples == 200


def test_norm_estimate_invariants():
    with pytest.raises(DomainError):
        NormEstimate(-1.0)
    with pytest.raises(DomainError):
        NormEstimate(1.0, stderr=0.1, method=Method.GRID_QUAD)
    estimate = NormEstimate.divergent()
    assert estimate.value == math.inf and estimate.diverged
    assert NormEstimate(2.0).flagged().diverged
    assert NormEstimate(2.0, 0.5, Method.MONTE_CARLO).to_dict() == {
        "value": 2.0, "stderr": 0.5, "method": "MonteCarlo", "diverged": False}


# --- disk rule -------------------------------------------------------------------

def test_radial_breakpoints_refine_toward_cutoff():
    ends = radial_breakpoints(0.9)
    assert list(ends) == [0.0, 0.5, 0.75, 0.875, 0.9]


def test_radial_rule_weights_sum_to_cutoff_squared(quad_cfg):
    nodes, weights = radial_rule(quad_cfg)
    assert np.sum(weights) == pytest.approx(quad_cfg.boundary_cutoff ** 2, rel=1e-13)
    assert nodes.min() > 0 and nodes.max() < quad_cfg.boundary_cutoff ** 2


def test_disk_rule_basic_integrals(quad_cfg):
    nodes, weights = disk_rule(quad_cfg)
    assert np.sum(weights) == pytest.approx(quad_cfg.boundary_cutoff ** 2, rel=1e-13)
    assert abs(np.dot(weights, nodes.real)) < 1e-13
    assert np.dot(weights, 1.0 - np.abs(nodes) ** 2) == pytest.approx(0.5, abs=1e-9)


@pytest.mark.parametrize("t", [-0.5, 0.0, 2.5])
def test_radial_rule_integrates_endpoint_weights(t):
    # ∫_0^1 (1-s)^t ds = 1/(t+1); the dyadic panels resolve the endpoint
    cfg = QuadratureConfig(boundary_cutoff=1 - 1e-12)
    s, ws = radial_rule(cfg)
    assert np.dot(ws, (1.0 - s) ** t) == pytest.approx(1.0 / (t + 1.0), rel=1e-5)


# --- sampler ---------------------------------------------------------------------

@pytest.mark.parametrize("n, t", [(1, 0.0), (2, 0.0), (2, 1.0), (3, 0.5)])
def test_sampler_total_mass(n, t, coarse_cfg):
    mean, _ = monte_carlo_mean(lambda w: np.ones(w.shape[0]), n, t, coarse_cfg)
    assert mean.real == pytest.approx(ball_mass(n, t), rel=1e-4)


def test_sampler_points_lie_in_ball(coarse_cfg):
    for sample in ball_sampler(3, 0.5, coarse_cfg):
        assert sample.points.shape[1] == 3
        assert np.all(np.linalg.norm(sample.points, axis=1) < 1.0)


def test_sampler_rejects_nonintegrable_weight(coarse_cfg):
    with pytest.raises(DomainError):
        list(ball_sampler(1, -1.0, coarse_cfg))


def _monomial_cases():
    # (n, t, integrand, exact value of ∫ g (1-|w|²)^t dv)
    cases = []
    for n, t in ((1, 0.0), (2, 0.5), (3, 1.0)):
        for k in (1, 2, 3):
            exact = n * math.exp(special.betaln(n + k, t + 1))
            cases.append((n, t, lambda w, k=k: modulus_squared(w) ** k, exact))
    # Re<w, e_1>² averages to half of |w_1|², i.e. |w|²/(2n)
    for n, t in ((1, 0.0), (2, 1.0)):
        exact = n * math.exp(special.betaln(n + 1, t + 1)) / (2 * n)
        cases.append((n, t, lambda w: w[:, 0].real ** 2, exact))
    cases.append((2, 0.0, lambda w: w[:, 0], 0.0))
    return cases


@pytest.mark.parametrize("n, t, integrand, exact", _monomial_cases())
def test_sampler_is_unbiased_on_monomials(n, t, integrand, exact, coarse_cfg, mc_close):
    mean, stderr = monte_carlo_mean(integrand, n, t, coarse_cfg)
    assert mc_close(abs(mean) if exact == 0 else mean.real, exact, stderr)


def test_sampler_half_for_modulus_squared(coarse_cfg, mc_close):
    mean, stderr = monte_carlo_mean(modulus_squared, 1, 0.0, coarse_cfg)
    assert mc_close(mean.real, 0.5, stderr)


def test_monte_carlo_is_deterministic_per_seed(coarse_cfg):
    def integrand(w):
        return np.abs(1.0 - 0.7 * w[:, 0]) ** -2

    first = monte_carlo_mean(integrand, 2, 0.0, coarse_cfg)
    second = monte_carlo_mean(integrand, 2, 0.0, coarse_cfg)
    other = monte_carlo_mean(integrand, 2, 0.0, coarse_cfg.with_seed(coarse_cfg.seed + 1))
    assert first == second
    assert first != other


def test_monte_carlo_is_deterministic_across_chunks():
    cfg = QuadratureConfig(mc_samples=150000)
    first = monte_carlo_mean(modulus_squared, 2, 0.0, cfg)
    second = monte_carlo_mean(modulus_squared, 2, 0.0, cfg)
    assert first == second


SMOOTH_INTEGRANDS = [
    lambda w: np.ones(w.shape[0]),
    lambda w: modulus_squared(w),
    lambda w: modulus_squared(w) ** 3,
    lambda w: 1.0 - modulus_squared(w),
    lambda w: (1.0 - modulus_squared(w)) ** 2,
    lambda w: w[:, 0].real ** 2,
    lambda w: np.abs(w[:, 0] - 0.2) ** 2,
    lambda w: np.exp(w[:, 0].real),
    lambda w: np.abs(1.0 - 0.5 * w[:, 0]) ** -2,
    lambda w: np.cos(3.0 * w[:, 0].imag),
]


@pytest.mark.parametrize("integrand", SMOOTH_INTEGRANDS)
def test_disk_grid_agrees_with_monte_carlo(integrand, quad_cfg, coarse_cfg):
    nodes, weights = disk_rule(quad_cfg)
    grid_value = float(np.dot(weights, integrand(nodes[:, None])))
    mean, stderr = monte_carlo_mean(integrand, 1, 0.0, coarse_cfg)
    assert abs(grid_value - mean.real) <= max(1e-5 * abs(grid_value), 4.0 * stderr + 1e-12)


# --- weighted norms ----------------------------------------------------------------

@pytest.mark.parametrize("p, alpha", [(1, 0.0), (2, 1.5), (3.5, -0.5)])
def test_weighted_norm_of_constant_is_one(p, alpha, quad_cfg):
    estimate = weighted_norm(lambda w: np.ones(w.shape[0]), p, alpha, quad_cfg)
    assert estimate.value == pytest.approx(1.0, rel=1e-3)
    assert estimate.method is Method.GRID_QUAD


@pytest.mark.parametrize("N", [0.5, 1.0, 3.0])
def test_weighted_norm_of_radial_power(N, quad_cfg):
    estimate = weighted_norm(lambda w: (1.0 - modulus_squared(w)) ** N, 1, 0.0, quad_cfg)
    assert estimate.value == pytest.approx(1.0 / (N + 1.0), rel=1e-8)


def test_weighted_norm_sup(quad_cfg):
    estimate = weighted_norm(lambda w: 2.0 * modulus_squared(w), "inf", 0.0, quad_cfg)
    assert estimate.value == pytest.approx(2.0, rel=1e-5)


def test_weighted_norm_monte_carlo_in_two_dimensions(coarse_cfg):
    estimate = weighted_norm(lambda w: np.ones(w.shape[0]), 2, 0.0, coarse_cfg, n=2)
    assert estimate.method is Method.MONTE_CARLO
    assert estimate.value == pytest.approx(1.0, rel=1e-3)
    power = weighted_norm(lambda w: 1.0 - modulus_squared(w), 1, 0.0, coarse_cfg, n=2)
    assert abs(power.value - 1.0 / 3.0) <= 4.0 * power.stderr + 1e-9


def test_weighted_norm_rejects_bad_weight(quad_cfg):
    with pytest.raises(DomainError):
        weighted_norm(lambda w: np.ones(w.shape[0]), 2, -1.0, quad_cfg)


def test_radial_norm_matches_weighted_norm(quad_cfg):
    radial = radial_norm(lambda r: 1.0 + r ** 2, 2, 0.5, 1, quad_cfg)
    full = weighted_norm(lambda w: 1.0 + modulus_squared(w), 2, 0.5, quad_cfg)
    assert radial.value == pytest.approx(full.value, rel=1e-10)


def test_radial_norm_in_higher_dimension():
    # ‖(1-|z|²)‖_{1,0} on B_2 = 2 B(2, 2) = 1/3
    estimate = radial_norm(lambda r: 1.0 - r ** 2, 1, 0.0, 2, QuadratureConfig())
    assert estimate.value == pytest.approx(1.0 / 3.0, rel=1e-8)


# --- divergence detection ----------------------------------------------------------

@pytest.mark.parametrize("coarse, fine, expected", [
    (1.0, 1.2, False),
    (1.0, 1.6, True),
    (1.0, math.inf, True),
    (0.0, 1e-13, False),
    (1.0 + 1.0j, 1.0 + 2.0j, True),
    (1.0 + 1.0j, 1.1 + 1.1j, False),
])
def test_unstable(coarse, fine, expected):
    assert unstable(coarse, fine) is expected


def test_refine_cutoff_flags_logarithmic_divergence(quad_cfg):
    def evaluate(cfg):
        return weighted_norm(lambda w: 1.0 / (1.0 - modulus_squared(w)), 1, 0.0, cfg)

    estimate = refine_cutoff(evaluate, quad_cfg)
    assert estimate.diverged
    assert estimate.value == pytest.approx(-math.log(1.0 - quad_cfg.boundary_cutoff ** 2), rel=1e-6)


def test_refine_cutoff_keeps_convergent_values(quad_cfg):
    def evaluate(cfg):
        return weighted_norm(lambda w: (1.0 - modulus_squared(w)) ** -0.5, 1, 0.0, cfg)

    estimate = refine_cutoff(evaluate, quad_cfg)
    assert not estimate.diverged
    assert estimate.value == pytest.approx(2.0, rel=1e-2)


def test_refine_cutoff_skips_when_cutoff_is_coarse():
    calls = []

    def evaluate(cfg):
        calls.append(cfg.boundary_cutoff)
        return NormEstimate(1.0)

    refine_cutoff(evaluate, QuadratureConfig(boundary_cutoff=COARSE_CUTOFF))
    assert calls == [COARSE_CUTOFF]
