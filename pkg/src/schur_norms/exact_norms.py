# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
S_{a,b,c} 在 p = ∞ 行、q = 1 列与 q = ∞ 列上的精确算子范数
"""

import logging

import numpy as np

from src.ball_quadrature.config import COARSE_CUTOFF, Method, NormEstimate
from src.ball_quadrature.norms import radial_norm, refine_cutoff, unstable
from src.classifier.exponents import as_exponent
from src.core.errors import DomainError, PreconditionError
from src.special_functions.gamma import c_alpha
from src.special_functions.kernel_integral import i_ct_profile

logger = logging.getLogger(__name__)

# points per axis for the inner supremum of the p = 1 kernel norm
SUP_GRID = 2001


def default_radii():
    """0 and 1 - 10^{-k/4}, k = 1..24: quarter-decades up to 1 - 1e-6."""
    return [0.0] + [1.0 - 10.0 ** (-k / 4.0) for k in range(1, 25)]


def _require_s_type(spec):
    if not spec.modulus_kernel:
        raise PreconditionError("exact norms are stated for the nonnegative S-type kernel")


def _radial_profile(weight_exponent, n, c, t):
    def profile(r):
        return (1.0 - r ** 2) ** weight_exponent * i_ct_profile(n, c, t, r)
    return profile


def exact_norm_p_infty(spec, n, beta, q, cfg):
    """‖S_{a,b,c}‖_{L^∞ -> L^q_β} = ‖(1-|z|²)^a I_{c,b}(|z|)‖_{q,β}

    Args:
        spec: S 型 KernelSpec
        n: 维数
        beta: 目标空间权指数
        q: 有限指数
        cfg: QuadratureConfig

    Returns:
        NormEstimate: 截断细化不稳定时 diverged 为真
    """
    _require_s_type(spec)
    q = as_exponent(q)
    if q.is_infinite:
        raise DomainError("q finite", "use sup_kernel_norm for the q = inf column")
    if not spec.b > -1:
        return NormEstimate.divergent()
    profile = _radial_profile(spec.a, n, spec.c, spec.b)
    result = refine_cutoff(lambda c: radial_norm(profile, q, beta, n, c), cfg)
    logger.debug("exact_norm_p_infty(a=%g, b=%g, c=%g, q=%s) = %s", spec.a, spec.b, spec.c, q, result)
    return result


def exact_norm_q1(spec, n, alpha, beta, p, cfg):
    """‖S_{a,b,c}‖_{L^p_α -> L^1_β} = ‖G‖_{p',α}，G(w) = (c_β/c_α)(1-|w|²)^{b-α} I_{c,a+β}(|w|)

    G 是核对 dv_β(z) 积分后的函数；p = ∞ 时 p' = 1，p = 1 时 p' = ∞。

    Returns:
        NormEstimate
    """
    _require_s_type(spec)
    conjugate = as_exponent(p).conjugate()
    t = spec.a + beta
    if not t > -1:
        return NormEstimate.divergent()
    scale = c_alpha(n, beta) / c_alpha(n, alpha)
    base = _radial_profile(spec.b - alpha, n, spec.c, t)

    def profile(r):
        return scale * base(r)

    return refine_cutoff(lambda c: radial_norm(profile, conjugate, alpha, n, c), cfg)


def _peak(c, x):
    # sup over directions of |1-<z,w>|^{-c} with |z||w| = x
    return (1.0 - x) ** (-c) if c >= 0 else (1.0 + x) ** (-c)


def _kernel_norm_at(spec, n, alpha, conjugate, r, cutoff):
    weight = (1.0 - r * r) ** spec.a
    if conjugate.is_infinite:
        if spec.b < alpha:
            return np.inf
        s = np.union1d(np.linspace(0.0, cutoff, SUP_GRID), 1.0 - np.geomspace(1.0, 1.0 - cutoff, SUP_GRID))
        inner = np.max((1.0 - s * s) ** (spec.b - alpha) * _peak(spec.c, r * s))
        return weight * float(inner) / c_alpha(n, alpha)
    exponent = conjugate.value
    t = (spec.b - alpha) * exponent + alpha
    if not t > -1:
        return np.inf
    integral = i_ct_profile(n, spec.c * exponent, t, r)
    return c_alpha(n, alpha) ** (1.0 / exponent - 1.0) * weight * integral ** (1.0 / exponent)


def sup_kernel_norm(spec, n, alpha, p, grid=None, cfg=None):
    """max over the z-grid of ‖K(z,·)‖_{L^{p'}_α}, K(z,w) = c_α^{-1}(1-|z|²)^a(1-|w|²)^{b-α}|1-<z,w>|^{-c}

    The kernel norm depends on |z| only. Grid points beyond 1 - 1e-4 are the
    refinement: if including them moves the maximum by more than 50 % the
    estimate is flagged divergent.
    """
    _require_s_type(spec)
    conjugate = as_exponent(p).conjugate()
    grid = default_radii() if grid is None else grid
    radii = np.array([float(np.linalg.norm(np.atleast_1d(np.asarray(g, dtype=complex)))) for g in grid])
    if np.any(radii >= 1):
        raise DomainError("grid points inside B_n", f"max radius {radii.max()}")
    cutoff = 1.0 - 1e-6 if cfg is None else cfg.boundary_cutoff
    values = np.array([_kernel_norm_at(spec, n, alpha, conjugate, r, cutoff) for r in radii])
    if not np.all(np.isfinite(values)):
        return NormEstimate.divergent()
    fine = float(values.max())
    inner = radii <= COARSE_CUTOFF
    diverged = bool(inner.any() and inner.sum() < len(radii) and unstable(float(values[inner].max()), fine))
    if diverged:
        logger.info("sup_kernel_norm grows toward the boundary: %.6g -> %.6g", values[inner].max(), fine)
    return NormEstimate(fine, 0.0, Method.CLOSED_FORM, diverged)


if __name__ == '__main__':
    from src.ball_quadrature.config import QuadratureConfig
    from src.operators.kernels import KernelSpec

    cfg = QuadratureConfig()
    print(exact_norm_p_infty(KernelSpec(0, 0, 2, True), 1, 0.0, 1, cfg))
    print(exact_norm_q1(KernelSpec(0, 0, 2, True), 1, 0.0, 0.0, "inf", cfg))
    print(sup_kernel_norm(KernelSpec(2, 0, 4, True), 1, 0.0, "inf"))
