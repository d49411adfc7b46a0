# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
测试函数族在 T_{a,b,c} 下的闭式像及其目标范数
"""

import logging
import math
from typing import Callable, NamedTuple

import numpy as np
from scipy import special

from src.ball_quadrature.config import Method, NormEstimate
from src.classifier.exponents import as_exponent
from src.core.errors import DomainError, PreconditionError
from src.operators.families import KernelFXiEqual, KernelFXiLess, PowerFN
from src.special_functions.gamma import c_alpha
from src.special_functions.kernel_integral import i_ct_profile

logger = logging.getLogger(__name__)

# radii sampled for the q = ∞ supremum of a closed-form image
SUP_GRID = 4001


class ClosedImage(NamedTuple):
    """z ↦ constant·(1-|z|²)^a·(1-<z,ξ>)^{-c}, evaluated on (k, n) point arrays."""

    evaluate: Callable
    constant: float
    xi: tuple = ()

    def __call__(self, z):
        return self.evaluate(z)


def _require_t_type(spec):
    if spec.modulus_kernel:
        raise PreconditionError("closed-form images are stated for the T-type kernel")


def _weight_factor(points, a):
    return (1.0 - np.linalg.norm(points, axis=1) ** 2) ** a


def closed_image_fn(spec, n, N):
    """T_{a,b,c} f_N = C_N (1-|z|²)^a，C_N = n! Γ(b+N+1) / Γ(n+b+N+1)

    核的展开式中除常数项外的各项都被角向对称性消去。

    Args:
        spec: T 型 KernelSpec
        n: 维数
        N: f_N 的指数

    Returns:
        ClosedImage: 像函数与常数 C_N

    Raises:
        DomainError: b + N <= -1
    """
    _require_t_type(spec)
    if not spec.b + N > -1:
        raise DomainError("b + N > -1", f"got b={spec.b}, N={N}")
    constant = float(np.exp(special.gammaln(n + 1) + special.gammaln(spec.b + N + 1)
                            - special.gammaln(n + spec.b + N + 1)))
    a = spec.a
    return ClosedImage(lambda z: constant * _weight_factor(np.atleast_2d(z), a), constant)


def _family(variant, xi):
    if isinstance(variant, (KernelFXiEqual, KernelFXiLess)):
        return variant
    if variant in (KernelFXiEqual, KernelFXiLess):
        return variant(xi)
    raise PreconditionError(f"closed_image_fxi needs an f_xi family, got {variant!r}")


def closed_image_fxi(spec, n, alpha, xi, variant):
    """f_ξ 在 T_{a,b,c} 下的闭式像

    b = α 时由 Berezin 变换固定反全纯函数得到常数 1/c_α；α < b 时由权 b 的
    再生公式得到常数 (1-|ξ|²)^{b-α} / c_b。两者均可在 z = 0 处直接核对。

    Args:
        spec: T 型 KernelSpec
        n: 维数
        alpha: 源空间权指数
        xi: B_n 中的点（variant 为实例时可为 None）
        variant: KernelFXiEqual / KernelFXiLess 类或实例

    Returns:
        ClosedImage

    Raises:
        PreconditionError: 族与 spec 不匹配
    """
    _require_t_type(spec)
    family = _family(variant, xi)
    point = family.point
    if point.shape[0] != n:
        raise DomainError("xi lies in C^n", f"expected dimension {n}, got {point.shape[0]}")
    if isinstance(family, KernelFXiEqual):
        if spec.b != alpha:
            raise PreconditionError(f"f_xi with b = alpha requires b == alpha; got b={spec.b}, alpha={alpha}")
        constant = 1.0 / c_alpha(n, alpha)
    else:
        if not alpha < spec.b:
            raise PreconditionError(f"f_xi with alpha < b requires alpha < b; got b={spec.b}, alpha={alpha}")
        constant = (1.0 - family.modulus ** 2) ** (spec.b - alpha) / c_alpha(n, spec.b)
    a, c = spec.a, spec.c

    def evaluate(z):
        points = np.atleast_2d(np.asarray(z, dtype=complex))
        gap = 1.0 - points @ point.conj()
        return constant * _weight_factor(points, a) * np.exp(-c * np.log(gap))

    return ClosedImage(evaluate, constant, family.xi)


def _radial_sup(profile, radius):
    rho = np.union1d(np.linspace(0.0, radius, SUP_GRID),
                     1.0 - np.geomspace(1.0, 1.0 - radius, SUP_GRID))
    return float(np.max(profile(rho)))


def image_norm(spec, n, family, alpha, beta, q, cutoff=None):
    """闭式像在 L^q_β 中的范数

    f_N 的像为 C_N (1-|z|²)^a；f_ξ 的像为 C (1-|z|²)^a (1-<z,ξ>)^{-c}，其 q 次
    积分等于 C^q c_β I_{cq, aq+β}(|ξ|)。aq+β <= -1 时像不在 L^q_β 中。q = ∞ 且
    像在边界处无界时，返回 cutoff 处的值并标记 diverged。

    Returns:
        NormEstimate: ClosedForm 方法
    """
    q = as_exponent(q)
    a, c = spec.a, spec.c
    if isinstance(family, PowerFN):
        constant = closed_image_fn(spec, n, family.N).constant
        if q.is_infinite:
            if a >= 0:
                return NormEstimate(constant, 0.0, Method.CLOSED_FORM)
            if cutoff is None:
                return NormEstimate.divergent(Method.CLOSED_FORM)
            return NormEstimate(constant * (1.0 - cutoff ** 2) ** a, 0.0, Method.CLOSED_FORM, True)
        t = a * q.value + beta
        if not t > -1:
            return NormEstimate.divergent(Method.CLOSED_FORM)
        ratio = c_alpha(n, beta) / c_alpha(n, t)
        return NormEstimate(constant * ratio ** (1.0 / q.value), 0.0, Method.CLOSED_FORM)

    image = closed_image_fxi(spec, n, alpha, None, family)
    r = family.modulus
    if q.is_infinite:
        if a < 0 and cutoff is None:
            return NormEstimate.divergent(Method.CLOSED_FORM)
        radius = 1.0 - 1e-12 if cutoff is None else cutoff

        def profile(rho):
            x = rho * r
            peak = (1.0 - x) ** (-c) if c >= 0 else (1.0 + x) ** (-c)
            return image.constant * (1.0 - rho ** 2) ** a * peak

        return NormEstimate(_radial_sup(profile, radius), 0.0, Method.CLOSED_FORM, a < 0)
    t = a * q.value + beta
    if not t > -1:
        return NormEstimate.divergent(Method.CLOSED_FORM)
    integral = c_alpha(n, beta) * i_ct_profile(n, c * q.value, t, r)
    if not math.isfinite(integral):
        return NormEstimate.divergent(Method.CLOSED_FORM)
    return NormEstimate(image.constant * integral ** (1.0 / q.value), 0.0, Method.CLOSED_FORM)
