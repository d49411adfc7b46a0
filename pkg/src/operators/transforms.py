# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
Berezin 变换、加权 Bergman 投影、伴随算子与再生恒等式残差
"""

import logging
import math

import numpy as np

from src.classifier.boundedness import adjoint_parameters
from src.operators.kernels import KernelSpec, apply_operator, as_points
from src.special_functions.gamma import c_alpha

logger = logging.getLogger(__name__)


def berezin_spec(n, alpha):
    x = n + 1 + alpha
    return KernelSpec(x, alpha, 2.0 * x, modulus_kernel=True)


def projection_spec(n, gamma):
    return KernelSpec(0.0, gamma, n + 1 + gamma)


def berezin(alpha, f, z, cfg, n=1):
    """B_α f(z) = ∫ (1-|z|²)^{n+1+α} |1-<z,w>|^{-2(n+1+α)} f(w) dv_α(w)，即 c_α·S f(z)."""
    value = apply_operator(berezin_spec(n, alpha), f, z, cfg, n)
    return value.scaled(c_alpha(n, alpha))


def bergman_project(gamma, f, z, cfg, n=1):
    """P_γ f(z) = ∫ f(w) (1-<z,w>)^{-(n+1+γ)} dv_γ(w)，即 c_γ·T_{0,γ,n+1+γ} f(z)."""
    value = apply_operator(projection_spec(n, gamma), f, z, cfg, n)
    return value.scaled(c_alpha(n, gamma))


def reproducing_residual(alpha, c, z, xi, cfg, n=1):
    """|B_α[w ↦ (1-<z,w>)^{-c}](ξ) - (1-<z,ξ>)^{-c}|

    Args:
        alpha: 权指数
        c: 幂次
        z: 固定点
        xi: Berezin 变换的求值点
        cfg: QuadratureConfig
        n: 维数

    Returns:
        float: 残差；求值发散时为 inf
    """
    z_point = as_points(z, n)[0]
    xi_point = as_points(xi, n)[0]

    def antiholomorphic(w):
        gap = 1.0 - w.conj() @ z_point
        return np.exp(-c * np.log(gap))

    transformed = berezin(alpha, antiholomorphic, xi_point, cfg, n)
    if transformed.diverged:
        logger.warning("Berezin transform diverged at xi=%s; residual is infinite", xi_point)
        return math.inf
    expected = np.exp(-c * np.log(1.0 - np.vdot(xi_point, z_point)))
    return float(abs(transformed.value - expected))


def adjoint_scale(params):
    """T* 与 T_{a*,b*,c*} 之间的正常数 c_{α*} / c_{β*}."""
    adjoint = adjoint_parameters(params)
    return c_alpha(params.n, adjoint.alpha) / c_alpha(params.n, adjoint.beta)


def apply_adjoint(params, g, w, cfg, modulus_kernel=False):
    """(T* g)(w)（modulus_kernel 为真时为 S*），经 adjoint_parameters 化为普通的 T/S 型求值

    Args:
        params: Parameters，描述 T: L^p_α -> L^q_β
        g: L^{q'}_β 中的函数
        w: 求值点
        cfg: QuadratureConfig
        modulus_kernel: 是否取 S 型核

    Returns:
        OperatorValue
    """
    adjoint = adjoint_parameters(params)
    spec = KernelSpec(adjoint.a, adjoint.b, adjoint.c, modulus_kernel)
    value = apply_operator(spec, g, w, cfg, params.n)
    return value.scaled(adjoint_scale(params))
