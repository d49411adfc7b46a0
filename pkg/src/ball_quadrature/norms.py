# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
加权 L^p_α 范数（含 p = ∞）与截断细化发散检测
"""

import cmath
import logging

import numpy as np

from src.ball_quadrature.config import COARSE_CUTOFF, DIVERGENCE_RATIO, Method, NormEstimate
from src.ball_quadrature.disk import disk_rule, radial_rule
from src.ball_quadrature.sampler import monte_carlo_mean
from src.classifier.exponents import as_exponent
from src.core.errors import DomainError
from src.special_functions.gamma import c_alpha

logger = logging.getLogger(__name__)


def _finite_power_sum(values, weights, p):
    total = float(np.dot(weights, np.abs(values) ** p))
    return total ** (1.0 / p) if total > 0 else 0.0


def weighted_norm(f, p, alpha, cfg, n=1):
    """截断球 |z| <= cutoff 上的 ‖f‖_{p,α}

    n = 1 时使用确定性的圆盘求积；n >= 2 时使用按 dv_α 抽样的 Monte Carlo，
    标准误由 delta 方法给出。p = ∞ 时取求值点上 |f| 的最大值。

    Args:
        f: 接受形如 (m, n) 的复数点阵、返回长度 m 数组的函数
        p: 指数
        alpha: 权指数 (> -1)
        cfg: QuadratureConfig
        n: 维数

    Returns:
        NormEstimate: 范数估计
    """
    p = as_exponent(p)
    if not alpha > -1:
        raise DomainError("alpha > -1", f"got alpha={alpha}")

    if n == 1:
        nodes, weights = disk_rule(cfg)
        values = np.asarray(f(nodes[:, None]))
        if p.is_infinite:
            return NormEstimate(float(np.max(np.abs(values))), 0.0, Method.GRID_QUAD)
        measure = weights * c_alpha(1, alpha) * (1.0 - np.abs(nodes) ** 2) ** alpha
        return NormEstimate(_finite_power_sum(values, measure, p.value), 0.0, Method.GRID_QUAD)

    if p.is_infinite:
        best = [0.0]

        def track(points):
            best[0] = max(best[0], float(np.max(np.abs(f(points)))))
            return np.zeros(points.shape[0])

        monte_carlo_mean(track, n, alpha, cfg)
        return NormEstimate(best[0], 0.0, Method.MONTE_CARLO)

    exponent = p.value
    scale = c_alpha(n, alpha)
    mean, stderr = monte_carlo_mean(lambda w: scale * np.abs(f(w)) ** exponent, n, alpha, cfg)
    mean = mean.real
    if mean <= 0:
        return NormEstimate(0.0, 0.0, Method.MONTE_CARLO)
    value = mean ** (1.0 / exponent)
    return NormEstimate(value, value * stderr / (exponent * mean), Method.MONTE_CARLO)


def radial_norm(g, p, alpha, n, cfg):
    """‖g(|z|)‖_{p,α} for a radial function g of r = |z|, by the s = r² rule.

    ∫ |g|^p dv_α = c_α n ∫_0^{cutoff²} s^{n-1} (1-s)^α |g(√s)|^p ds.
    """
    p = as_exponent(p)
    s, ws = radial_rule(cfg)
    values = np.asarray(g(np.sqrt(s)))
    if p.is_infinite:
        return NormEstimate(float(np.max(np.abs(values))), 0.0, Method.GRID_QUAD)
    if not np.all(np.isfinite(values)):
        return NormEstimate.divergent()
    measure = ws * c_alpha(n, alpha) * n * s ** (n - 1) * (1.0 - s) ** alpha
    return NormEstimate(_finite_power_sum(values, measure, p.value), 0.0, Method.GRID_QUAD)


def unstable(coarse, fine, atol=1e-12):
    """True when the fine value moved by more than 50 % of the coarse one.

    Values may be complex; a change below `atol` never counts.
    """
    if not (cmath.isfinite(coarse) and cmath.isfinite(fine)):
        return True
    change = abs(fine - coarse)
    if change <= atol:
        return False
    return change > (DIVERGENCE_RATIO - 1.0) * abs(coarse)


def refine_cutoff(evaluate, cfg):
    """在粗截断 1-1e-4 与配置截断下各求值一次，变化超过 50% 时标记发散

    Args:
        evaluate: 接受 QuadratureConfig、返回 NormEstimate 的函数
        cfg: 细截断配置

    Returns:
        NormEstimate: 细截断下的结果，附带 diverged 标记
    """
    fine = evaluate(cfg)
    if cfg.boundary_cutoff <= COARSE_CUTOFF:
        return fine
    coarse = evaluate(cfg.with_cutoff(COARSE_CUTOFF))
    if fine.diverged or unstable(coarse.value, fine.value):
        logger.info("Cutoff refinement unstable: %.6g -> %.6g", coarse.value, fine.value)
        return fine.flagged(True)
    return fine
