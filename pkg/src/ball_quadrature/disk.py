# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
单位圆盘上的张量积求积公式（r² 方向 Gauss-Legendre，角度方向梯形）
"""

from functools import lru_cache

import numpy as np
from scipy.special import roots_legendre


@lru_cache(maxsize=32)
def _legendre(order):
    nodes, weights = roots_legendre(order)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def radial_breakpoints(cutoff_sq):
    """Panel ends 0, 1/2, 3/4, ..., 1 - 2^-k below cutoff², then cutoff² itself."""
    points = [0.0]
    k = 1
    while 1.0 - 2.0 ** -k < cutoff_sq:
        points.append(1.0 - 2.0 ** -k)
        k += 1
    points.append(cutoff_sq)
    return np.array(points)


def radial_rule(cfg):
    """s = r² 上的复合 Gauss-Legendre 公式，区间为 [0, cutoff²]

    面板向 s = 1 二进加密，使 (1-s)^t 一类的端点行为在每个面板内都是光滑的。

    Returns:
        tuple: (nodes, weights)，weights 之和为 cutoff²
    """
    x, w = _legendre(cfg.radial_nodes)
    ends = radial_breakpoints(cfg.boundary_cutoff ** 2)
    lo, hi = ends[:-1, None], ends[1:, None]
    half = 0.5 * (hi - lo)
    nodes = (lo + half * (1.0 + x[None, :])).ravel()
    weights = (half * w[None, :]).ravel()
    return nodes, weights


def disk_rule(cfg):
    """n = 1 的圆盘求积公式，对应归一化面积测度 dA = dx dy / π

    Args:
        cfg: QuadratureConfig

    Returns:
        tuple: (nodes, weights)，nodes 为复数点，weights 之和为 cutoff²
    """
    s, ws = radial_rule(cfg)
    m = cfg.angular_nodes
    theta = 2.0 * np.pi * np.arange(m) / m
    radius = np.sqrt(s)
    nodes = (radius[:, None] * np.exp(1j * theta)[None, :]).ravel()
    weights = np.repeat(ws / m, m)
    return nodes, weights
