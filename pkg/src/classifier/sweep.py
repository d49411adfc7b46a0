# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
(1/p, 1/q) 区域扫描
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import NamedTuple

import numpy as np

from src.classifier.boundedness import Verdict, classify
from src.classifier.exponents import ExtendedExponent
from src.core.errors import DomainError

logger = logging.getLogger(__name__)


class RegionPoint(NamedTuple):
    inv_p: float
    inv_q: float
    verdict: Verdict


def inverse_mesh(resolution):
    """The points of inverse_grid as two flat arrays (1/p, 1/q), same order."""
    if int(resolution) < 2:
        raise DomainError("grid resolution >= 2", f"got {resolution}")
    axis = np.linspace(0.0, 1.0, int(resolution))
    inv_p, inv_q = np.meshgrid(axis, axis, indexing="ij")
    return inv_p.ravel(), inv_q.ravel()


def inverse_grid(resolution):
    """Tensor grid of (1/p, 1/q) over [0, 1]², endpoints included, row-major in 1/p."""
    inv_p, inv_q = inverse_mesh(resolution)
    return [(float(ip), float(iq)) for ip, iq in zip(inv_p, inv_q)]


def _exponents(point):
    ip, iq = point
    if not (0.0 <= ip <= 1.0 and 0.0 <= iq <= 1.0):
        raise DomainError("grid points in [0,1]^2", f"got ({ip}, {iq})")
    return ExtendedExponent.from_inverse(ip), ExtendedExponent.from_inverse(iq)


def corollary_sweep(verdict_fn, grid, workers=None):
    """对任意判定函数 verdict_fn(p, q) 在网格上求值，输出顺序与输入一致

    Args:
        verdict_fn: 接受 (p, q) 两个 ExtendedExponent 并返回 Verdict 的函数
        grid: (1/p, 1/q) 点列
        workers: 线程数；None 或 1 时顺序执行

    Returns:
        list: RegionPoint 列表
    """
    grid = [tuple(map(float, point)) for point in grid]
    exponents = [_exponents(point) for point in grid]

    def evaluate(pair):
        return verdict_fn(*pair)

    if workers and workers > 1 and len(grid) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            verdicts = list(pool.map(evaluate, exponents, chunksize=256))
    else:
        verdicts = [evaluate(pair) for pair in exponents]
    logger.debug("Swept %d grid points (workers=%s)", len(grid), workers)
    return [RegionPoint(ip, iq, v) for (ip, iq), v in zip(grid, verdicts)]


def region_sweep(base, grid, workers=None):
    """classify over a (1/p, 1/q) grid for fixed KernelParameters `base`."""
    return corollary_sweep(lambda p, q: classify(base.at(p, q)), grid, workers=workers)
