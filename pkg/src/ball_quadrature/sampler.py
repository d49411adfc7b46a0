# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
单位球 B_n 上按权 (1-|w|²)^t 的重要性抽样
"""

import logging
import math
from typing import Iterator, NamedTuple

import numpy as np

from src.special_functions.gamma import ball_mass
from src.core.errors import DomainError

logger = logging.getLogger(__name__)

CHUNK_SIZE = 65536


class BallSample(NamedTuple):
    points: np.ndarray   # (m, n) complex
    weights: np.ndarray  # (m,) importance weights, 0 beyond the cutoff


def _generator(seed, chunk):
    # counter-based stream keyed by (seed, chunk index)
    key = np.array([int(seed), int(chunk)], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _draw(n, t, seed, chunk, size):
    rng = _generator(seed, chunk)
    u = rng.beta(n, t + 1.0, size)
    g = rng.standard_normal((size, n)) + 1j * rng.standard_normal((size, n))
    zeta = g / np.linalg.norm(g, axis=1, keepdims=True)
    return np.sqrt(u)[:, None] * zeta


def ball_sampler(n, t, cfg) -> Iterator[BallSample]:
    """按块产生样本 w = r·ζ，其中 ζ 在复球面上均匀分布，r² ~ Beta(n, t+1)

    权重为常数 1/c_t（截断半径之外为 0），因此 mean(weights · g(w)) 是
    ∫_{|w|<=cutoff} g(w)(1-|w|²)^t dv(w) 的无偏估计。

    Args:
        n: 维数
        t: 权指数 (> -1)
        cfg: QuadratureConfig，决定样本数、截断半径和种子

    Yields:
        BallSample: 每块最多 CHUNK_SIZE 个样本
    """
    if not t > -1:
        raise DomainError("t > -1", f"got t={t}")
    mass = ball_mass(n, t)
    remaining, chunk = cfg.mc_samples, 0
    while remaining > 0:
        size = min(CHUNK_SIZE, remaining)
        points = _draw(n, t, cfg.seed, chunk, size)
        inside = np.linalg.norm(points, axis=1) <= cfg.boundary_cutoff
        yield BallSample(points, np.where(inside, mass, 0.0))
        remaining -= size
        chunk += 1


def monte_carlo_mean(g, n, t, cfg):
    """∫ g(w)(1-|w|²)^t dv(w) over the truncated ball, with its standard error.

    Chunk sums are reduced in chunk order with math.fsum, so the result only
    depends on (cfg, n, t), not on how the chunks were produced.
    """
    re_sums, im_sums, sq_sums = [], [], []
    total = 0
    for sample in ball_sampler(n, t, cfg):
        values = np.asarray(g(sample.points)) * sample.weights
        re_sums.append(float(np.sum(values.real)))
        im_sums.append(float(np.sum(values.imag)) if np.iscomplexobj(values) else 0.0)
        sq_sums.append(float(np.sum(np.abs(values) ** 2)))
        total += values.shape[0]
    mean = complex(math.fsum(re_sums), math.fsum(im_sums)) / total
    second = math.fsum(sq_sums) / total
    variance = max(second - abs(mean) ** 2, 0.0) * total / max(total - 1, 1)
    stderr = math.sqrt(variance / total)
    logger.debug("Monte Carlo mean over %d samples: %s ± %.3g", total, mean, stderr)
    return mean, stderr
