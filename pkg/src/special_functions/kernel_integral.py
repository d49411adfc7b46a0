# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
核积分 I_{c,t}(z) = ∫ (1-|w|²)^t / |1-<z,w>|^c dv(w) 及其边界渐近
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Optional

import numpy as np
from scipy import special

from src.ball_quadrature.config import Method, NormEstimate
from src.ball_quadrature.sampler import monte_carlo_mean
from src.classifier.exponents import as_exponent
from src.core.errors import BoundaryError, ConvergenceError, DomainError
from src.special_functions.gamma import ball_mass
from src.special_functions.hypergeometric import SeriesConfig, hyp2f1

logger = logging.getLogger(__name__)


class AsymTag(str, Enum):
    BOUNDED = "BoundedRegime"
    LOG = "LogRegime"
    POWER = "PowerRegime"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class AsymRegime:
    """Boundary behaviour of I_{c,t}: bounded, logarithmic, or a negative power."""

    tag: AsymTag
    exponent: Optional[float] = None

    def normalizer(self, r):
        """Comparison function the kernel integral is equivalent to near |z| = 1."""
        gap = 1.0 - np.asarray(r, dtype=float) ** 2
        if self.tag is AsymTag.BOUNDED:
            return np.ones_like(gap)
        if self.tag is AsymTag.LOG:
            return np.log(1.0 / gap)
        return gap ** self.exponent


def _check_t(t):
    if not t > -1:
        raise DomainError("t > -1", f"got t={t}")


def asym_class(n, c, t):
    """按 n+1+t-c 的符号给出 I_{c,t} 的渐近类型"""
    _check_t(t)
    exponent = math.fsum([n, 1.0, t, -c])
    if exponent > 0:
        return AsymRegime(AsymTag.BOUNDED)
    if exponent == 0:
        return AsymRegime(AsymTag.LOG)
    return AsymRegime(AsymTag.POWER, exponent)


def kernel_in_lp(n, s, t, p, alpha):
    """z ↦ I_{s,t}(z) 是否属于 L^p_α（p 有限）"""
    p = as_exponent(p)
    if p.is_infinite:
        raise DomainError("p finite", "kernel_in_lp is stated for 1 <= p < inf")
    if not alpha > -1:
        raise DomainError("alpha > -1", f"got alpha={alpha}")
    if not t > -1:
        return False
    return math.fsum([n, 1.0, t, (alpha + 1) * p.inv, -s]) > 0


def zonal_average(n, c, x):
    """Sphere average of |1 - <ρz, ζ>|^{-c} with x = ρ²|z|², i.e. 2F1(c/2, c/2; n; x)."""
    return special.hyp2f1(0.5 * c, 0.5 * c, n, np.asarray(x, dtype=float))


@lru_cache(maxsize=64)
def _jacobi_rule(order, t, n):
    nodes, weights = special.roots_jacobi(order, t, n - 1)
    nodes.flags.writeable = False
    weights.flags.writeable = False
    return nodes, weights


def _radial_jacobi(n, r, c, t, order, cfg):
    y, w = _jacobi_rule(order, float(t), int(n))
    u = 0.5 * (1.0 + y)
    zonal = hyp2f1(0.5 * c, 0.5 * c, n, u * r * r, cfg)
    return n * 2.0 ** (-(t + n)) * float(np.dot(w, zonal))


def i_ct(n, r, c, t, cfg=None):
    """|z| = r 处的 I_{c,t}(z)，采用径向-带状约化

    I_{c,t}(r) = n ∫_0^1 u^{n-1} (1-u)^t 2F1(c/2, c/2; n; u r²) du，
    用权为 (1-y)^t (1+y)^{n-1} 的 Gauss-Jacobi 公式计算；节点数从 quad_nodes
    起加倍，直到相邻两次结果的相对差不超过 quad_rel_tol。

    Args:
        n: 维数
        r: 半径，0 <= r <= boundary_cutoff
        c: 核指数
        t: 权指数 (> -1)
        cfg: SeriesConfig

    Returns:
        float: I_{c,t}(r)

    Raises:
        DomainError: t <= -1 或 r < 0
        BoundaryError: r 超过截断半径
        ConvergenceError: 节点数达到 quad_max_nodes 仍未收敛
    """
    cfg = cfg or SeriesConfig()
    _check_t(t)
    if r < 0:
        raise DomainError("r >= 0", f"got r={r}")
    if r > cfg.boundary_cutoff:
        raise BoundaryError("r <= boundary_cutoff", f"r={r}, cutoff={cfg.boundary_cutoff}")
    if r == 0 or c == 0:
        return ball_mass(n, t)

    order = cfg.quad_nodes
    previous = _radial_jacobi(n, r, c, t, order, cfg)
    while True:
        order *= 2
        if order > cfg.quad_max_nodes:
            raise ConvergenceError(
                f"I_(c={c}, t={t})(r={r}) not converged with {cfg.quad_max_nodes} Jacobi nodes")
        current = _radial_jacobi(n, r, c, t, order, cfg)
        if abs(current - previous) <= cfg.quad_rel_tol * abs(current):
            logger.debug("I_(c=%g,t=%g)(r=%g) converged with %d nodes", c, t, r, order)
            return current
        previous = current


def i_ct_profile(n, c, t, r):
    """Closed form I_{c,t}(r) = 2F1(c/2, c/2; n+1+t; r²) / c_t, vectorised in r.

    Integrating the zonal series term by term against u^{n-1}(1-u)^t gives this
    single hypergeometric function; it stays cheap for r close to 1.
    """
    _check_t(t)
    radii = np.asarray(r, dtype=float)
    if np.any(radii < 0) or np.any(radii >= 1):
        raise DomainError("0 <= r < 1", f"got r={r}")
    values = ball_mass(n, t) * special.hyp2f1(0.5 * c, 0.5 * c, n + 1 + t, radii ** 2)
    return float(values) if values.ndim == 0 else values


def i_ct_mc(n, z, c, t, cfg):
    """Monte Carlo 估计 I_{c,t}(z)，抽样密度与权 (1-|w|²)^t 匹配

    Args:
        n: 维数
        z: B_n 中的点（n = 1 时可为复数标量）
        c: 核指数
        t: 权指数 (> -1)
        cfg: QuadratureConfig

    Returns:
        NormEstimate: 估计值与标准误
    """
    _check_t(t)
    point = np.asarray(z, dtype=complex).reshape(n)
    if np.linalg.norm(point) >= 1:
        raise DomainError("|z| < 1", f"got |z|={np.linalg.norm(point)}")

    def kernel(w):
        return np.abs(1.0 - w @ point.conj()) ** (-c)

    mean, stderr = monte_carlo_mean(kernel, n, t, cfg)
    return NormEstimate(mean.real, stderr, Method.MONTE_CARLO)


if __name__ == '__main__':
    for c_value in (1.0, 2.0, 3.0):
        regime = asym_class(1, c_value, 0.0)
        print(f"c={c_value}: {regime.tag}, I(0.9)={i_ct(1, 0.9, c_value, 0.0):.6f}")
