# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
T_{a,b,c} / S_{a,b,c} 型积分算子的数值求值
"""

import logging
import math
from dataclasses import dataclass, replace

import numpy as np

from src.ball_quadrature.config import COARSE_CUTOFF, Method
from src.ball_quadrature.disk import disk_rule
from src.ball_quadrature.norms import unstable
from src.ball_quadrature.sampler import monte_carlo_mean
from src.core.errors import BoundaryError, DomainError

logger = logging.getLogger(__name__)

# evaluation points per matrix product on the disk grid
BATCH_SIZE = 32


@dataclass(frozen=True)
class KernelSpec:
    """Exponents (a, b, c) of an integral operator and its kernel type."""

    a: float
    b: float
    c: float
    modulus_kernel: bool = False

    @property
    def kind(self):
        return "S" if self.modulus_kernel else "T"

    def kernel(self, inner):
        """(1-<z,w>)^{-c}，S 型取模；inner 为 <z,w> 的数组"""
        gap = 1.0 - np.asarray(inner, dtype=complex)
        if self.modulus_kernel:
            return np.abs(gap) ** (-self.c)
        if self.c == 0:
            return np.ones_like(gap)
        # principal branch; Re(1-<z,w>) > 0 on the ball
        return np.exp(-self.c * np.log(gap))

    def to_dict(self):
        return {"a": self.a, "b": self.b, "c": self.c, "kind": self.kind}


@dataclass(frozen=True)
class OperatorValue:
    """Complex operator value at one point, with error estimate and divergence flag."""

    value: complex
    stderr: float = 0.0
    method: Method = Method.GRID_QUAD
    diverged: bool = False

    @property
    def real(self):
        return self.value.real

    def __abs__(self):
        return abs(self.value)

    def scaled(self, factor):
        return replace(self, value=self.value * factor, stderr=self.stderr * abs(factor))

    def to_dict(self):
        return {"re": self.value.real, "im": self.value.imag, "stderr": self.stderr,
                "method": self.method.value, "diverged": self.diverged}


def as_points(z, n):
    """把单点或点列整理成 (k, n) 复数数组"""
    points = np.asarray(z, dtype=complex)
    if points.ndim == 0:
        points = points.reshape(1, 1)
    elif points.ndim == 1:
        points = points.reshape(1, n) if points.shape[0] == n and n > 1 else points.reshape(-1, 1)
    if points.shape[1] != n:
        raise DomainError("points lie in C^n", f"expected dimension {n}, got {points.shape[1]}")
    return points


def _check_inside(points, cfg):
    radius = float(np.max(np.linalg.norm(points, axis=1)))
    if radius > cfg.boundary_cutoff:
        raise BoundaryError("|z| <= boundary_cutoff", f"|z|={radius}, cutoff={cfg.boundary_cutoff}")


def _evaluate_disk(spec, f, points, cfg):
    nodes, weights = disk_rule(cfg)
    grid = nodes[:, None]
    density = weights * (1.0 - np.abs(nodes) ** 2) ** spec.b * np.asarray(f(grid))
    values = np.empty(points.shape[0], dtype=complex)
    for start in range(0, points.shape[0], BATCH_SIZE):
        block = points[start:start + BATCH_SIZE, 0]
        inner = block[:, None] * nodes.conj()[None, :]
        values[start:start + BATCH_SIZE] = spec.kernel(inner) @ density
    return values, np.zeros(points.shape[0])


def _evaluate_ball(spec, f, points, cfg):
    values = np.empty(points.shape[0], dtype=complex)
    errors = np.empty(points.shape[0])
    for i, point in enumerate(points):
        def integrand(w, point=point):
            return spec.kernel(w.conj() @ point) * np.asarray(f(w))

        # sampling density (1-|w|²)^b absorbs the weight of the integrand
        values[i], errors[i] = monte_carlo_mean(integrand, points.shape[1], spec.b, cfg)
    return values, errors


def evaluate_operator(spec, f, zs, cfg, n=1):
    """在多个点上求 (1-|z|²)^a ∫ (1-|w|²)^b K(z,w) f(w) dv(w)，不做截断细化

    Args:
        spec: KernelSpec
        f: 接受 (m, n) 复数点阵、返回长度 m 数组的函数
        zs: 点列，形如 (k, n)（n = 1 时可为复数序列）
        cfg: QuadratureConfig
        n: 维数

    Returns:
        tuple: (values, stderrs, method)，values 为复数数组
    """
    points = as_points(zs, n)
    _check_inside(points, cfg)
    if n == 1:
        values, errors = _evaluate_disk(spec, f, points, cfg)
        method = Method.GRID_QUAD
    else:
        if not spec.b > -1:
            logger.warning("Weight exponent b=%g is not integrable; operator diverges", spec.b)
            inf = np.full(points.shape[0], math.inf)
            return inf.astype(complex), inf, Method.MONTE_CARLO
        values, errors = _evaluate_ball(spec, f, points, cfg)
        method = Method.MONTE_CARLO
    factor = (1.0 - np.linalg.norm(points, axis=1) ** 2) ** spec.a
    return values * factor, errors * factor, method


def apply_operator(spec, f, z, cfg, n=1):
    """单点求值 (Tf)(z) 或 (Sf)(z)，并以粗截断 1-1e-4 复算检测发散

    Args:
        spec: KernelSpec
        f: 被积函数
        z: B_n 中的点
        cfg: QuadratureConfig（其截断半径为细截断）
        n: 维数

    Returns:
        OperatorValue: 复数值、标准误、方法与 diverged 标记
    """
    values, errors, method = evaluate_operator(spec, f, z, cfg, n)
    fine = complex(values[0])
    result = OperatorValue(fine, float(errors[0]), method)
    if not np.isfinite(fine):
        return replace(result, diverged=True)
    if cfg.boundary_cutoff > COARSE_CUTOFF and np.linalg.norm(as_points(z, n)) <= COARSE_CUTOFF:
        coarse_values, _, _ = evaluate_operator(spec, f, z, cfg.with_cutoff(COARSE_CUTOFF), n)
        coarse = complex(coarse_values[0])
        if unstable(coarse, fine, atol=max(1e-12, 4.0 * result.stderr)):
            logger.warning("%s-operator (a=%g, b=%g, c=%g) unstable under cutoff refinement: %s -> %s",
                           spec.kind, spec.a, spec.b, spec.c, coarse, fine)
            return replace(result, diverged=True)
    return result


if __name__ == '__main__':
    from src.ball_quadrature.config import QuadratureConfig

    spec = KernelSpec(0.0, 0.0, 2.0)
    one_minus_square = lambda w: 1.0 - np.abs(w[:, 0]) ** 2
    print(apply_operator(spec, one_minus_square, 0.5, QuadratureConfig()))
