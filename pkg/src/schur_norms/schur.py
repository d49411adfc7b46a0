# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
1 < q < p < ∞ 情形的 Schur 检验函数与数值比值
"""

import logging
import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from src.ball_quadrature.config import COARSE_CUTOFF
from src.ball_quadrature.disk import radial_rule
from src.ball_quadrature.norms import unstable
from src.core.errors import DivergenceError, PreconditionError
from src.special_functions.gamma import c_alpha
from src.special_functions.kernel_integral import i_ct_profile, zonal_average

logger = logging.getLogger(__name__)


def _require_interior(params):
    p, q = params.p, params.q
    if p.is_infinite or q.is_infinite or q.is_one or not q < p:
        raise PreconditionError(f"Schur witness needs 1 < q < p < inf; got p={p}, q={q}")
    return p.value, q.value


def _epsilon_bounds(params):
    p, q = _require_interior(params)
    n, a, b, c = params.n, params.a, params.b, params.c
    alpha, beta = params.alpha, params.beta
    return (
        (p - q) / p * (a + (beta + 1) / q),
        (p - q) / (q * (p - 1)) * (b + 1 - (alpha + 1) / p),
        math.fsum([n, 1.0, a, b, (1 + beta) / q, -(1 + alpha) / p, -c]),
    )


@dataclass(frozen=True)
class SchurWitness:
    """Test function φ(w) = (1-|w|²)^{phi_exponent} for a chosen ε."""

    epsilon: float
    phi_exponent: float
    constraint_slacks: Tuple[float, float, float]

    @property
    def is_valid(self):
        return self.epsilon > 0 and all(s > 0 for s in self.constraint_slacks)

    @classmethod
    def for_epsilon(cls, params, epsilon):
        """任意 ε 下的检验函数；约束松弛量可以非正（is_valid 报告之），用于反例实验"""
        p, q = _require_interior(params)
        a, b, c = params.a, params.b, params.c
        alpha, beta = params.alpha, params.beta
        threshold = math.fsum([params.n, 1.0, a, b, (1 + beta) / q, -(1 + alpha) / p])
        slacks = (
            a + (beta + 1) / q - p * epsilon / (p - q),
            b + 1 - (alpha + 1) / p - q * (p - 1) * epsilon / (p - q),
            threshold - epsilon - c,
        )
        exponent = q * epsilon / (p - q) - (alpha + 1) / p
        return cls(float(epsilon), exponent, tuple(float(s) for s in slacks))

    def phi(self, r):
        return (1.0 - np.asarray(r, dtype=float) ** 2) ** self.phi_exponent

    def to_dict(self):
        return {"epsilon": self.epsilon, "phi_exponent": self.phi_exponent,
                "constraint_slacks": list(self.constraint_slacks), "is_valid": self.is_valid}


def schur_epsilon(params):
    """取 ε = ½·min(ε₁, ε₂, ε₃)，返回三条约束均严格成立的 Schur 检验函数

    Args:
        params: 1 < q < p < ∞ 的 Parameters

    Returns:
        SchurWitness

    Raises:
        PreconditionError: 任一松弛量 <= 0（此时 classify 不给出严格有界）
    """
    bounds = _epsilon_bounds(params)
    if min(bounds) <= 0:
        raise PreconditionError(f"Schur witness needs strictly positive slacks; got {bounds}")
    witness = SchurWitness.for_epsilon(params, 0.5 * min(bounds))
    logger.debug("Schur witness for %s: %s", params.to_dict(), witness.to_dict())
    return witness


def _outer_integrals(params, witness, radii, cfg):
    p, q = params.p.value, params.q.value
    n, a, b, c = params.n, params.a, params.b, params.c
    s, ws = radial_rule(cfg)
    # inner integral ∫ K(z,w) φ(w) dv_α(w) is radial: (1-|z|²)^a I_{c, b+e}(|z|)
    inner = (1.0 - s) ** a * i_ct_profile(n, c, b + witness.phi_exponent, np.sqrt(s))
    density = ws * n * s ** (n - 1) * (1.0 - s) ** (a + params.beta) * inner ** (q - 1)
    scale = c_alpha(n, params.beta) / c_alpha(n, params.alpha)
    outer = np.array([float(np.dot(density, zonal_average(n, c, s * u * u))) for u in radii])
    return scale * (1.0 - radii ** 2) ** (b - params.alpha) * outer


def _radii(grid):
    return np.array([float(np.linalg.norm(np.atleast_1d(np.asarray(g, dtype=complex)))) for g in grid])


def schur_ratio_profile(params, witness, grid, cfg):
    """各半径处的 S^K φ(u) / φ(u)

    S^K φ(u) = [∫ K(z,u) (∫ K(z,w) φ(w) dv_α(w))^{q-1} dv_β(z)]^{1/(p-1)}，
    其中 K(z,w) = c_α^{-1} (1-|z|²)^a (1-|w|²)^{b-α} |1-<z,w>|^{-c}。内层积分
    用闭式 I_{c,t}，外层对 |z|² 求积并用球面平均处理角向。

    Args:
        params: Parameters
        witness: SchurWitness
        grid: 半径或 B_n 中的点
        cfg: QuadratureConfig

    Returns:
        np.ndarray: 与 grid 对应的比值

    Raises:
        PreconditionError: witness.phi_exponent 使内层积分不收敛
        DivergenceError: 外层积分在截断细化下不稳定
    """
    p = params.p.value
    _require_interior(params)
    if not params.b + witness.phi_exponent > -1:
        raise PreconditionError(f"inner Schur integral diverges: b + phi_exponent = "
                                f"{params.b + witness.phi_exponent}")
    radii = _radii(grid)
    fine = _outer_integrals(params, witness, radii, cfg)
    if cfg.boundary_cutoff > COARSE_CUTOFF:
        coarse = _outer_integrals(params, witness, radii, cfg.with_cutoff(COARSE_CUTOFF))
        moved = [u for u, lo, hi in zip(radii, coarse, fine) if unstable(lo, hi)]
        if moved:
            raise DivergenceError(f"Schur outer integral unstable under cutoff refinement at radii {moved}")
    return fine ** (1.0 / (p - 1)) / witness.phi(radii)


def schur_ratio(params, witness, grid, cfg):
    """max over the grid of S^K φ / φ."""
    if not witness.is_valid:
        logger.warning("Schur witness %s violates its constraints for %s", witness.to_dict(), params.to_dict())
    return float(np.max(schur_ratio_profile(params, witness, grid, cfg)))


if __name__ == '__main__':
    from src.ball_quadrature.config import QuadratureConfig
    from src.classifier.boundedness import Parameters

    example = Parameters(n=1, a=0, b=0, c=1, alpha=0, beta=0, p=4, q=2)
    w = schur_epsilon(example)
    print(w.to_dict())
    print(schur_ratio_profile(example, w, [0.0, 0.9, 0.99, 0.999], QuadratureConfig()))
