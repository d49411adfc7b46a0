# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
Gauss 超几何级数 2F1(A, B; C; x)，x ∈ [0, 1)
"""

import logging
from dataclasses import dataclass

import numpy as np

from src.core.errors import BoundaryError, ConvergenceError, DomainError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SeriesConfig:
    """Budgets for the hypergeometric series and the radial Gauss-Jacobi rule."""

    max_terms: int = 200000
    rel_tol: float = 1e-14
    boundary_cutoff: float = 1 - 1e-6
    quad_nodes: int = 64
    quad_max_nodes: int = 4096
    quad_rel_tol: float = 1e-9

    def __post_init__(self):
        if self.max_terms < 1:
            raise DomainError("max_terms >= 1", f"got {self.max_terms}")
        if not self.rel_tol > 0:
            raise DomainError("rel_tol > 0", f"got {self.rel_tol}")
        if not 0 < self.boundary_cutoff < 1:
            raise DomainError("0 < boundary_cutoff < 1", f"got {self.boundary_cutoff}")
        if self.quad_nodes < 2 or self.quad_max_nodes < self.quad_nodes:
            raise DomainError("2 <= quad_nodes <= quad_max_nodes",
                              f"got {self.quad_nodes}, {self.quad_max_nodes}")

    @classmethod
    def from_settings(cls, settings):
        return cls(
            max_terms=int(settings["series_max_terms"]),
            rel_tol=float(settings["series_rel_tol"]),
            boundary_cutoff=float(settings["boundary_cutoff"]),
            quad_nodes=int(settings["quad_nodes"]),
            quad_max_nodes=int(settings["quad_max_nodes"]),
            quad_rel_tol=float(settings["quad_rel_tol"]),
        )


def _is_nonpositive_integer(value):
    return value <= 0 and float(value).is_integer()


def hyp2f1(A, B, C, x, cfg=None):
    """直接级数求和 Σ (A)_k (B)_k / ((C)_k k!) x^k

    终止条件：当前项乘以尾项几何上界 ρ/(1-ρ) 不超过 rel_tol 倍的部分和，
    其中 ρ 为后续项比值的上界。x 可以是标量或数组（逐点收敛）。

    Args:
        A, B, C: 参数，C 不能为非正整数
        x: 取值于 [0, 1) 的自变量
        cfg: SeriesConfig

    Returns:
        float 或 ndarray: 级数值

    Raises:
        DomainError: C 为非正整数或 x 不在 [0, 1)
        BoundaryError: C-A-B <= 0 且 x 超过 cutoff²
        ConvergenceError: max_terms 用尽仍未满足容差
    """
    cfg = cfg or SeriesConfig()
    if _is_nonpositive_integer(C):
        raise DomainError("C not a nonpositive integer", f"got C={C}")
    xs = np.asarray(x, dtype=float)
    if np.any(~np.isfinite(xs)) or np.any(xs < 0) or np.any(xs >= 1):
        raise DomainError("0 <= x < 1", f"got x={x}")
    if C - A - B <= 0 and np.any(xs > cfg.boundary_cutoff ** 2):
        raise BoundaryError("x <= boundary_cutoff^2 when C-A-B <= 0",
                            f"max x={float(xs.max())}, cutoff={cfg.boundary_cutoff}")

    flat = xs.ravel()
    total = np.ones_like(flat)
    term = np.ones_like(flat)
    active = flat > 0.0
    k = 0
    while True:
        idx = np.flatnonzero(active)
        if idx.size == 0:
            break
        if k >= cfg.max_terms:
            raise ConvergenceError(
                f"2F1({A}, {B}; {C}; x) not converged after {cfg.max_terms} terms "
                f"(max x={float(flat[idx].max())})")
        xa = flat[idx]
        coef = (A + k) * (B + k) / ((C + k) * (k + 1.0))
        term[idx] *= coef * xa
        total[idx] += term[idx]
        k += 1

        next_coef = abs((A + k) * (B + k) / ((C + k) * (k + 1.0)))
        rho = np.maximum(next_coef * xa, xa)
        with np.errstate(divide="ignore", invalid="ignore"):
            tail = np.where(rho < 1.0, np.abs(term[idx]) * rho / (1.0 - rho), np.inf)
        done = (term[idx] == 0.0) | (tail <= cfg.rel_tol * np.abs(total[idx]))
        active[idx[done]] = False

    logger.debug("2F1(%g, %g; %g; .) summed with %d terms", A, B, C, k)
    result = total.reshape(xs.shape)
    return float(result) if result.ndim == 0 else result
