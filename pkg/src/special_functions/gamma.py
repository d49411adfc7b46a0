# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
Gamma / Beta 函数与加权测度的归一化常数
"""

import numpy as np
from scipy import special

from src.core.errors import DomainError


def log_gamma(x):
    """log Γ(x) for x > 0 (scalar or array)."""
    values = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(values)) or np.any(values <= 0):
        raise DomainError("x > 0", f"log_gamma got {x}")
    result = special.gammaln(values)
    return float(result) if result.ndim == 0 else result


def log_beta(x, y):
    """log B(x, y) for x, y > 0."""
    xs, ys = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    if np.any(xs <= 0) or np.any(ys <= 0):
        raise DomainError("x > 0 and y > 0", f"log_beta got ({x}, {y})")
    result = special.betaln(xs, ys)
    return float(result) if result.ndim == 0 else result


def _check(n, alpha):
    if int(n) != n or n < 1:
        raise DomainError("n >= 1", f"got n={n}")
    if not alpha > -1:
        raise DomainError("alpha > -1", f"got alpha={alpha}")


def c_alpha(n, alpha):
    """归一化常数 c_α = Γ(n+α+1) / (n! Γ(α+1))，使 v_α(B_n) = 1

    Args:
        n: 维数
        alpha: 权指数 (> -1)

    Returns:
        float: c_α
    """
    _check(n, alpha)
    return float(np.exp(special.gammaln(n + alpha + 1) - special.gammaln(n + 1)
                        - special.gammaln(alpha + 1)))


def ball_mass(n, t):
    """∫ (1-|w|²)^t dv(w) = n! Γ(t+1) / Γ(n+t+1) = 1 / c_t."""
    return 1.0 / c_alpha(n, t)
