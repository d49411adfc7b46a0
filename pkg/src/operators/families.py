# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
必要性证明中使用的测试函数族：f_N 与两类 f_ξ
"""

import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np

from src.ball_quadrature.config import Method, NormEstimate
from src.classifier.exponents import as_exponent
from src.core.errors import DomainError
from src.special_functions.gamma import c_alpha
from src.special_functions.kernel_integral import i_ct_profile


def _as_xi(xi):
    point = tuple(complex(x) for x in np.atleast_1d(np.asarray(xi, dtype=complex)))
    if not math.fsum(abs(x) ** 2 for x in point) < 1.0:
        raise DomainError("|xi| < 1", f"got xi={xi}")
    return point


@dataclass(frozen=True)
class PowerFN:
    """f_N(z) = (1-|z|²)^N."""

    N: float

    name = "fN"

    def function(self, n, alpha, b):
        exponent = self.N
        return lambda w: (1.0 - np.linalg.norm(w, axis=1) ** 2) ** exponent

    def admissible(self, p, alpha):
        """f_N ∈ L^p_α 当且仅当 Np + α > -1（p 有限）或 N >= 0（p = ∞）"""
        p = as_exponent(p)
        if p.is_infinite:
            return self.N >= 0
        return self.N * p.value + alpha > -1

    def source_norm(self, n, alpha, b, p, cutoff=None):
        """‖f_N‖_{p,α} = (c_α / c_{Np+α})^{1/p}; p = ∞ 时为 1（N < 0 时取截断处的值）"""
        p = as_exponent(p)
        if p.is_infinite:
            if self.N >= 0:
                return NormEstimate(1.0, 0.0, Method.CLOSED_FORM)
            if cutoff is None:
                return NormEstimate.divergent(Method.CLOSED_FORM)
            return NormEstimate((1.0 - cutoff ** 2) ** self.N, 0.0, Method.CLOSED_FORM, True)
        if not self.admissible(p, alpha):
            return NormEstimate.divergent(Method.CLOSED_FORM)
        ratio = c_alpha(n, alpha) / c_alpha(n, self.N * p.value + alpha)
        return NormEstimate(ratio ** (1.0 / p.value), 0.0, Method.CLOSED_FORM)


@dataclass(frozen=True)
class _KernelFXi:
    xi: Union[complex, Tuple[complex, ...]]

    def __post_init__(self):
        object.__setattr__(self, "xi", _as_xi(self.xi))

    @property
    def point(self):
        return np.array(self.xi, dtype=complex)

    @property
    def modulus(self):
        return float(np.linalg.norm(self.point))

    def admissible(self, p, alpha):
        return True

    def _coefficient(self, n, alpha, b):
        raise NotImplementedError

    def _power(self, n, alpha, b):
        raise NotImplementedError

    def function(self, n, alpha, b):
        xi = self.point
        if xi.shape[0] != n:
            raise DomainError("xi lies in C^n", f"expected dimension {n}, got {xi.shape[0]}")
        coefficient = self._coefficient(n, alpha, b)
        power = self._power(n, alpha, b)
        modulus = isinstance(self, KernelFXiEqual)

        def evaluate(w):
            gap = 1.0 - w @ xi.conj()
            if modulus:
                return coefficient * np.abs(gap) ** (-power)
            return coefficient * np.exp(-power * np.log(gap))

        return evaluate

    def source_norm(self, n, alpha, b, p, cutoff=None):
        """闭式 ‖f_ξ‖_{p,α}；p = ∞ 时取 w = cutoff·ξ/|ξ| 处的值（cutoff 缺省时取单位球面）"""
        p = as_exponent(p)
        coefficient, power = self._coefficient(n, alpha, b), self._power(n, alpha, b)
        r = self.modulus
        if p.is_infinite:
            radius = 1.0 if cutoff is None else cutoff
            peak = (1.0 - radius * r) ** (-power) if power >= 0 else (1.0 + radius * r) ** (-power)
            return NormEstimate(coefficient * peak, 0.0, Method.CLOSED_FORM)
        integral = c_alpha(n, alpha) * i_ct_profile(n, power * p.value, alpha, r)
        return NormEstimate(coefficient * integral ** (1.0 / p.value), 0.0, Method.CLOSED_FORM)


@dataclass(frozen=True)
class KernelFXiEqual(_KernelFXi):
    """Case b = α: f_ξ(z) = (1-|ξ|²)^{n+1+α} / |1-<z,ξ>|^{2(n+1+α)}."""

    name = "fxi-equal"

    def _coefficient(self, n, alpha, b):
        return (1.0 - self.modulus ** 2) ** (n + 1 + alpha)

    def _power(self, n, alpha, b):
        return 2.0 * (n + 1 + alpha)


@dataclass(frozen=True)
class KernelFXiLess(_KernelFXi):
    """Case α < b: f_ξ(z) = (1-|ξ|²)^{b-α} / (1-<z,ξ>)^{n+1+b}."""

    name = "fxi-less"

    def _coefficient(self, n, alpha, b):
        return (1.0 - self.modulus ** 2) ** (b - alpha)

    def _power(self, n, alpha, b):
        return n + 1 + b


TestFamily = Union[PowerFN, KernelFXiEqual, KernelFXiLess]

FAMILIES = {"fN": PowerFN, "fxi-equal": KernelFXiEqual, "fxi-less": KernelFXiLess}


def family_for(params):
    """Pick the f_ξ variant matching the weights of `params` (b = α or α < b)."""
    if params.b == params.alpha:
        return KernelFXiEqual
    if params.alpha < params.b:
        return KernelFXiLess
    raise DomainError("alpha <= b", f"no f_xi family for alpha={params.alpha} > b={params.b}")
