# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
扩展指数 p ∈ [1, ∞] 及其共轭
"""

import math
from functools import total_ordering

from src.core.errors import DomainError

_INFINITY_LITERALS = {"inf", "+inf", "infinity", "∞"}


@total_ordering
class ExtendedExponent:
    """An exponent in [1, ∞] with an exact infinity.

    The reciprocal 1/p is stored together with 1/p' = 1 - 1/p, so that
    conjugation just swaps the two and is an exact involution.
    """

    __slots__ = ("_inv", "_conj_inv")

    def __init__(self, value):
        if isinstance(value, ExtendedExponent):
            self._inv, self._conj_inv = value._inv, value._conj_inv
            return
        if isinstance(value, str):
            text = value.strip().lower()
            if text in _INFINITY_LITERALS:
                value = math.inf
            else:
                try:
                    value = float(text)
                except ValueError:
                    raise DomainError("p >= 1", f"cannot parse exponent {value!r}") from None
        value = float(value)
        if math.isnan(value) or value < 1.0:
            raise DomainError("p >= 1", f"got {value}")
        if math.isinf(value):
            self._inv, self._conj_inv = 0.0, 1.0
        else:
            self._inv, self._conj_inv = 1.0 / value, (value - 1.0) / value

    @classmethod
    def from_inverse(cls, inv):
        """Build the exponent whose reciprocal is `inv` (0 gives ∞, 1 gives 1)."""
        inv = float(inv)
        if not 0.0 <= inv <= 1.0:
            raise DomainError("0 <= 1/p <= 1", f"got 1/p={inv}")
        exponent = cls.__new__(cls)
        exponent._inv, exponent._conj_inv = inv, 1.0 - inv
        return exponent

    @classmethod
    def infinity(cls):
        return cls.from_inverse(0.0)

    @property
    def inv(self):
        return self._inv

    @property
    def value(self):
        return math.inf if self._inv == 0.0 else 1.0 / self._inv

    @property
    def is_infinite(self):
        return self._inv == 0.0

    @property
    def is_one(self):
        return self._inv == 1.0

    def conjugate(self):
        other = ExtendedExponent.__new__(ExtendedExponent)
        other._inv, other._conj_inv = self._conj_inv, self._inv
        return other

    def __float__(self):
        return self.value

    def __eq__(self, other):
        if not isinstance(other, ExtendedExponent):
            try:
                other = ExtendedExponent(other)
            except (DomainError, TypeError):
                return NotImplemented
        return self._inv == other._inv

    def __lt__(self, other):
        if not isinstance(other, ExtendedExponent):
            other = ExtendedExponent(other)
        # larger reciprocal means smaller exponent
        return self._inv > other._inv

    def __hash__(self):
        return hash(self._inv)

    def __repr__(self):
        return f"ExtendedExponent({str(self)!r})"

    def __str__(self):
        return "inf" if self.is_infinite else format(self.value, ".12g")


def conjugate(e):
    """共轭指数 e'，满足 1/e + 1/e' = 1（约定 1/∞ = 0）

    Args:
        e: ExtendedExponent 或可解析为指数的值

    Returns:
        ExtendedExponent: 共轭指数
    """
    return ExtendedExponent(e).conjugate()


def as_exponent(value):
    return value if isinstance(value, ExtendedExponent) else ExtendedExponent(value)
