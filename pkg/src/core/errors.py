# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
异常类型定义
"""


class FRLabError(Exception):
    """Base class for every error raised by FRLab."""


class DomainError(FRLabError, ValueError):
    """An input violates a parameter invariant (alpha > -1, p >= 1, ...)."""

    def __init__(self, invariant, detail=None):
        self.invariant = invariant
        message = f"invariant violated: {invariant}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)


class BoundaryError(DomainError):
    """An evaluation point lies beyond the configured boundary cutoff."""


class PreconditionError(FRLabError, ValueError):
    """An operation was called outside the parameter range it is defined for."""


class ConvergenceError(FRLabError, ArithmeticError):
    """A series or quadrature exhausted its budget before meeting its tolerance."""


class DivergenceError(FRLabError, ArithmeticError):
    """A nested integral failed the cutoff refinement test."""
