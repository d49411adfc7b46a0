# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
K_c^α、Bergman 投影与 Berezin 变换的区域描述（与 classify 相互独立的编码）
"""

import logging
import math

import numpy as np

from src.classifier.boundedness import (
    Condition, GridCheck, Regime, Verdict, _check_dimension, _check_weight, equality_condition,
    inverse_arrays, nonstrict_condition, resolve_near, strict_condition,
)
from src.classifier.exponents import ExtendedExponent, as_exponent
from src.core.errors import DomainError, PreconditionError

logger = logging.getLogger(__name__)

_MAX_WITNESS_NUDGES = 64


def _critical_c(n, alpha):
    # n + 2(1+α), summed exactly
    return [n, 2.0, 2.0 * alpha]


def classify_kc(n, c, alpha, p, q):
    """K_c^α: L^p_α -> L^q_α 的有界性，仅使用推论中的区域描述

    Args:
        n: 维数
        c: 核指数
        alpha: 权指数 (> -1)
        p, q: 指数

    Returns:
        Verdict: regime 为 Kc-* 标签之一
    """
    n = _check_dimension(n)
    alpha = _check_weight("alpha", alpha)
    p, q = as_exponent(p), as_exponent(q)
    c = float(c)
    ip, iq = p.inv, q.inv
    x = n + 1 + alpha

    if c <= 0.0:
        cond = nonstrict_condition("c<=0", [-c])
        return Verdict.from_branches(Regime.KC_NONPOSITIVE, [cond])

    if math.fsum(_critical_c(n, alpha) + [-c]) <= 0.0:
        cond = strict_condition("c<n+2(1+alpha)", _critical_c(n, alpha) + [-c])
        return Verdict.from_branches(Regime.KC_EXCLUDED, [cond])

    if c <= x:
        # the four alternatives of the moderate range, one branch each
        critical = (x - c) / x
        conditions = [
            equality_condition("p=1", ip, 1.0, 0),
            strict_condition("1/q>c/(n+1+alpha)", [iq, -c / x], 0),
            strict_condition("1/p>(n+1+alpha-c)/(n+1+alpha)", [ip, -critical], 1),
            strict_condition("p>1", [1.0, -ip], 1),
            nonstrict_condition("1/q>=1/p+c/(n+1+alpha)-1", [iq, -ip, -c / x, 1.0], 1),
            equality_condition("1/p=(n+1+alpha-c)/(n+1+alpha)", ip, critical, 2),
            strict_condition("q<inf", [iq], 2),
            strict_condition("1/p<(n+1+alpha-c)/(n+1+alpha)", [critical, -ip], 3),
        ]
        return Verdict.from_branches(Regime.KC_MODERATE, conditions)

    scale = 1.0 + alpha
    conditions = [
        strict_condition("1/p<(n+2(1+alpha)-c)/(1+alpha)",
                         [(math.fsum(_critical_c(n, alpha) + [-c])) / scale, -ip]),
        strict_condition("1/q>1/p+(c-(n+1+alpha))/(1+alpha)", [iq, -ip, -(c - x) / scale]),
    ]
    return Verdict.from_branches(Regime.KC_LARGE, conditions)


def kc_bounded_grid(n, c, alpha, inv_p, inv_q):
    """Vectorised classify_kc(n, c, alpha, p, q).bounded over arrays of 1/p and 1/q.

    Near-boundary points are handed back to classify_kc.
    """
    n = _check_dimension(n)
    alpha = _check_weight("alpha", alpha)
    c = float(c)
    ip, iq = inverse_arrays(inv_p, inv_q)
    x = n + 1 + alpha

    if c <= 0.0:
        return np.ones(ip.shape, dtype=bool)
    if math.fsum(_critical_c(n, alpha) + [-c]) <= 0.0:
        return np.zeros(ip.shape, dtype=bool)

    chk = GridCheck(ip.shape)
    if c <= x:
        critical = (x - c) / x
        bounded = (
            ((ip == 1.0) & chk.strict(iq - c / x))
            | (chk.strict(ip - critical) & (ip < 1.0) & chk.nonstrict(iq - ip - c / x + 1.0))
            | ((ip == critical) & (iq > 0.0))
            | chk.strict(critical - ip)
        )
    else:
        scale = 1.0 + alpha
        bounded = (
            chk.strict(math.fsum(_critical_c(n, alpha) + [-c]) / scale - ip)
            & chk.strict(iq - ip - (c - x) / scale)
        )
    resolve_near(bounded, chk.near, ip, iq, lambda p, q: classify_kc(n, c, alpha, p, q).bounded)
    return bounded


def classify_projection(n, gamma, alpha, beta, p, q, operator="projection"):
    """P_γ（或 B_γ）从 L^p_α 到 L^q_β 的有界性

    Args:
        n: 维数
        gamma: 投影/变换的权指数 (> -1)
        alpha, beta: 源空间与目标空间的权指数
        p, q: 指数
        operator: "projection" 或 "berezin"；两者仅在 p = ∞ 一列不同

    Returns:
        Verdict: regime 为 Proj-* 标签之一
    """
    if operator not in ("projection", "berezin"):
        raise DomainError("operator in {projection, berezin}", f"got {operator!r}")
    n = _check_dimension(n)
    gamma = _check_weight("gamma", gamma)
    alpha = _check_weight("alpha", alpha)
    beta = _check_weight("beta", beta)
    p, q = as_exponent(p), as_exponent(q)
    ip, iq = p.inv, q.inv

    if p.is_infinite:
        if operator == "berezin":
            cond = Condition("p=inf", True, math.inf, False)
        else:
            cond = strict_condition("q<inf", [iq])
        return Verdict.from_branches(Regime.PROJ_P_INF, [cond])
    if q.is_infinite:
        cond = Condition("q<inf", False, 0.0, True)
        return Verdict.from_branches(Regime.PROJ_Q_INF, [cond])

    a_side, b_side = (n + 1 + alpha) * ip, (n + 1 + beta) * iq
    if p.is_one:
        conditions = [
            strict_condition("alpha<gamma", [gamma, -alpha], 0),
            nonstrict_condition("n+1+alpha<=(n+1+beta)/q", [b_side, -(n + 1 + alpha)], 0),
            equality_condition("alpha=gamma", alpha, gamma, 1),
            strict_condition("n+1+alpha<(n+1+beta)/q", [b_side, -(n + 1 + alpha)], 1),
        ]
        return Verdict.from_branches(Regime.PROJ_P_ONE, conditions)

    projection_cond = strict_condition("(alpha+1)/p<gamma+1", [gamma, 1.0, -(alpha + 1) * ip])
    if p <= q:
        conditions = [
            projection_cond,
            nonstrict_condition("(n+1+alpha)/p<=(n+1+beta)/q", [b_side, -a_side]),
        ]
        return Verdict.from_branches(Regime.PROJ_P_LE_Q, conditions)
    conditions = [
        projection_cond,
        strict_condition("(1+alpha)/p<(1+beta)/q", [(1 + beta) * iq, -(1 + alpha) * ip]),
    ]
    return Verdict.from_branches(Regime.PROJ_Q_LT_P, conditions)


def exists_bounded_pair(n, c, alpha):
    """True iff K_c^α is bounded for some (p, q), i.e. c < n + 2(1+α)."""
    return math.fsum(_critical_c(n, alpha) + [-float(c)]) > 0.0


def witness_pair(n, c, alpha):
    """给出一个使 K_c^α 有界的具体 (p, q)

    Args:
        n: 维数
        c: 核指数，须满足 c < n + 2(1+α)
        alpha: 权指数

    Returns:
        tuple: (p, q)，均为 ExtendedExponent

    Raises:
        PreconditionError: c >= n + 2(1+α)
    """
    if not exists_bounded_pair(n, c, alpha):
        raise PreconditionError(f"witness_pair requires c < n+2(1+alpha); got c={c}, n={n}, alpha={alpha}")
    x = n + 1 + alpha
    if c <= 0:
        ip, iq = 0.5, 0.5
    elif c <= x:
        tau = x - c
        ip, iq = 0.5 + tau / (2 * x), 0.5 - tau / (2 * x)
    else:
        tau = math.fsum(_critical_c(n, alpha) + [-c])
        ip, iq = tau / (2 * (1 + alpha)), 1.0

    # the moderate-range witness sits on a non-strict boundary; rounding may push it out
    for _ in range(_MAX_WITNESS_NUDGES):
        p, q = ExtendedExponent.from_inverse(ip), ExtendedExponent.from_inverse(iq)
        if classify_kc(n, c, alpha, p, q).bounded:
            return p, q
        iq = float(np.nextafter(iq, 1.0))
    raise PreconditionError(f"no bounded pair found near the constructed witness for c={c}")


if __name__ == '__main__':
    for c_value in (0.0, 1.0, 2.0, 2.5):
        wp, wq = witness_pair(1, c_value, 0.0)
        print(f"c={c_value}: witness p={wp}, q={wq}")
