# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
T_{a,b,c} / S_{a,b,c} 从 L^p_α 到 L^q_β 有界性的精确判定
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import NamedTuple, Tuple

import numpy as np

from src.classifier.exponents import ExtendedExponent, as_exponent
from src.core.errors import DomainError


class Regime(str, Enum):
    """Tag naming the case of the characterization that produced a verdict."""

    P_LE_Q = "ThmA"                   # 1 < p <= q < ∞
    P_ONE = "ThmB"                    # p = 1 <= q < ∞
    Q_LT_P = "Thm1.1"                 # 1 <= q < p < ∞
    P_INF_Q_FINITE = "Thm1.1-pInf"    # p = ∞, 1 <= q < ∞
    P_ONE_Q_INF = "Thm1.2"            # p = 1, q = ∞
    Q_INF = "Thm1.3"                  # 1 < p < ∞, q = ∞
    P_INF_Q_INF = "Thm1.3-pInf"       # p = q = ∞

    KC_NONPOSITIVE = "Kc-nonpositive"
    KC_MODERATE = "Kc-moderate"
    KC_LARGE = "Kc-large"
    KC_EXCLUDED = "Kc-excluded"

    PROJ_P_LE_Q = "Proj-i"
    PROJ_P_ONE = "Proj-ii"
    PROJ_Q_LT_P = "Proj-iii"
    PROJ_P_INF = "Proj-iv"
    PROJ_Q_INF = "Proj-qInf"

    def __str__(self):
        return self.value


GENERAL_REGIMES = (
    Regime.P_LE_Q, Regime.P_ONE, Regime.Q_LT_P, Regime.P_INF_Q_FINITE,
    Regime.P_ONE_Q_INF, Regime.Q_INF, Regime.P_INF_Q_INF,
)


# slacks this close to zero are re-decided point by point with math.fsum
GRID_TOLERANCE = 1e-9


class Condition(NamedTuple):
    """One inequality of a regime; slack > 0 means satisfied with margin."""

    name: str
    satisfied: bool
    slack: float
    strict: bool
    branch: int = 0


def strict_condition(name, terms, branch=0):
    """`sum(terms) > 0`, summed exactly with math.fsum."""
    slack = math.fsum(terms)
    return Condition(name, slack > 0.0, slack, True, branch)


def nonstrict_condition(name, terms, branch=0):
    """`sum(terms) >= 0`; slack 0 counts as satisfied."""
    slack = math.fsum(terms)
    return Condition(name, slack >= 0.0, slack, False, branch)


def equality_condition(name, lhs, rhs, branch=0):
    """`lhs == rhs` in exact floating point; slack is minus the gap."""
    return Condition(name, lhs == rhs, -abs(lhs - rhs), False, branch)


@dataclass(frozen=True)
class Verdict:
    """Boundedness decision with its regime and per-condition diagnostics.

    One verdict answers for T_{a,b,c} and S_{a,b,c} alike: every case of the
    characterization states that boundedness of T, of S and the parameter
    conditions are equivalent.
    """

    bounded: bool
    regime: Regime
    conditions: Tuple[Condition, ...] = ()
    operators: Tuple[str, ...] = ("T", "S")

    @classmethod
    def from_branches(cls, regime, conditions):
        """bounded = OR over branches of the AND of each branch's conditions."""
        conditions = tuple(conditions)
        branches = {}
        for cond in conditions:
            branches.setdefault(cond.branch, []).append(cond.satisfied)
        bounded = any(all(flags) for flags in branches.values())
        return cls(bounded=bounded, regime=regime, conditions=conditions)

    @property
    def min_slack(self):
        return min((c.slack for c in self.conditions), default=math.inf)

    def to_dict(self):
        return {
            "bounded": self.bounded,
            "regime": self.regime.value,
            "conditions": [c._asdict() for c in self.conditions],
        }


def _check_dimension(n):
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise DomainError("n >= 1", f"got n={n}")
    return int(n)


def _check_weight(name, value):
    value = float(value)
    if not value > -1.0:
        raise DomainError(f"{name} > -1", f"got {name}={value}")
    return value


@dataclass(frozen=True)
class KernelParameters:
    """Parameters of T_{a,b,c} / S_{a,b,c} and the two weights, without (p, q)."""

    n: int
    a: float
    b: float
    c: float
    alpha: float = 0.0
    beta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "n", _check_dimension(self.n))
        object.__setattr__(self, "alpha", _check_weight("alpha", self.alpha))
        object.__setattr__(self, "beta", _check_weight("beta", self.beta))
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, float(getattr(self, name)))

    def at(self, p, q):
        return Parameters(self.n, self.a, self.b, self.c, self.alpha, self.beta, p, q)


@dataclass(frozen=True)
class Parameters(KernelParameters):
    """One classification instance (n, a, b, c, α, β, p, q)."""

    p: ExtendedExponent = field(default_factory=lambda: ExtendedExponent(2))
    q: ExtendedExponent = field(default_factory=lambda: ExtendedExponent(2))

    def __post_init__(self):
        super().__post_init__()
        object.__setattr__(self, "p", as_exponent(self.p))
        object.__setattr__(self, "q", as_exponent(self.q))

    def to_dict(self):
        return {
            "n": self.n, "a": self.a, "b": self.b, "c": self.c,
            "alpha": self.alpha, "beta": self.beta,
            "p": str(self.p), "q": str(self.q),
        }

    @staticmethod
    def from_dict(data):
        return Parameters(
            n=data["n"], a=data["a"], b=data["b"], c=data["c"],
            alpha=data.get("alpha", 0.0), beta=data.get("beta", 0.0),
            p=data["p"], q=data["q"],
        )


def _q_condition(par, branch=0):
    # -qa < β+1, divided by q
    return strict_condition("-qa<beta+1", [par.a, (par.beta + 1) * par.q.inv], branch)


def _p_condition(par, branch=0):
    return strict_condition("alpha+1<p(b+1)", [par.b, 1.0, -(par.alpha + 1) * par.p.inv], branch)


def _b_condition(par, branch=0):
    return strict_condition("b>-1", [par.b, 1.0], branch)


def _interior_conditions(par):
    ip, iq = par.p.inv, par.q.inv
    return [
        _q_condition(par),
        _p_condition(par),
        nonstrict_condition(
            "c<=n+1+a+b+(n+1+beta)/q-(n+1+alpha)/p",
            [par.n, 1.0, par.a, par.b, (par.n + 1 + par.beta) * iq,
             -(par.n + 1 + par.alpha) * ip, -par.c],
        ),
    ]


def _p_one_conditions(par):
    iq = par.q.inv
    return [
        _q_condition(par, 0),
        strict_condition("alpha<b", [par.b, -par.alpha], 0),
        nonstrict_condition(
            "c<=a+b-alpha+(n+1+beta)/q",
            [par.a, par.b, -par.alpha, (par.n + 1 + par.beta) * iq, -par.c], 0,
        ),
        _q_condition(par, 1),
        equality_condition("alpha=b", par.alpha, par.b, 1),
        strict_condition("c<a+(n+1+beta)/q", [par.a, (par.n + 1 + par.beta) * iq, -par.c], 1),
    ]


def _q_lt_p_conditions(par):
    ip, iq = par.p.inv, par.q.inv
    return [
        _q_condition(par),
        _p_condition(par),
        strict_condition(
            "c<n+1+a+b+(1+beta)/q-(1+alpha)/p",
            [par.n, 1.0, par.a, par.b, (1 + par.beta) * iq, -(1 + par.alpha) * ip, -par.c],
        ),
    ]


def _p_inf_conditions(par):
    return [
        _q_condition(par),
        _b_condition(par),
        strict_condition(
            "c<n+1+a+b+(beta+1)/q",
            [par.n, 1.0, par.a, par.b, (par.beta + 1) * par.q.inv, -par.c],
        ),
    ]


def _p_one_q_inf_conditions(par):
    return [
        nonstrict_condition("a>=0", [par.a]),
        nonstrict_condition("alpha<=b", [par.b, -par.alpha]),
        nonstrict_condition("c<=a+b-alpha", [par.a, par.b, -par.alpha, -par.c]),
    ]


def _q_inf_conditions(par):
    ip = par.p.inv
    return [
        equality_condition("a=0", par.a, 0.0, 0),
        _p_condition(par, 0),
        strict_condition(
            "c<n+1+b-(n+1+alpha)/p",
            [par.n, 1.0, par.b, -(par.n + 1 + par.alpha) * ip, -par.c], 0,
        ),
        strict_condition("a>0", [par.a], 1),
        _p_condition(par, 1),
        nonstrict_condition(
            "c<=n+1+a+b-(n+1+alpha)/p",
            [par.n, 1.0, par.a, par.b, -(par.n + 1 + par.alpha) * ip, -par.c], 1,
        ),
    ]


def _p_inf_q_inf_conditions(par):
    return [
        equality_condition("a=0", par.a, 0.0, 0),
        _b_condition(par, 0),
        strict_condition("c<n+1+b", [par.n, 1.0, par.b, -par.c], 0),
        strict_condition("a>0", [par.a], 1),
        _b_condition(par, 1),
        nonstrict_condition("c<=n+1+a+b", [par.n, 1.0, par.a, par.b, -par.c], 1),
    ]


_CASES = {
    Regime.P_LE_Q: _interior_conditions,
    Regime.P_ONE: _p_one_conditions,
    Regime.Q_LT_P: _q_lt_p_conditions,
    Regime.P_INF_Q_FINITE: _p_inf_conditions,
    Regime.P_ONE_Q_INF: _p_one_q_inf_conditions,
    Regime.Q_INF: _q_inf_conditions,
    Regime.P_INF_Q_INF: _p_inf_q_inf_conditions,
}


def regime_of(p, q):
    """(p, q) 所属的定理情形；每一对 (p, q) 恰好落入一种情形"""
    p, q = as_exponent(p), as_exponent(q)
    if q.is_infinite:
        if p.is_one:
            return Regime.P_ONE_Q_INF
        return Regime.P_INF_Q_INF if p.is_infinite else Regime.Q_INF
    if p.is_infinite:
        return Regime.P_INF_Q_FINITE
    if p.is_one:
        return Regime.P_ONE
    return Regime.P_LE_Q if p <= q else Regime.Q_LT_P


def classify(params):
    """判定 S_{a,b,c}（等价地 T_{a,b,c}）是否从 L^p_α 有界映到 L^q_β

    Args:
        params: Parameters 实例，构造时已校验 n >= 1, α > -1, β > -1

    Returns:
        Verdict: 有界性、所属情形以及各条件的松弛量
    """
    if not isinstance(params, Parameters):
        raise TypeError(f"classify expects Parameters, got {type(params).__name__}")
    regime = regime_of(params.p, params.q)
    return Verdict.from_branches(regime, _CASES[regime](params))


def adjoint_parameters(params):
    """Parameters of the adjoint, acting L^{q'}_β -> L^{p'}_α (up to a positive constant).

    For q = ∞ the dual pairing is unweighted, so the adjoint is taken from L¹
    with α* = 0 and b* = a.
    """
    p, q = params.p, params.q
    if q.is_infinite:
        return Parameters(
            n=params.n, a=params.b - params.alpha, b=params.a, c=params.c,
            alpha=0.0, beta=params.alpha, p=q.conjugate(), q=p.conjugate(),
        )
    return Parameters(
        n=params.n, a=params.b - params.alpha, b=params.a + params.beta, c=params.c,
        alpha=params.beta, beta=params.alpha, p=q.conjugate(), q=p.conjugate(),
    )


class GridCheck:
    """Evaluates inequalities over a grid and remembers points too close to call."""

    def __init__(self, shape):
        self.near = np.zeros(shape, dtype=bool)

    def _track(self, slack):
        slack = np.asarray(slack, dtype=float)
        self.near |= np.abs(slack) <= GRID_TOLERANCE
        return slack

    def strict(self, slack):
        return self._track(slack) > 0.0

    def nonstrict(self, slack):
        return self._track(slack) >= 0.0


def inverse_arrays(inv_p, inv_q):
    """Broadcast 1/p and 1/q to float arrays of one shape, checking [0, 1]."""
    ip, iq = np.broadcast_arrays(np.asarray(inv_p, dtype=float), np.asarray(inv_q, dtype=float))
    if np.any((ip < 0.0) | (ip > 1.0) | (iq < 0.0) | (iq > 1.0)):
        raise DomainError("grid points in [0,1]^2", "1/p or 1/q outside [0, 1]")
    return ip, iq


def _grid_cases(base, ip, iq):
    # (bounded, near) per regime, each over the whole grid
    n, a, b, c, alpha, beta = base.n, base.a, base.b, base.c, base.alpha, base.beta
    q_slack = a + (beta + 1.0) * iq
    p_slack = b + 1.0 - (alpha + 1.0) * ip
    b_ok = b > -1.0
    cases = {}

    chk = GridCheck(ip.shape)
    bounded = chk.strict(q_slack) & chk.strict(p_slack) & chk.nonstrict(
        n + 1 + a + b + (n + 1 + beta) * iq - (n + 1 + alpha) * ip - c)
    cases[Regime.P_LE_Q] = bounded, chk.near

    chk = GridCheck(ip.shape)
    q_ok = chk.strict(q_slack)
    first = q_ok & (b > alpha) & chk.nonstrict(a + b - alpha + (n + 1 + beta) * iq - c)
    second = q_ok & (alpha == b) & chk.strict(a + (n + 1 + beta) * iq - c)
    cases[Regime.P_ONE] = first | second, chk.near

    chk = GridCheck(ip.shape)
    bounded = chk.strict(q_slack) & chk.strict(p_slack) & chk.strict(
        n + 1 + a + b + (1 + beta) * iq - (1 + alpha) * ip - c)
    cases[Regime.Q_LT_P] = bounded, chk.near

    chk = GridCheck(ip.shape)
    bounded = chk.strict(q_slack) & b_ok & chk.strict(n + 1 + a + b + (beta + 1) * iq - c)
    cases[Regime.P_INF_Q_FINITE] = bounded, chk.near

    chk = GridCheck(ip.shape)
    first = (a == 0.0) & chk.strict(p_slack) & chk.strict(n + 1 + b - (n + 1 + alpha) * ip - c)
    second = (a > 0.0) & chk.strict(p_slack) & chk.nonstrict(n + 1 + a + b - (n + 1 + alpha) * ip - c)
    cases[Regime.Q_INF] = first | second, chk.near

    # single corner points, always decided exactly
    everywhere = np.ones(ip.shape, dtype=bool)
    cases[Regime.P_ONE_Q_INF] = ~everywhere, everywhere
    cases[Regime.P_INF_Q_INF] = ~everywhere, everywhere
    return cases


def _grid_regimes(ip, iq):
    q_inf, p_one, p_inf = iq == 0.0, ip == 1.0, ip == 0.0
    return {
        Regime.P_ONE_Q_INF: q_inf & p_one,
        Regime.P_INF_Q_INF: q_inf & p_inf,
        Regime.Q_INF: q_inf & ~p_one & ~p_inf,
        Regime.P_INF_Q_FINITE: ~q_inf & p_inf,
        Regime.P_ONE: ~q_inf & p_one,
        Regime.P_LE_Q: ~q_inf & ~p_inf & ~p_one & (ip >= iq),
        Regime.Q_LT_P: ~q_inf & ~p_inf & ~p_one & (ip < iq),
    }


def resolve_near(bounded, near, ip, iq, decide):
    """Overwrite the near-boundary entries of `bounded` with decide(p, q)."""
    indices = np.argwhere(near)
    for index in map(tuple, indices):
        p = ExtendedExponent.from_inverse(ip[index])
        q = ExtendedExponent.from_inverse(iq[index])
        bounded[index] = decide(p, q)
    return len(indices)


def bounded_grid(base, inv_p, inv_q):
    """classify(base.at(p, q)).bounded 的向量化版本

    Slacks are computed with numpy; points within GRID_TOLERANCE of a
    boundary, and the two corners with q = ∞ and p ∈ {1, ∞}, are decided by
    classify itself, so the result equals the per-point verdicts exactly.

    Args:
        base: KernelParameters
        inv_p, inv_q: 1/p 与 1/q 数组（可广播）

    Returns:
        numpy.ndarray: 布尔数组
    """
    ip, iq = inverse_arrays(inv_p, inv_q)
    cases = _grid_cases(base, ip, iq)
    bounded = np.zeros(ip.shape, dtype=bool)
    near = np.zeros(ip.shape, dtype=bool)
    for regime, mask in _grid_regimes(ip, iq).items():
        case_bounded, case_near = cases[regime]
        bounded[mask] = case_bounded[mask]
        near[mask] = case_near[mask]
    resolve_near(bounded, near, ip, iq, lambda p, q: classify(base.at(p, q)).bounded)
    return bounded


if __name__ == '__main__':
    # Bergman projection on L^2 of the disk
    example = Parameters(n=1, a=0, b=0, c=2, alpha=0, beta=0, p=2, q=2)
    verdict = classify(example)
    print(f"{example.to_dict()} -> bounded={verdict.bounded} regime={verdict.regime}")
    for cond in verdict.conditions:
        print(f"  {cond.name:45s} satisfied={cond.satisfied} slack={cond.slack:+.4g}")
