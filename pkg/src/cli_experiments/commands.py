# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
命令实现：classify / region / blowup / verify / norm，每个命令返回 ExperimentReport
"""

import logging
import math

import numpy as np

from src.ball_quadrature.config import QuadratureConfig
from src.ball_quadrature.norms import radial_norm, unstable
from src.classifier.boundedness import KernelParameters, Parameters, classify
from src.classifier.corollaries import classify_kc, classify_projection
from src.classifier.exponents import ExtendedExponent, as_exponent
from src.classifier.sweep import corollary_sweep, inverse_grid
from src.cli_experiments.report import ExperimentReport
from src.core.errors import DomainError
from src.operators.closed_forms import closed_image_fn, closed_image_fxi, image_norm
from src.operators.families import KernelFXiEqual, KernelFXiLess, PowerFN, family_for
from src.operators.kernels import KernelSpec, apply_operator
from src.operators.transforms import berezin, reproducing_residual
from src.schur_norms.exact_norms import exact_norm_p_infty, exact_norm_q1, sup_kernel_norm
from src.special_functions.hypergeometric import SeriesConfig
from src.special_functions.kernel_integral import i_ct, i_ct_mc, i_ct_profile

logger = logging.getLogger(__name__)

PRESETS = ("general", "kc", "projection", "berezin")
FAMILY_CHOICES = ("fxi", "fxi-equal", "fxi-less", "fN")
NORM_ROWS = ("p-inf", "q-1", "q-inf")

# relative tolerances of the verification suite
VERIFY_TOLERANCES = {
    "reproducing": 1e-3,
    "closed-form": 1e-4,
    "berezin-fixed-point": 1e-4,
    "cross-formula": 1e-3,
    "zonal-profile": 1e-8,
    "monte-carlo": 4.0,
}


def _settings(args):
    return getattr(args, "settings", None) or {}


def _quadrature(args):
    settings = _settings(args)
    return QuadratureConfig.from_settings(settings) if settings else QuadratureConfig()


def _series(args):
    settings = _settings(args)
    return SeriesConfig.from_settings(settings) if settings else SeriesConfig()


def _parameters(args):
    return Parameters(n=args.n, a=args.a, b=args.b, c=args.c, alpha=args.alpha, beta=args.beta,
                      p=args.p, q=args.q)


def _radii(args):
    radii = args.radii if args.radii is not None else _settings(args).get("radii", [0.9, 0.99, 0.999])
    radii = [float(r) for r in radii]
    if not radii or any(not 0 <= r < 1 for r in radii):
        raise DomainError("radii in [0, 1)", f"got {radii}")
    return radii


def _config_dict(args):
    return {k: v for k, v in _settings(args).items() if k != "output_dir"}


def cmd_classify(args):
    """单个参数组的有界性判定与各条件松弛量"""
    params = _parameters(args)
    verdict = classify(params)
    rows = [{
        "condition": cond.name,
        "branch": cond.branch,
        "satisfied": cond.satisfied,
        "slack": cond.slack,
        "strict": cond.strict,
        "bounded": verdict.bounded,
        "regime": verdict.regime.value,
    } for cond in verdict.conditions]
    logger.info("classify %s -> bounded=%s (%s)", params.to_dict(), verdict.bounded, verdict.regime)
    inputs = dict(params.to_dict(), bounded=verdict.bounded, regime=verdict.regime.value,
                  min_slack=verdict.min_slack)
    return ExperimentReport.create("classify", inputs, rows, config=_config_dict(args))


def _region_verdict_fn(args):
    preset = args.preset
    if preset == "general":
        base = KernelParameters(args.n, args.a, args.b, args.c, args.alpha, args.beta)
        return lambda p, q: classify(base.at(p, q))
    if preset == "kc":
        # K_c^α acts on one weight: α = β
        return lambda p, q: classify_kc(args.n, args.c, args.alpha, p, q)
    if preset in ("projection", "berezin"):
        return lambda p, q: classify_projection(args.n, args.gamma, args.alpha, args.beta, p, q, operator=preset)
    raise DomainError(f"preset in {PRESETS}", f"got {preset!r}")


def cmd_region(args):
    """(1/p, 1/q) 网格上的有界区域，每个网格点一行"""
    resolution = args.grid if args.grid is not None else _settings(args).get("region_grid", 101)
    grid = inverse_grid(resolution)
    workers = args.workers if args.workers is not None else _settings(args).get("workers")
    points = corollary_sweep(_region_verdict_fn(args), grid, workers=workers)
    rows = [{"inv_p": pt.inv_p, "inv_q": pt.inv_q, "bounded": pt.verdict.bounded,
             "regime": pt.verdict.regime.value} for pt in points]
    inside = sum(row["bounded"] for row in rows)
    logger.info("region preset=%s: %d of %d grid points bounded", args.preset, inside, len(rows))
    inputs = {"preset": args.preset, "grid": int(resolution), "n": args.n, "a": args.a, "b": args.b,
              "c": args.c, "alpha": args.alpha, "beta": args.beta, "gamma": args.gamma}
    return ExperimentReport.create("region", inputs, rows, config=_config_dict(args))


def _family_class(args, params):
    if args.family == "fxi":
        return family_for(params)
    if args.family == "fxi-equal":
        return KernelFXiEqual
    if args.family == "fxi-less":
        return KernelFXiLess
    raise DomainError(f"family in {FAMILY_CHOICES}", f"got {args.family!r}")


def _xi(args, radius):
    direction = np.zeros(args.n, dtype=complex)
    direction[0] = 1.0
    if getattr(args, "xi_direction", None):
        direction = np.asarray(args.xi_direction, dtype=complex)
        if direction.shape != (args.n,) or not np.linalg.norm(direction) > 0:
            raise DomainError("xi direction is a nonzero vector in C^n", f"got {args.xi_direction}")
        direction = direction / np.linalg.norm(direction)
    return tuple(radius * direction)


def _blowup_fxi(args, params, spec, cfg):
    family_class = _family_class(args, params)
    rows = []
    for radius in _radii(args):
        family = family_class(_xi(args, radius))
        # validates the family against the weights before any norm is taken
        closed_image_fxi(spec, params.n, params.alpha, None, family)
        source = family.source_norm(params.n, params.alpha, params.b, params.p, cfg.boundary_cutoff)
        image = image_norm(spec, params.n, family, params.alpha, params.beta, params.q, cfg.boundary_cutoff)
        rows.append({
            "xi_modulus": radius,
            "source_norm": source.value,
            "t_image_norm": image.value,
            "ratio": image.value / source.value if source.value > 0 else math.inf,
            "diverged": source.diverged or image.diverged,
        })
    return rows


def _blowup_fn(args, params, spec, cfg):
    family = PowerFN(args.N)
    image = closed_image_fn(spec, params.n, family.N)
    n, a = params.n, spec.a

    def source_profile(r):
        return (1.0 - r ** 2) ** family.N

    def image_profile(r):
        return image.constant * (1.0 - r ** 2) ** a

    rows, previous = [], None
    for radius in _radii(args):
        truncated = cfg.with_cutoff(radius)
        source = radial_norm(source_profile, params.p, params.alpha, n, truncated)
        target = radial_norm(image_profile, params.q, params.beta, n, truncated)
        diverged = source.diverged or target.diverged
        if previous is not None:
            diverged = diverged or unstable(previous[0], source.value) or unstable(previous[1], target.value)
        previous = (source.value, target.value)
        rows.append({
            "cutoff": radius,
            "source_norm": source.value,
            "t_image_norm": target.value,
            "ratio": target.value / source.value if source.value > 0 else math.inf,
            "diverged": diverged,
        })
    return rows


def cmd_blowup(args):
    """测试函数族沿 |ξ|（或截断半径）序列的范数商"""
    params = _parameters(args)
    spec = KernelSpec(params.a, params.b, params.c)
    cfg = _quadrature(args)
    if args.family == "fN":
        rows = _blowup_fn(args, params, spec, cfg)
    else:
        rows = _blowup_fxi(args, params, spec, cfg)
    verdict = classify(params)
    # the closed-form images are those of T_{a,b,c}
    inputs = dict(params.to_dict(), family=args.family, N=args.N, operator="T",
                  bounded=verdict.bounded, regime=verdict.regime.value)
    logger.info("blowup %s: ratios %s", args.family, [round(row["ratio"], 6) for row in rows])
    return ExperimentReport.create("blowup", inputs, rows, config=_config_dict(args))


def _relative(measured, expected):
    scale = max(abs(expected), 1e-300)
    return float(abs(measured - expected) / scale)


def _verify_checks(cfg, series):
    """生成 (check, residual, tolerance key)"""
    for alpha in (0.0, 1.0):
        for c in (1.0, 2.0):
            for z, xi in ((0.3, 0.5), (-0.2 + 0.4j, 0.6j), (0.5, -0.5)):
                residual = reproducing_residual(alpha, c, z, xi, cfg)
                yield f"reproducing alpha={alpha:g} c={c:g} z={z} xi={xi}", residual, "reproducing"

    spec = KernelSpec(0.0, 0.0, 2.0)
    f1 = PowerFN(1.0).function(1, 0.0, 0.0)
    value = apply_operator(spec, f1, 0.5, cfg)
    expected = complex(closed_image_fn(spec, 1, 1.0)(np.array([[0.5]]))[0])
    yield "closed-form T f_N (N=1, c=2) at z=0.5", _relative(value.value, expected), "closed-form"

    family = KernelFXiEqual(0.5)
    image = closed_image_fxi(spec, 1, 0.0, None, family)
    value = apply_operator(spec, family.function(1, 0.0, 0.0), 0.3, cfg)
    expected = complex(image(np.array([[0.3]]))[0])
    yield "closed-form T f_xi (b=alpha, xi=0.5) at z=0.3", _relative(value.value, expected), "closed-form"

    for k in range(4):
        z = 0.4 * np.exp(0.7j)
        value = berezin(0.0, lambda w, k=k: w[:, 0] ** k, z, cfg)
        yield f"Berezin fixes z^{k} at z={z:.3f}", abs(value.value - z ** k), "berezin-fixed-point"

    s_spec = KernelSpec(0.0, 0.0, 2.0, modulus_kernel=True)
    left = exact_norm_p_infty(s_spec, 1, 0.0, 1, cfg)
    right = exact_norm_q1(s_spec, 1, 0.0, 0.0, ExtendedExponent.infinity(), cfg)
    yield "exact norm L^inf->L^1 by both formulas (c=2)", _relative(left.value, right.value), "cross-formula"

    series_value = i_ct(1, 0.9, 2.0, 0.0, series)
    yield "I_(2,0)(0.9): Jacobi rule vs closed form", _relative(series_value, i_ct_profile(1, 2.0, 0.0, 0.9)), \
        "zonal-profile"

    point = np.array([0.5, 0.0], dtype=complex)
    estimate = i_ct_mc(2, point, 2.0, 0.0, cfg)
    exact = i_ct(2, 0.5, 2.0, 0.0, series)
    yield "I_(2,0)(0.5), n=2: Monte Carlo z-score", abs(estimate.value - exact) / estimate.stderr, "monte-carlo"


def cmd_verify(args):
    """恒等式检验集；每个检验一行，含残差、容差与是否通过"""
    cfg, series = _quadrature(args), _series(args)
    tolerance = getattr(args, "tolerance", None)
    rows = []
    for check, residual, key in _verify_checks(cfg, series):
        limit = VERIFY_TOLERANCES[key] if tolerance is None else float(tolerance)
        passed = bool(residual <= limit)
        if not passed:
            logger.warning("Check failed: %s (residual %.3g > %.3g)", check, residual, limit)
        rows.append({"check": check, "kind": key, "residual": residual, "tolerance": limit, "passed": passed})
    logger.info("verify: %d of %d checks passed", sum(r["passed"] for r in rows), len(rows))
    return ExperimentReport.create("verify", {"tolerance": tolerance}, rows, seed=cfg.seed,
                                   config=_config_dict(args))


def cmd_norm(args):
    """p = ∞ 行、q = 1 列或 q = ∞ 列上 S_{a,b,c} 的精确范数，附同一参数的分类结果"""
    if args.row not in NORM_ROWS:
        raise DomainError(f"row in {NORM_ROWS}", f"got {args.row!r}")
    cfg = _quadrature(args)
    spec = KernelSpec(args.a, args.b, args.c, modulus_kernel=True)
    kernel = KernelParameters(args.n, args.a, args.b, args.c, args.alpha, args.beta)
    if args.row == "p-inf":
        p, q = ExtendedExponent.infinity(), as_exponent(args.q)
        estimate = exact_norm_p_infty(spec, kernel.n, kernel.beta, q, cfg)
    elif args.row == "q-1":
        p, q = as_exponent(args.p), ExtendedExponent(1)
        estimate = exact_norm_q1(spec, kernel.n, kernel.alpha, kernel.beta, p, cfg)
    else:
        p, q = as_exponent(args.p), ExtendedExponent.infinity()
        grid = args.radii if args.radii is not None else None
        estimate = sup_kernel_norm(spec, kernel.n, kernel.alpha, p, grid, cfg)
    params = kernel.at(p, q)
    verdict = classify(params)
    if estimate.diverged == verdict.bounded:
        logger.warning("Norm row %s disagrees with the classifier for %s", args.row, params.to_dict())
    row = dict(estimate.to_dict(), row=args.row, p=str(p), q=str(q),
               bounded=verdict.bounded, regime=verdict.regime.value)
    return ExperimentReport.create("norm", dict(params.to_dict(), row=args.row), [row],
                                   config=_config_dict(args))
