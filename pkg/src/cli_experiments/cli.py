# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
命令行入口：frlab {classify, region, blowup, verify, norm}
"""

import argparse
import json
import logging
import os
import sys

from src.cli_experiments import commands
from src.core import __version__
from src.core.errors import ConvergenceError, DivergenceError, DomainError, PreconditionError
from src.core.settings import LOG_LEVEL_ENV_VAR, configure_logging, load_settings

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2

COMMANDS = {
    "classify": commands.cmd_classify,
    "region": commands.cmd_region,
    "blowup": commands.cmd_blowup,
    "verify": commands.cmd_verify,
    "norm": commands.cmd_norm,
}


def _float_list(text):
    try:
        return [float(item) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")


def _complex_list(text):
    try:
        return [complex(item.replace(" ", "")) for item in text.split(",") if item.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated complex numbers, got {text!r}")


def _common_arguments():
    common = argparse.ArgumentParser(add_help=False)
    group = common.add_argument_group("parameters")
    group.add_argument("-n", type=int, default=1, help="complex dimension")
    group.add_argument("-a", type=float, default=0.0)
    group.add_argument("-b", type=float, default=0.0)
    group.add_argument("-c", type=float, default=0.0)
    group.add_argument("--alpha", type=float, default=0.0, help="source weight (> -1)")
    group.add_argument("--beta", type=float, default=0.0, help="target weight (> -1)")
    group.add_argument("-p", default="2", help="source exponent, 1 <= p <= inf")
    group.add_argument("-q", default="2", help="target exponent, 1 <= q <= inf")

    run = common.add_argument_group("run")
    run.add_argument("--grid", type=int, default=None, help="grid resolution per axis")
    run.add_argument("--radii", type=_float_list, default=None, help="comma-separated radius schedule")
    run.add_argument("--seed", type=int, default=None)
    run.add_argument("--cutoff", type=float, default=None, help="boundary cutoff radius")
    run.add_argument("--samples", type=int, default=None, help="Monte Carlo samples")
    run.add_argument("--workers", type=int, default=None)
    run.add_argument("--tolerance", type=float, default=None, help="override every verify tolerance")
    run.add_argument("--config", default=None, help="settings file (default: config.json)")
    run.add_argument("--log-level", default=None)
    run.add_argument("--out", default=None, help="output path; prints JSON to stdout when omitted")
    run.add_argument("--format", choices=("csv", "json"), default="csv")
    return common


def build_parser():
    parser = argparse.ArgumentParser(prog="frlab", description="Forelli-Rudin operator laboratory")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = _common_arguments()
    sub = parser.add_subparsers(dest="command", required=True)

    sub.add_parser("classify", parents=[common], help="boundedness verdict with condition slacks")

    region = sub.add_parser("region", parents=[common], help="bounded region over the (1/p, 1/q) square")
    region.add_argument("--preset", choices=commands.PRESETS, default="general")
    region.add_argument("--gamma", type=float, default=0.0, help="projection / Berezin weight")

    blowup = sub.add_parser("blowup", parents=[common], help="norm quotients along a test family")
    blowup.add_argument("--family", choices=commands.FAMILY_CHOICES, default="fxi")
    blowup.add_argument("--N", type=float, default=0.0, help="exponent of f_N")
    blowup.add_argument("--xi-direction", type=_complex_list, default=None)

    sub.add_parser("verify", parents=[common], help="identity verification suite")

    norm = sub.add_parser("norm", parents=[common], help="exact norm on the p=inf, q=1 or q=inf line")
    norm.add_argument("--row", choices=commands.NORM_ROWS, required=True)
    return parser


def main(argv=None):
    """运行一条命令并返回退出码：0 成功，1 检验失败，2 输入无效"""
    parser = build_parser()
    args = parser.parse_args(argv)

    overrides = {
        "seed": args.seed,
        "boundary_cutoff": args.cutoff,
        "mc_samples": args.samples,
        "workers": args.workers,
        "region_grid": args.grid,
        "log_level": args.log_level,
    }
    settings = load_settings(overrides, config_path=args.config)
    configure_logging(args.log_level or os.environ.get(LOG_LEVEL_ENV_VAR) or settings["log_level"])
    args.settings = settings

    try:
        report = COMMANDS[args.command](args)
    except (DomainError, PreconditionError) as e:
        logger.error("%s: %s", args.command, e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INVALID
    except (ConvergenceError, DivergenceError) as e:
        logger.error("%s: %s", args.command, e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED

    if args.out:
        out = args.out
        if settings.get("output_dir") and not os.path.isabs(out):
            out = os.path.join(settings["output_dir"], out)
        report.save(out, args.format)
    else:
        print(json.dumps(report.to_dict(), indent=2, ensure_ascii=False))

    if args.command == "verify" and not all(row["passed"] for row in report.rows):
        return EXIT_FAILED
    return EXIT_OK


if __name__ == '__main__':
    sys.exit(main())
