# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
测试共享夹具
"""

import pytest

from src.ball_quadrature.config import QuadratureConfig
from src.special_functions.hypergeometric import SeriesConfig

# standard errors allowed between a Monte Carlo estimate and its reference value
MC_SIGMAS = 4.0


@pytest.fixture
def quad_cfg():
    return QuadratureConfig()


@pytest.fixture
def coarse_cfg():
    return QuadratureConfig(radial_nodes=12, angular_nodes=64, mc_samples=20000)


@pytest.fixture
def series_cfg():
    return SeriesConfig()


@pytest.fixture
def mc_close():
    def check(estimate, expected, stderr, sigmas=MC_SIGMAS):
        return abs(estimate - expected) <= sigmas * stderr + 1e-9 * abs(expected)
    return check
