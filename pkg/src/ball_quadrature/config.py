# -*- coding: utf-8 -*-
"""
FRLab - Forelli-Rudin 算子实验室
数值积分配置与范数估计结果类型
"""

import math
from dataclasses import asdict, dataclass, replace
from enum import Enum

from src.core.errors import DomainError

# cutoff used by the refinement test; the configured cutoff is the fine one
COARSE_CUTOFF = 1 - 1e-4
DIVERGENCE_RATIO = 1.5


class Method(str, Enum):
    GRID_QUAD = "GridQuad"
    MONTE_CARLO = "MonteCarlo"
    CLOSED_FORM = "ClosedForm"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class QuadratureConfig:
    """Resolution, sample budget, truncation radius and seed for ball integrals."""

    radial_nodes: int = 16
    angular_nodes: int = 128
    mc_samples: int = 100000
    boundary_cutoff: float = 1 - 1e-6
    seed: int = 20240601

    def __post_init__(self):
        if self.radial_nodes < 2:
            raise DomainError("radial_nodes >= 2", f"got {self.radial_nodes}")
        if self.angular_nodes < 4:
            raise DomainError("angular_nodes >= 4", f"got {self.angular_nodes}")
        if self.mc_samples < 100:
            raise DomainError("mc_samples >= 100", f"got {self.mc_samples}")
        if not 0 < self.boundary_cutoff < 1:
            raise DomainError("0 < boundary_cutoff < 1", f"got {self.boundary_cutoff}")
        if not 0 <= int(self.seed) < 2 ** 64:
            raise DomainError("seed is an unsigned 64-bit integer", f"got {self.seed}")

    @classmethod
    def from_settings(cls, settings):
        return cls(
            radial_nodes=int(settings["radial_nodes"]),
            angular_nodes=int(settings["angular_nodes"]),
            mc_samples=int(settings["mc_samples"]),
            boundary_cutoff=float(settings["boundary_cutoff"]),
            seed=int(settings["seed"]),
        )

    def with_cutoff(self, cutoff):
        return replace(self, boundary_cutoff=float(cutoff))

    def with_seed(self, seed):
        return replace(self, seed=int(seed))

    def with_samples(self, samples):
        return replace(self, mc_samples=int(samples))

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class NormEstimate:
    """A nonnegative numerical value with its error estimate and provenance."""

    value: float
    stderr: float = 0.0
    method: Method = Method.GRID_QUAD
    diverged: bool = False

    def __post_init__(self):
        if math.isnan(self.value) or self.value < 0:
            raise DomainError("NormEstimate.value >= 0", f"got {self.value}")
        if self.stderr < 0:
            raise DomainError("NormEstimate.stderr >= 0", f"got {self.stderr}")
        if self.method != Method.MONTE_CARLO and self.stderr != 0:
            raise DomainError("stderr = 0 for deterministic methods", f"got {self.stderr}")

    @classmethod
    def divergent(cls, method=Method.GRID_QUAD):
        return cls(math.inf, 0.0, method, True)

    def flagged(self, diverged=True):
        return replace(self, diverged=diverged)

    def to_dict(self):
        return {"value": self.value, "stderr": self.stderr,
                "method": self.method.value, "diverged": self.diverged}
