"""Quantitative regularity checks: certificates, decay rates, iteration."""

from .certificates import (BasepointHolderCert, field_trace,
                           gamma_points_at_distances, map_trace,
                           trace_holder_fit)
from .checks import (GradientDecayReport, TentReport, UniformGradientReport,
                     gradient_decay_check, tent_check, uniform_gradient_check)
from .improvement import (CollarGradientReport, ImprovedNormalCert,
                          PathUpgradeReport, collar_gradient_bound,
                          normal_trace_improvement, path_holder_upgrade)
from .iteration import IterationTrace, exponent_iteration
from .pipeline import (PipelineReport, StageRecord, lipschitz_pipeline,
                       quasiconvexity_constant)

__all__ = [
    "BasepointHolderCert", "trace_holder_fit", "field_trace", "map_trace",
    "gamma_points_at_distances",
    "TentReport", "tent_check",
    "GradientDecayReport", "gradient_decay_check",
    "UniformGradientReport", "uniform_gradient_check",
    "ImprovedNormalCert", "normal_trace_improvement",
    "CollarGradientReport", "collar_gradient_bound",
    "PathUpgradeReport", "path_holder_upgrade",
    "IterationTrace", "exponent_iteration",
    "PipelineReport", "StageRecord", "lipschitz_pipeline",
    "quasiconvexity_constant",
]
