"""Dirichlet solvers and harmonic-measure estimation."""

from .closed_form import (HarmonicPoly, Linear, RadialPowerData, WedgePower,
                          half_disk_sigma_measure, half_plane_first_moment,
                          half_plane_interval_measure, half_plane_tail_measure)
from .fields import (ClosedFormField, GridBackedField, HarmonicField,
                     PoissonDiskField, WalkOnSpheresField, gradient_estimate,
                     make_field)
from .grid import GridSolution, grid_solve
from .measure import (GammaAll, GammaBeyond, GammaWithin, LeakProfile,
                      MomentResult, ParamArc, SigmaTarget, TailProfile,
                      UnionTarget, gamma_tail_profile, harmonic_measure,
                      layer_cake_moment, layer_cake_split_bound,
                      measure_from_exits, sigma_leak_profile)
from .params import MeasureEstimate, SolverParams
from .poissondisk import FourierDiskEvaluator, PoissonDiskEvaluator
from .wos import ExitRecord, mean_and_stderr, run_walks

__all__ = [
    "SolverParams", "MeasureEstimate",
    "HarmonicField", "ClosedFormField", "WalkOnSpheresField",
    "GridBackedField", "PoissonDiskField", "make_field", "gradient_estimate",
    "GridSolution", "grid_solve",
    "PoissonDiskEvaluator", "FourierDiskEvaluator",
    "ExitRecord", "run_walks", "mean_and_stderr",
    "WedgePower", "Linear", "HarmonicPoly", "RadialPowerData",
    "half_plane_interval_measure", "half_plane_tail_measure",
    "half_plane_first_moment", "half_disk_sigma_measure",
    "SigmaTarget", "GammaAll", "GammaBeyond", "GammaWithin", "ParamArc",
    "UnionTarget", "harmonic_measure", "measure_from_exits",
    "sigma_leak_profile", "gamma_tail_profile", "layer_cake_moment",
    "layer_cake_split_bound", "LeakProfile", "TailProfile", "MomentResult",
]
