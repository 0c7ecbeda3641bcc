"""Harmonic map construction and quasiconformal distortion instrumentation."""

from .distortion import (DifferentialSample, DistortionReport, differential,
                         distortion_check, linear_distortion_bound,
                         qc_constant, sample_from_matrix, svd2x2)
from .poisson_map import (DiskHarmonicMap, HarmonicMap, LinearMap,
                          MapComponentField, fourier_boundary_map,
                          identity_boundary_map, poisson_extension, shear_map,
                          tabulated_boundary_map, twist_boundary_map)
from .rotated import RotatedMap, rotate_to_chart

__all__ = [
    "svd2x2", "DifferentialSample", "sample_from_matrix", "differential",
    "qc_constant", "linear_distortion_bound", "distortion_check",
    "DistortionReport",
    "HarmonicMap", "LinearMap", "shear_map", "DiskHarmonicMap",
    "MapComponentField", "poisson_extension", "identity_boundary_map",
    "twist_boundary_map", "fourier_boundary_map", "tabulated_boundary_map",
    "RotatedMap", "rotate_to_chart",
]
