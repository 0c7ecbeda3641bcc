"""C^{1,alpha} domain geometry: curves, tubular coordinates, charts, patches."""

from .chart import GraphChart, flat_chart, flatten_chart
from .config import domain_from_config, write_curve_csv
from .curve import BoundaryCurve, bump_disk, circle, ellipse, fourier_disk
from .domain import HalfPlane, PlanarDomain, inward_normal, nearest_point, unit_disk
from .patch import (GAMMA, SIGMA, BoundaryPatch, ThreePiecePath, build_patch,
                    half_plane_patch, three_piece_path)

__all__ = [
    "BoundaryCurve", "circle", "ellipse", "fourier_disk", "bump_disk",
    "PlanarDomain", "HalfPlane", "unit_disk", "nearest_point", "inward_normal",
    "GraphChart", "flatten_chart", "flat_chart",
    "BoundaryPatch", "build_patch", "half_plane_patch",
    "ThreePiecePath", "three_piece_path", "GAMMA", "SIGMA",
    "domain_from_config", "write_curve_csv",
]
