"""Rotated maps: compose a harmonic map with the target graph chart motion.

After the rigid motion of the chart at q = f(xi), the map's last component
measures height over the target boundary graph, so its boundary trace obeys
F_n(eta) = phi(F_tang(eta)) wherever the trace stays inside the chart
window.  Rigid motions leave singular values of the differential unchanged.
"""

import numpy as np

from ..errors import ChartResidualTooLarge, TraceOutsideChart
from ..geometry.chart import GraphChart, flatten_chart
from .poisson_map import HarmonicMap, MapComponentField

_TWO_PI = 2.0 * np.pi


class RotatedMap(HarmonicMap):
    """T_q composed with f, where T_q(z) = R (z - q) is the chart motion."""

    def __init__(self, base: HarmonicMap, chart: GraphChart, xi,
                 xi_theta=None):
        super().__init__(base.source, base.target)
        self.base = base
        self.chart = chart
        self.xi = np.asarray(xi, dtype=float)
        self.xi_theta = xi_theta
        self.component_backend = base.component_backend
        self.params = getattr(base, "params", None)

    def values(self, xy):
        f = np.atleast_2d(self.base.values(xy))
        return (f - self.chart.base_point) @ self.chart.rotation.T

    def boundary_values(self, theta):
        F = np.atleast_2d(self.base.boundary_values(theta))
        return (F - self.chart.base_point) @ self.chart.rotation.T

    def differential_matrix(self, x, h=None):
        A, err = self.base.differential_matrix(x, h=h)
        return self.chart.rotation @ A, err

    def tangential_field(self, params=None) -> MapComponentField:
        R = self.chart.rotation
        return MapComponentField(self.base, R[0],
                                 offset=-float(R[0] @ self.chart.base_point),
                                 params=params)

    def normal_field(self, params=None) -> MapComponentField:
        """The chart-height component, the function the decay lemmas act on."""
        R = self.chart.rotation
        return MapComponentField(self.base, R[1],
                                 offset=-float(R[1] @ self.chart.base_point),
                                 params=params)

    def boundary_identity_residual(self, theta):
        """|F_n(eta) - phi(F_tang(eta))| at boundary parameters eta.

        Raises TraceOutsideChart when the trace leaves the chart window.
        """
        F = self.boundary_values(theta)
        if np.any(np.abs(F[:, 0]) > self.chart.radius):
            raise TraceOutsideChart(
                f"trace leaves the chart window (|y1| up to "
                f"{np.max(np.abs(F[:, 0])):g} > {self.chart.radius:g})"
            )
        return np.abs(F[:, 1] - self.chart.phi(F[:, 0]))


def rotate_to_chart(mapping: HarmonicMap, xi, chart_radius=None, alpha=None,
                    residual_tol=1e-6, n_check=64,
                    check_window=0.25) -> RotatedMap:
    """Build the rotated map at source boundary point xi.

    The chart is taken on the target boundary at q = f(xi); the rotated
    map must send xi to the chart origin and satisfy the graph identity on
    nearby boundary samples (checked over a parameter window around xi).
    """
    if mapping.target is None:
        raise TraceOutsideChart("map has no target domain to build a chart on")
    xi = np.asarray(xi, dtype=float)
    theta_xi = float(np.arctan2(xi[1], xi[0]))
    q = np.atleast_2d(mapping.boundary_values(np.array([theta_xi])))[0]
    chart = flatten_chart(mapping.target, q, radius=chart_radius, alpha=alpha)
    rot = RotatedMap(mapping, chart, xi, xi_theta=theta_xi)

    origin = rot.boundary_values(np.array([theta_xi]))[0]
    scale = max(1.0, float(np.linalg.norm(chart.base_point)))
    if np.linalg.norm(origin) > 1e-6 * scale:
        raise ChartResidualTooLarge(
            f"rotated map sends xi to {origin}, not the chart origin"
        )

    # residual check on a shrinking window so the trace stays in the chart
    window = check_window
    for _ in range(12):
        eta = theta_xi + np.linspace(-window, window, n_check)
        F = rot.boundary_values(eta)
        if np.max(np.abs(F[:, 0])) <= chart.radius:
            res = np.abs(F[:, 1] - chart.phi(F[:, 0]))
            if np.max(res) > residual_tol * scale:
                raise ChartResidualTooLarge(
                    f"graph identity residual {np.max(res):g} exceeds "
                    f"{residual_tol * scale:g}"
                )
            rot.residual_window = window
            return rot
        window *= 0.5
    raise TraceOutsideChart("no parameter window keeps the trace in the chart")
