"""Boundary flattening: local graph coordinates at a boundary point.

At a base point q the rigid motion y = R (z - q) sends the tangent to e1
and the inward normal to e2, after which the nearby boundary is the graph
y2 = phi(y1) with phi(0) = 0 and phi'(0) = 0.
"""

from dataclasses import dataclass, field

import numpy as np

from ..errors import OutsideTubular, RadiusTooLarge


@dataclass
class GraphChart:
    """Local C^{1,alpha} graph representation of a boundary arc.

    ``graph_const`` is the measured constant making both sampled bounds

        |phi'(y1)| <= graph_const * |y1|**alpha
        |phi(y1)|  <= graph_const * |y1|**(1 + alpha)

    hold on the window |y1| < radius (no silent inflation: the constant is
    the max of the two sampled quotient suprema).
    """

    base_point: np.ndarray
    rotation: np.ndarray      # 2x2, maps tangent to e1 and inward normal to e2
    radius: float
    alpha: float
    graph_const: float
    _phi: object = field(repr=False)
    _dphi: object = field(repr=False)

    def to_chart(self, points):
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        return (pts - self.base_point) @ self.rotation.T

    def from_chart(self, y):
        y = np.atleast_2d(np.asarray(y, dtype=float))
        return y @ self.rotation + self.base_point

    def phi(self, y1):
        return self._phi(np.asarray(y1, dtype=float))

    def dphi(self, y1):
        return self._dphi(np.asarray(y1, dtype=float))

    def boundary_residual(self, points):
        """|y2 - phi(y1)| for points that should lie on the boundary."""
        y = self.to_chart(points)
        if np.any(np.abs(y[:, 0]) > self.radius):
            raise OutsideTubular("points leave the chart window")
        return np.abs(y[:, 1] - self.phi(y[:, 0]))


def _rotation_for(tangent, normal):
    # rows are the images' preimages: R @ tangent = e1, R @ normal = e2
    return np.array([[tangent[0], tangent[1]], [normal[0], normal[1]]])


def flat_chart(q, direction=(1.0, 0.0), radius=1.0):
    """Chart for a straight boundary through q: phi identically zero."""
    t = np.asarray(direction, dtype=float)
    t = t / np.linalg.norm(t)
    nu = np.array([-t[1], t[0]])
    zero = lambda y1: np.zeros_like(np.asarray(y1, dtype=float))
    return GraphChart(np.asarray(q, dtype=float), _rotation_for(t, nu),
                      float(radius), 1.0, 0.0, zero, zero)


def flatten_chart(domain, q, radius=None, alpha=None, n_table=4096):
    """Graph chart of the domain boundary at boundary point q.

    The graph window is the largest parameter interval around q on which
    the tangential coordinate is strictly monotone with slope bounded away
    from zero, so the graph is injective; RadiusTooLarge is raised when a
    requested radius exceeds it.  ``alpha`` defaults to the curve's
    exponent; a smaller value is allowed (the graph bounds then hold with
    the constant re-measured at that exponent on the window).
    """
    if getattr(domain, "curve", None) is None:
        return flat_chart(q, radius=radius or 1.0)

    curve = domain.curve
    nu, s_q = domain.inward_normal_at(q)
    tang = curve.tangent(s_q)
    R = _rotation_for(tang, nu)
    q = curve.point(s_q)   # snap exactly onto the curve

    # march both ways while the tangential speed keeps a safe margin
    ds = 0.25 / n_table

    def march(sign):
        steps = int(0.5 / ds)
        svals = s_q + sign * ds * np.arange(1, steps)
        dirs = curve.derivative(svals)
        speed = np.linalg.norm(dirs, axis=1)
        slope_ok = (dirs @ tang) > 0.25 * speed
        bad = np.nonzero(~slope_ok)[0]
        stop = bad[0] if bad.size else steps - 1
        return svals[:stop]

    s_plus = march(+1.0)
    s_minus = march(-1.0)
    if s_plus.size < 4 or s_minus.size < 4:
        raise RadiusTooLarge(f"no injective graph window at q={q}")

    s_all = np.concatenate([s_minus[::-1], [s_q], s_plus])
    rel = curve.point(s_all) - q
    y1 = rel @ tang
    y2 = rel @ nu
    r_max = 0.999 * min(float(y1.max()), float(-y1.min()))
    if radius is not None:
        if radius > r_max:
            raise RadiusTooLarge(
                f"requested radius {radius:g} exceeds injective window {r_max:g}"
            )
        r_max = float(radius)

    keep = np.abs(y1) <= r_max / 0.999
    y1_t, s_t = y1[keep], s_all[keep]
    order = np.argsort(y1_t)
    y1_t, s_t = y1_t[order], s_t[order]

    def param_of(y1_query):
        y1q = np.atleast_1d(np.asarray(y1_query, dtype=float))
        s = np.interp(y1q, y1_t, s_t)
        for _ in range(6):   # Newton polish of (p(s)-q).tang = y1
            g = (curve.point(s) - q) @ tang - y1q
            gp = curve.derivative(s) @ tang
            s = s - g / gp
        return s

    def phi(y1_query):
        scalar = np.asarray(y1_query).ndim == 0
        s = param_of(y1_query)
        out = (curve.point(s) - q) @ nu
        return float(out[0]) if scalar else out

    def dphi(y1_query):
        scalar = np.asarray(y1_query).ndim == 0
        s = param_of(y1_query)
        d = curve.derivative(s)
        out = (d @ nu) / (d @ tang)
        return float(out[0]) if scalar else out

    if alpha is None:
        alpha = curve.holder_alpha
    elif alpha > curve.holder_alpha:
        raise RadiusTooLarge(
            f"requested alpha {alpha:g} exceeds the curve's {curve.holder_alpha:g}"
        )
    probe = np.linspace(-r_max, r_max, 801)
    probe = probe[np.abs(probe) > 1e-9 * max(r_max, 1.0)]
    c_phi = float(np.max(np.abs(phi(probe)) / np.abs(probe) ** (1.0 + alpha)))
    c_dphi = float(np.max(np.abs(dphi(probe)) / np.abs(probe) ** alpha))
    return GraphChart(q, R, r_max, float(alpha), max(c_phi, c_dphi), phi, dphi)
