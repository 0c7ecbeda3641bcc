"""Planar harmonic maps: Poisson extensions of circle homeomorphisms.

A map is represented by the harmonic extension of complex boundary data
g(theta) on the unit disk; both coordinate components ride in one complex
quadrature.  LinearMap covers the exact affine cases used as oracles.
"""

import numpy as np

from ..errors import NotInjective, QuadratureUnderResolved, StepTooLarge
from ..engine.fields import HarmonicField
from ..engine.params import SolverParams
from ..engine.poissondisk import FourierDiskEvaluator, PoissonDiskEvaluator

_TWO_PI = 2.0 * np.pi


class MapComponentField(HarmonicField):
    """Scalar field w . f(x) + offset for a fixed weight vector w.

    Lets the scalar regularity machinery (gradients, tents, decay fits)
    run on any linear functional of a map, such as a rotated normal
    component.
    """

    def __init__(self, mapping, weights, offset=0.0, params=None):
        self.mapping = mapping
        self.weights = np.asarray(weights, dtype=float)
        self.offset = float(offset)
        self.backend = mapping.component_backend

        def boundary_data(xy):
            return np.atleast_2d(mapping.values(xy)) @ self.weights + self.offset

        super().__init__(mapping.source, boundary_data,
                         params or getattr(mapping, "params", None))

    def evaluate_many(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        vals = np.atleast_2d(self.mapping.values(pts)) @ self.weights + self.offset
        return vals, np.zeros_like(vals)

    def gradient(self, x, h=None):
        A, err = self.mapping.differential_matrix(np.asarray(x, dtype=float), h=h)
        return A.T @ self.weights, err


class HarmonicMap:
    """Base: a map with harmonic components on a source region."""

    component_backend = "closed_form"

    def __init__(self, source, target=None):
        self.source = source
        self.target = target

    def values(self, xy):
        raise NotImplementedError

    def boundary_values(self, theta):
        raise NotImplementedError

    def differential_matrix(self, x, h=None):
        raise NotImplementedError

    def component_field(self, i, params=None):
        w = np.zeros(2)
        w[i] = 1.0
        return MapComponentField(self, w, params=params)

    @property
    def u1(self):
        return self.component_field(0)

    @property
    def u2(self):
        return self.component_field(1)


class LinearMap(HarmonicMap):
    """f(x) = A x + b; the exact-arithmetic test family."""

    def __init__(self, A, b=(0.0, 0.0), source=None, target=None):
        super().__init__(source, target)
        self.A = np.asarray(A, dtype=float).reshape(2, 2)
        self.b = np.asarray(b, dtype=float)

    def values(self, xy):
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        return xy @ self.A.T + self.b

    def boundary_values(self, theta):
        theta = np.atleast_1d(np.asarray(theta, dtype=float))
        circle = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
        return circle @ self.A.T + self.b

    def differential_matrix(self, x, h=None):
        return self.A.copy(), 0.0


def shear_map(c, source=None, target=None):
    """z + c * conj(z) for real c: differential diag(1 + c, 1 - c)."""
    return LinearMap(np.diag([1.0 + c, 1.0 - c]), source=source, target=target)


# -- boundary map specs -------------------------------------------------------

def identity_boundary_map():
    return lambda theta: np.exp(1j * np.asarray(theta, dtype=float))


def twist_boundary_map(eps):
    eps = float(eps)

    def g(theta):
        theta = np.asarray(theta, dtype=float)
        return np.exp(1j * (theta + eps * np.sin(theta)))

    return g


def fourier_boundary_map(coeffs):
    """g(theta) = sum_k c_k e^{i k theta}; coeffs maps k to complex c_k."""
    items = [(int(k), complex(v)) for k, v in dict(coeffs).items()]

    def g(theta):
        theta = np.asarray(theta, dtype=float)
        out = np.zeros(theta.shape, dtype=complex)
        for k, c in items:
            out = out + c * np.exp(1j * k * theta)
        return out

    return g


def tabulated_boundary_map(theta_pts, xy_pts):
    """Periodic linear interpolation through tabulated boundary samples."""
    theta_pts = np.asarray(theta_pts, dtype=float) % _TWO_PI
    order = np.argsort(theta_pts)
    tp = theta_pts[order]
    vals = np.asarray(xy_pts, dtype=float)[order]
    zp = vals[:, 0] + 1j * vals[:, 1]
    tp_ext = np.concatenate([tp, [tp[0] + _TWO_PI]])
    zp_ext = np.concatenate([zp, [zp[0]]])

    def g(theta):
        th = np.asarray(theta, dtype=float) % _TWO_PI
        re = np.interp(th, tp_ext, zp_ext.real, period=_TWO_PI)
        im = np.interp(th, tp_ext, zp_ext.imag, period=_TWO_PI)
        return re + 1j * im

    return g


class DiskHarmonicMap(HarmonicMap):
    """Harmonic extension of complex circle data by Poisson quadrature."""

    component_backend = "poisson_disk"

    def __init__(self, g_theta, source, target=None, n_nodes=2048,
                 params=None, trace_offset=1e-3):
        super().__init__(source, target)
        self.g = g_theta
        self.evaluator = PoissonDiskEvaluator(g_theta, n_nodes=n_nodes)
        self.params = params or SolverParams()
        self.trace_offset = float(trace_offset)

    def values(self, xy):
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        w = self.evaluator.values(xy[:, 0] + 1j * xy[:, 1])
        return np.stack([w.real, w.imag], axis=-1)

    def boundary_values(self, theta):
        """Trace by Richardson-extrapolated radial limits."""
        w = self.evaluator.radial_trace(np.asarray(theta, dtype=float),
                                        offset=self.trace_offset)
        return np.stack([w.real, w.imag], axis=-1)

    def differential_matrix(self, x, h=None):
        x = np.asarray(x, dtype=float)
        delta = float(np.atleast_1d(self.source.delta(x[None, :]))[0])
        if h is None:
            h = delta / 8.0
        if h >= delta / 2.0:
            raise StepTooLarge(f"step {h:g} >= delta/2 = {delta / 2:g}")
        stencil = np.array([[h, 0.0], [-h, 0.0], [0.0, h], [0.0, -h]])
        w = self.evaluator.values((x[0] + stencil[:, 0]) + 1j * (x[1] + stencil[:, 1]))
        fx = (w[0] - w[1]) / (2 * h)
        fy = (w[2] - w[3]) / (2 * h)
        Df = np.array([[fx.real, fy.real], [fx.imag, fy.imag]])
        return Df, 0.0

    def spectral_oracle(self, n_nodes=None):
        """Independent FFT-series evaluator over the same boundary data."""
        return FourierDiskEvaluator(self.g, n_nodes=n_nodes or self.evaluator.n)


def poisson_extension(boundary_map, source, target=None, n_nodes=2048,
                      params=None, validate=True) -> DiskHarmonicMap:
    """Harmonic extension of a sampled circle homeomorphism.

    ``boundary_map`` is a callable theta -> complex point on the target
    boundary.  Validation rejects data that is not degree-1 injective on
    samples (NotInjective) and data whose spectrum has not decayed by the
    quadrature cutoff (QuadratureUnderResolved).
    """
    if n_nodes < 512:
        raise QuadratureUnderResolved("need at least 512 quadrature nodes")
    if validate:
        theta = _TWO_PI * np.arange(512) / 512
        z = np.asarray(boundary_map(theta), dtype=complex)
        center = z.mean()
        ang = np.angle(z - center)
        inc = np.diff(np.concatenate([ang, ang[:1]]))
        inc = (inc + np.pi) % _TWO_PI - np.pi
        winding = round(float(np.sum(inc)) / _TWO_PI)
        if winding != 1:
            raise NotInjective(f"boundary map has winding {winding}, expected 1")
        if _polyline_self_intersects(z):
            raise NotInjective("sampled boundary image self-intersects")
        c = np.fft.fft(np.asarray(boundary_map(_TWO_PI * np.arange(n_nodes) / n_nodes),
                                  dtype=complex)) / n_nodes
        total = np.sum(np.abs(c))
        k = np.fft.fftfreq(n_nodes, d=1.0 / n_nodes)
        tail = np.sum(np.abs(c[np.abs(k) >= n_nodes // 4]))
        if total > 0 and tail > 1e-8 * total:
            raise QuadratureUnderResolved(
                f"spectrum tail fraction {tail / total:g} too large at N={n_nodes}"
            )
    return DiskHarmonicMap(boundary_map, source, target=target,
                           n_nodes=n_nodes, params=params)


def _polyline_self_intersects(z):
    """Segment-pair test on the closed sampled image polygon."""
    pts = np.stack([z.real, z.imag], axis=-1)
    n = pts.shape[0]
    a = pts
    b = np.roll(pts, -1, axis=0)
    d = b - a
    # cross products for all segment pairs, vectorized
    ax, ay = a[:, 0], a[:, 1]
    dx, dy = d[:, 0], d[:, 1]

    def cross(ox, oy, vx, vy, px, py):
        return (px - ox) * vy - (py - oy) * vx

    c1 = cross(ax[:, None], ay[:, None], dx[:, None], dy[:, None],
               ax[None, :], ay[None, :])
    c2 = cross(ax[:, None], ay[:, None], dx[:, None], dy[:, None],
               b[None, :, 0], b[None, :, 1])
    c3 = cross(ax[None, :], ay[None, :], dx[None, :], dy[None, :],
               ax[:, None], ay[:, None])
    c4 = cross(ax[None, :], ay[None, :], dx[None, :], dy[None, :],
               b[:, None, 0], b[:, None, 1])
    proper = (c1 * c2 < 0) & (c3 * c4 < 0)
    idx = np.arange(n)
    gap = np.minimum((idx[:, None] - idx[None, :]) % n,
                     (idx[None, :] - idx[:, None]) % n)
    return bool(np.any(proper & (gap > 1)))
