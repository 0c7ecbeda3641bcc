"""Basepoint Holder certificates for boundary traces.

A certificate pins down |g(xi) - g(x0)| <= M |xi - x0|^mu on the boundary
arc of a patch: mu comes from a log-log fit over a geometric sample window
and M is the max empirical quotient at that exponent, so the bound holds
on the samples by construction.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import NonFiniteTrace, WindowTooNarrow
from ..geometry.domain import HalfPlane
from ..geometry.patch import BoundaryPatch
from ..powerlaw import ExponentFit, fit_power_law


@dataclass
class BasepointHolderCert:
    """Verified power-law control of a trace at the basepoint x0."""

    patch: BoundaryPatch
    x0: np.ndarray
    mu: float
    M: float
    sup_norm: float           # the A constant of the patch
    fit: ExponentFit | None = None

    def prefactor(self):
        """M + A / r0^mu, the combination the interior bounds scale with."""
        return self.M + self.sup_norm / self.patch.r0 ** self.mu

    def uniform_prefactor(self):
        """M r0^(mu-1) + A / r0, the mu > 1 combination."""
        return self.M * self.patch.r0 ** (self.mu - 1.0) + self.sup_norm / self.patch.r0

    def check_on_samples(self, points, values, value_at_x0, tol=1e-9):
        d = np.linalg.norm(np.atleast_2d(points) - self.x0, axis=1)
        dev = _norms(np.asarray(values) - np.asarray(value_at_x0))
        return bool(np.all(dev <= self.M * d ** self.mu * (1.0 + tol) + 1e-300))


def _norms(values):
    values = np.asarray(values, dtype=float)
    if values.ndim == 1:
        return np.abs(values)
    return np.linalg.norm(values, axis=-1)


def gamma_points_at_distances(patch: BoundaryPatch, distances):
    """Boundary points on Gamma at prescribed chordal distances from x0.

    Returns points on both sides of x0 where available (bisection on
    |p(s) - x0| within the Gamma window).
    """
    x0 = patch.x0
    if isinstance(patch.domain, HalfPlane):
        pts = [x0 + np.array([r, 0.0]) for r in distances]
        pts += [x0 - np.array([r, 0.0]) for r in distances]
        return np.array(pts)

    curve = patch.domain.curve
    lo, hi = patch.gamma_interval
    s0 = patch.s0

    def chord(s):
        return float(np.linalg.norm(curve.point(s) - x0))

    out = []
    for end in (hi, lo):
        span_max = chord(end)
        for r in distances:
            if r >= span_max:
                continue
            a, b = s0, end
            for _ in range(60):
                mid = 0.5 * (a + b)
                if chord(mid) < r:
                    a = mid
                else:
                    b = mid
            out.append(curve.point(0.5 * (a + b)))
    return np.array(out)


def trace_holder_fit(values_fn, patch: BoundaryPatch, x0=None, n_samples=64,
                     d_min=None, d_max=None, sup_norm=None) -> BasepointHolderCert:
    """Fit the basepoint Holder exponent of a trace on Gamma.

    ``values_fn`` maps (n, 2) boundary points to scalar or vector values.
    Sample distances are geometric between d_min and d_max (defaults:
    r0 * [1e-3, 0.9] capped to the Gamma window, at least 1.5 decades).
    """
    x0 = patch.x0 if x0 is None else np.asarray(x0, dtype=float)
    d_max = 0.9 * patch.r0 if d_max is None else float(d_max)
    d_min = d_max * 1e-3 if d_min is None else float(d_min)
    if d_min <= 0 or d_max <= d_min:
        raise WindowTooNarrow(f"bad window [{d_min:g}, {d_max:g}]")
    if math.log10(d_max / d_min) < 1.5:
        raise WindowTooNarrow(
            f"window [{d_min:g}, {d_max:g}] spans under 1.5 decades"
        )
    half = max(n_samples // 2, 8)
    distances = np.geomspace(d_min, d_max, half)
    pts = gamma_points_at_distances(patch, distances)
    if pts.shape[0] < half:
        raise WindowTooNarrow("Gamma window too short for the requested distances")

    v0 = np.atleast_1d(np.asarray(values_fn(x0[None, :])))[0]
    vals = np.asarray(values_fn(pts))
    dev = _norms(vals - v0)
    if not np.all(np.isfinite(dev)):
        raise NonFiniteTrace("trace produced non-finite values")
    d = np.linalg.norm(pts - x0, axis=1)

    keep = dev > 0
    if np.count_nonzero(keep) < 4:
        # constant trace: any exponent certifies with M = 0
        return BasepointHolderCert(patch, x0, 1.0, 0.0,
                                   sup_norm if sup_norm is not None else float(np.max(_norms(vals))))
    fit = fit_power_law(d[keep], dev[keep], require_window=True)
    mu = fit.exponent
    M = float(np.max(dev[keep] / d[keep] ** mu))

    if sup_norm is None:
        gpts, _ = patch.gamma_points(256)
        cand = _norms(np.asarray(values_fn(gpts)))
        spts = patch.sigma_points(128)
        if spts.size:
            cand = np.concatenate([cand, _norms(np.asarray(values_fn(spts)))])
        sup_norm = float(np.max(cand))
    return BasepointHolderCert(patch, x0, float(mu), M, float(sup_norm), fit)


def field_trace(field):
    """Trace callable for a solver field: its own boundary data."""
    return lambda pts: field.boundary_data(np.atleast_2d(pts))


def map_trace(mapping):
    """Trace callable for a disk harmonic map, via boundary angles."""

    def values(pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        theta = np.arctan2(pts[:, 1], pts[:, 0])
        return mapping.boundary_values(theta)

    return values
