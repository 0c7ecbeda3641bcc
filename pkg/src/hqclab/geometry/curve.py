"""Closed planar boundary curves with explicit derivatives.

All catalog curves are parametrized counterclockwise over s in [0, 1), so
the interior lies to the left of the tangent and the inward normal is the
tangent rotated by +90 degrees.
"""

import math

import numpy as np

from ..errors import DegenerateTangent


class BoundaryCurve:
    """Closed Jordan curve p(s) with derivative p'(s), s in [0, 1).

    ``holder_alpha`` and ``holder_const`` bound the unit tangent increment
    after arc-length normalization:

        |T(l) - T(l')| <= holder_const * |l - l'|**holder_alpha.

    When ``holder_const`` is None it is measured from samples (supremum of
    quotients over pairs separated by at least ``min_pair_sep`` in parameter,
    which avoids noise amplification at tiny scales).
    """

    def __init__(self, p, dp, holder_alpha=1.0, holder_const=None,
                 resolution=1024, name="curve", min_pair_sep=1e-4):
        self.p = p
        self.dp = dp
        self.holder_alpha = float(holder_alpha)
        self.resolution = int(resolution)
        self.name = name
        self.min_pair_sep = float(min_pair_sep)

        s = np.arange(self.resolution) / self.resolution
        self._s_grid = s
        self._xy_grid = self.point(s)
        speeds = np.linalg.norm(self.derivative(s), axis=1)
        if np.any(speeds <= 0) or not np.all(np.isfinite(speeds)):
            raise DegenerateTangent(f"{name}: |p'(s)| vanishes on the sample grid")
        self._speed_grid = speeds
        # cumulative arc length at the grid nodes, trapezoid in s
        ds = 1.0 / self.resolution
        seg = 0.5 * (speeds + np.roll(speeds, -1)) * ds
        self._arclen_grid = np.concatenate([[0.0], np.cumsum(seg)])
        self.total_length = float(self._arclen_grid[-1])

        if holder_const is None:
            holder_const = self.measure_holder_const()
        self.holder_const = float(holder_const)

    # -- evaluation ----------------------------------------------------

    def point(self, s):
        s = np.asarray(s, dtype=float) % 1.0
        return np.asarray(self.p(s), dtype=float)

    def derivative(self, s):
        s = np.asarray(s, dtype=float) % 1.0
        return np.asarray(self.dp(s), dtype=float)

    def tangent(self, s):
        d = self.derivative(s)
        n = np.linalg.norm(d, axis=-1, keepdims=True)
        if np.any(n < 1e-14):
            raise DegenerateTangent(f"{self.name}: zero tangent at s={s}")
        return d / n

    def inward_normal(self, s):
        """Unit inward normal: tangent rotated +90 deg (ccw curves)."""
        t = self.tangent(s)
        t = np.atleast_2d(t)
        nrm = np.stack([-t[:, 1], t[:, 0]], axis=-1)
        return nrm[0] if nrm.shape[0] == 1 and np.asarray(s).ndim == 0 else nrm

    def arc_length(self, s0, s1):
        """Arc length from s0 to s1 going forward (s1 may wrap past 1)."""
        a = self._arc_at(s0 % 1.0)
        b = self._arc_at(s1 % 1.0)
        out = b - a
        return out if out >= 0 else out + self.total_length

    def _arc_at(self, s):
        idx = s * self.resolution
        i = int(idx)
        frac = idx - i
        if i >= self.resolution:
            return self.total_length
        return self._arclen_grid[i] + frac * (self._arclen_grid[i + 1] - self._arclen_grid[i])

    # -- sampled checks --------------------------------------------------

    def measure_holder_const(self):
        """Sup of |T(s)-T(s')| / arclen(s,s')**alpha over sampled pairs."""
        n = min(self.resolution, 512)
        s = np.arange(n) / n
        tang = self.tangent(s)
        arc = np.array([self._arc_at(v) for v in s])
        dt = np.linalg.norm(tang[:, None, :] - tang[None, :, :], axis=-1)
        dl = np.abs(arc[:, None] - arc[None, :])
        dl = np.minimum(dl, self.total_length - dl)
        sep = np.abs(s[:, None] - s[None, :])
        sep = np.minimum(sep, 1.0 - sep)
        mask = sep >= self.min_pair_sep
        if not np.any(mask):
            return 0.0
        quot = dt[mask] / np.maximum(dl[mask], 1e-300) ** self.holder_alpha
        return float(quot.max())

    def validate(self, tol=0.05):
        """Sampled Jordan-curve and regularity checks; raises on failure."""
        xy = self._xy_grid
        n = xy.shape[0]
        # closure: grid wraps by construction; endpoint match
        gap = np.linalg.norm(self.point(0.0) - self.point(1.0 - 1e-12))
        if gap > 1e-6 * max(1.0, self.total_length):
            raise DegenerateTangent(f"{self.name}: curve does not close (gap {gap:g})")
        # sampled self-intersection: non-adjacent polyline vertices must not
        # be closer than a fraction of the local chord scale
        chord = np.linalg.norm(np.roll(xy, -1, axis=0) - xy, axis=1)
        min_chord = chord.min()
        d2 = np.sum((xy[:, None, :] - xy[None, :, :]) ** 2, axis=-1)
        idx = np.arange(n)
        gap_idx = np.minimum(np.abs(idx[:, None] - idx[None, :]),
                             n - np.abs(idx[:, None] - idx[None, :]))
        far = gap_idx >= 8
        if np.any(d2[far] < (0.5 * min_chord) ** 2):
            raise DegenerateTangent(f"{self.name}: sampled self-intersection")
        measured = self.measure_holder_const()
        if measured > self.holder_const * (1.0 + tol) + 1e-12:
            raise DegenerateTangent(
                f"{self.name}: tangent Holder quotient {measured:g} exceeds "
                f"declared constant {self.holder_const:g}"
            )
        return True


# -- catalog ---------------------------------------------------------------

def circle(radius=1.0, center=(0.0, 0.0)):
    cx, cy = center
    tau = 2.0 * math.pi

    def p(s):
        th = tau * np.asarray(s)
        return np.stack([cx + radius * np.cos(th), cy + radius * np.sin(th)], axis=-1)

    def dp(s):
        th = tau * np.asarray(s)
        return np.stack([-tau * radius * np.sin(th), tau * radius * np.cos(th)], axis=-1)

    curve = BoundaryCurve(p, dp, holder_alpha=1.0, name=f"circle(r={radius:g})")
    curve.circle_data = (np.asarray(center, dtype=float), float(radius))
    return curve


def ellipse(a=2.0, b=1.0):
    tau = 2.0 * math.pi

    def p(s):
        th = tau * np.asarray(s)
        return np.stack([a * np.cos(th), b * np.sin(th)], axis=-1)

    def dp(s):
        th = tau * np.asarray(s)
        return np.stack([-tau * a * np.sin(th), tau * b * np.cos(th)], axis=-1)

    return BoundaryCurve(p, dp, holder_alpha=1.0, name=f"ellipse({a:g},{b:g})")


def _radial_curve(r_of_theta, dr_of_theta, name, holder_alpha=1.0, resolution=1024):
    tau = 2.0 * math.pi

    def p(s):
        th = tau * np.asarray(s)
        r = r_of_theta(th)
        return np.stack([r * np.cos(th), r * np.sin(th)], axis=-1)

    def dp(s):
        th = tau * np.asarray(s)
        r = r_of_theta(th)
        dr = dr_of_theta(th)
        return np.stack([tau * (dr * np.cos(th) - r * np.sin(th)),
                         tau * (dr * np.sin(th) + r * np.cos(th))], axis=-1)

    curve = BoundaryCurve(p, dp, holder_alpha=holder_alpha, name=name,
                          resolution=resolution)
    curve.radial_profile = (r_of_theta, dr_of_theta)
    return curve


def fourier_disk(cos_coeffs, sin_coeffs=None, resolution=2048):
    """r(theta) = 1 + sum_k a_k cos(k theta) + sum_k b_k sin(k theta).

    ``cos_coeffs``/``sin_coeffs`` map harmonic index k >= 1 to amplitude.
    """
    cos_coeffs = {int(k): float(v) for k, v in dict(cos_coeffs).items()}
    sin_coeffs = {int(k): float(v) for k, v in dict(sin_coeffs or {}).items()}
    if sum(abs(v) for v in cos_coeffs.values()) + sum(abs(v) for v in sin_coeffs.values()) >= 0.5:
        raise ValueError("fourier_disk perturbation too large to stay star-shaped")

    def r(th):
        out = np.ones_like(np.asarray(th, dtype=float))
        for k, a in cos_coeffs.items():
            out = out + a * np.cos(k * th)
        for k, b in sin_coeffs.items():
            out = out + b * np.sin(k * th)
        return out

    def dr(th):
        out = np.zeros_like(np.asarray(th, dtype=float))
        for k, a in cos_coeffs.items():
            out = out - a * k * np.sin(k * th)
        for k, b in sin_coeffs.items():
            out = out + b * k * np.cos(k * th)
        return out

    label = ",".join(f"{k}:{v:g}" for k, v in sorted(cos_coeffs.items()))
    return _radial_curve(r, dr, f"fourier_disk({label})", resolution=resolution)


def bump_disk(alpha=0.5, amplitude=0.1, width=2.0, resolution=4096):
    """Unit disk dented by a C^{1,alpha}-but-not-C^2 radial bump at theta=0.

    The profile |theta|^{1+alpha} * chi(theta/width) has a Holder (not
    Lipschitz) derivative at the bump center, so the curve is genuinely
    C^{1,alpha} there; chi is the standard smooth cutoff.
    """
    if not (0.0 < alpha <= 1.0):
        raise ValueError("bump exponent must lie in (0, 1]")
    if abs(amplitude) * math.pi ** (1 + alpha) >= 0.5:
        raise ValueError("bump amplitude too large to stay star-shaped")

    def chi(u):
        u = np.asarray(u, dtype=float)
        out = np.zeros_like(u)
        inside = np.abs(u) < 1.0
        ui = u[inside]
        out[inside] = np.exp(1.0 - 1.0 / (1.0 - ui * ui))
        return out

    def dchi(u):
        u = np.asarray(u, dtype=float)
        out = np.zeros_like(u)
        inside = np.abs(u) < 1.0
        ui = u[inside]
        q = 1.0 - ui * ui
        out[inside] = np.exp(1.0 - 1.0 / q) * (-2.0 * ui / q ** 2)
        return out

    def wrap(th):
        return (np.asarray(th, dtype=float) + math.pi) % (2.0 * math.pi) - math.pi

    def r(th):
        t = wrap(th)
        return 1.0 - amplitude * np.abs(t) ** (1.0 + alpha) * chi(t / width)

    def dr(th):
        t = wrap(th)
        a = np.abs(t)
        return -amplitude * ((1.0 + alpha) * a ** alpha * np.sign(t) * chi(t / width)
                             + a ** (1.0 + alpha) * dchi(t / width) / width)

    return _radial_curve(r, dr, f"bump_disk(a={alpha:g},amp={amplitude:g})",
                         holder_alpha=alpha, resolution=resolution)
