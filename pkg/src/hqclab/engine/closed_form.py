"""Closed-form harmonic functions used as exact backends and test oracles.

The wedge power r^mu cos(mu theta) on the upper half-plane is the
workhorse: its boundary trace is an exact power law at the origin and its
gradient magnitude is mu * r^(mu-1), which is what the decay checks must
recover.
"""

import numpy as np


class WedgePower:
    """u = amplitude * r^mu * cos(mu * theta) on the upper half-plane.

    Equals Re(z^mu) for amplitude 1 (principal branch; harmonic for y > 0).
    """

    def __init__(self, mu, amplitude=1.0):
        if mu <= 0:
            raise ValueError("mu must be positive")
        self.mu = float(mu)
        self.amplitude = float(amplitude)

    def value(self, xy):
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        z = xy[:, 0] + 1j * xy[:, 1]
        out = self.amplitude * np.real(z ** self.mu)
        return out if out.size > 1 else float(out[0])

    def grad(self, xy):
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        z = xy[:, 0] + 1j * xy[:, 1]
        w = self.mu * z ** (self.mu - 1.0)
        g = self.amplitude * np.stack([np.real(w), -np.imag(w)], axis=-1)
        return g if g.shape[0] > 1 else g[0]

    def grad_norm_on_ray(self, t):
        """|grad u| at (0, t): exactly amplitude * mu * t^(mu-1)."""
        t = np.asarray(t, dtype=float)
        return self.amplitude * self.mu * t ** (self.mu - 1.0)


class Linear:
    """u = a*x + b*y + c."""

    def __init__(self, a=1.0, b=0.0, c=0.0):
        self.a, self.b, self.c = float(a), float(b), float(c)

    def value(self, xy):
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        out = self.a * xy[:, 0] + self.b * xy[:, 1] + self.c
        return out if out.size > 1 else float(out[0])

    def grad(self, xy):
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        g = np.tile(np.array([self.a, self.b]), (xy.shape[0], 1))
        return g if g.shape[0] > 1 else g[0]


class HarmonicPoly:
    """u = amplitude * Re((x + i y)^k); k=2 gives x^2 - y^2."""

    def __init__(self, k=2, amplitude=1.0):
        self.k = int(k)
        self.amplitude = float(amplitude)

    def value(self, xy):
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        z = xy[:, 0] + 1j * xy[:, 1]
        out = self.amplitude * np.real(z ** self.k)
        return out if out.size > 1 else float(out[0])

    def grad(self, xy):
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        z = xy[:, 0] + 1j * xy[:, 1]
        w = self.k * z ** (self.k - 1)
        g = self.amplitude * np.stack([np.real(w), -np.imag(w)], axis=-1)
        return g if g.shape[0] > 1 else g[0]


class RadialPowerData:
    """Boundary data g(zeta) = |zeta - x0|^mu, the exact trace power law."""

    def __init__(self, x0=(0.0, 0.0), mu=0.5, amplitude=1.0):
        self.x0 = np.asarray(x0, dtype=float)
        self.mu = float(mu)
        self.amplitude = float(amplitude)

    def __call__(self, xy):
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        out = self.amplitude * np.linalg.norm(xy - self.x0, axis=1) ** self.mu
        return out if out.size > 1 else float(out[0])


# -- half-plane harmonic measure closed forms --------------------------------

def half_plane_interval_measure(pole, a, b):
    """omega^pole of the boundary interval (a, b) on the real axis."""
    x, t = float(pole[0]), float(pole[1])
    return (np.arctan((b - x) / t) - np.arctan((a - x) / t)) / np.pi


def half_plane_tail_measure(pole_height, s):
    """omega^{(0,t)} of {|x| > s} on the real axis: (2/pi) arctan(t/s)."""
    t = float(pole_height)
    s = np.asarray(s, dtype=float)
    return (2.0 / np.pi) * np.arctan(t / s)


def half_plane_first_moment(pole_height, s_max):
    """integral of |x| d omega^{(0,t)} over |x| <= s_max on the real axis."""
    t = float(pole_height)
    return (t / np.pi) * np.log(1.0 + (s_max / t) ** 2)


def half_disk_sigma_measure(t, r0=1.0):
    """omega^{(0,t)} of the cap of the upper half-disk: (4/pi) arctan(t/r0).

    Via the conformal square of the disk-to-half-plane Moebius map, the cap
    of the unit upper half-disk seen from (0, t) has measure
    4*arctan(t)/pi; scaling gives the general r0.
    """
    t = np.asarray(t, dtype=float)
    return (4.0 / np.pi) * np.arctan(t / r0)
