"""Boundary patches: the local solver geometry near a boundary point.

A patch is the region Omega_0 = D intersect B(x0, r0).  Its boundary splits
into the arc Gamma (domain boundary inside the ball) and the cap Sigma
(ball boundary inside the domain); the collar fraction c fixes how deep
along the inward normal the pole of a harmonic-measure experiment may sit.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import (OutsideTubular, PatchDegenerate, PathLeavesDomain,
                      SeparationViolation, TubularViolation)
from .domain import HalfPlane

GAMMA = 0
SIGMA = 1

_C_CANDIDATES = [0.45, 0.40, 0.35, 0.30, 0.25, 0.20, 0.15, 0.10, 0.05]


@dataclass
class BoundaryPatch:
    """Omega_0 = D intersect B(x0, r0) with its boundary decomposition."""

    domain: object
    x0: np.ndarray
    s0: float
    r0: float
    nu0: np.ndarray
    gamma_interval: tuple     # parameter interval (lo, hi), wrap allowed
    sigma_arcs: list          # list of (angle_lo, angle_hi) on the cap circle
    collar_fraction: float

    @property
    def diameter(self):
        return 2.0 * self.r0

    def pole(self, t):
        """Point x0 + t * nu on the inward normal ray."""
        return self.x0 + float(t) * self.nu0

    def contains(self, xy):
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        inside = np.atleast_1d(self.domain.contains(xy))
        inside &= np.linalg.norm(xy - self.x0, axis=1) < self.r0
        return inside if inside.size > 1 else bool(inside[0])

    def delta(self, xy):
        """Accurate distance to the patch boundary (min of the two pieces)."""
        single = np.asarray(xy).ndim == 1
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        d_dom = np.atleast_1d(self.domain.delta(xy))
        d_cap = self.r0 - np.linalg.norm(xy - self.x0, axis=1)
        out = np.minimum(d_dom, d_cap)
        return float(out[0]) if single else out

    def wos_distance(self, xy):
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        d_dom = self.domain.wos_distance(xy)
        d_cap = self.r0 - np.linalg.norm(xy - self.x0, axis=1)
        return np.maximum(np.minimum(d_dom, d_cap), 0.0)

    def wos_absorb(self, xy):
        """Snap near-boundary points to Gamma or Sigma, whichever is closer."""
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        d_dom = self.domain.wos_distance(xy)
        rel = xy - self.x0
        rad = np.linalg.norm(rel, axis=1)
        d_cap = self.r0 - rad
        to_sigma = d_cap < d_dom
        exit_xy, piece, param = self.domain.wos_absorb(xy)
        piece = piece.copy()
        param = np.asarray(param, dtype=float).copy()
        if np.any(to_sigma):
            safe = np.where(rad[to_sigma] == 0.0, 1.0, rad[to_sigma])
            proj = self.x0 + self.r0 * rel[to_sigma] / safe[:, None]
            exit_xy[to_sigma] = proj
            piece[to_sigma] = SIGMA
            param[to_sigma] = np.arctan2(rel[to_sigma, 1], rel[to_sigma, 0])
        return exit_xy, piece, param

    # -- boundary sampling -------------------------------------------------

    def gamma_points(self, n=256):
        """Points on Gamma, ordered along the boundary."""
        lo, hi = self.gamma_interval
        s = np.linspace(lo, hi, n)
        if isinstance(self.domain, HalfPlane):
            return self.domain.boundary_point(s), s
        return self.domain.curve.point(s % 1.0), s % 1.0

    def sigma_points(self, n=256):
        pts = []
        for a0, a1 in self.sigma_arcs:
            ang = np.linspace(a0, a1, max(8, int(n * (a1 - a0) / (2 * math.pi))))
            pts.append(self.x0 + self.r0 * np.stack([np.cos(ang), np.sin(ang)], axis=-1))
        return np.concatenate(pts, axis=0) if pts else np.zeros((0, 2))

    def gamma_point_at(self, s):
        if isinstance(self.domain, HalfPlane):
            return self.domain.boundary_point(s)
        return self.domain.curve.point(np.asarray(s) % 1.0)

    def separation_margin(self, c=None):
        """min |sigma - x0| - 2*c*r0 over cap samples (> 0 required)."""
        c = self.collar_fraction if c is None else c
        sig = self.sigma_points(512)
        if sig.shape[0] == 0:
            return self.r0
        dmin = float(np.min(np.linalg.norm(sig - self.x0, axis=1)))
        return dmin - 2.0 * c * self.r0


def _gamma_interval(domain, x0, s0, r0):
    """Parameter window of the boundary arc through s0 inside B(x0, r0)."""
    if isinstance(domain, HalfPlane):
        return (s0 - r0, s0 + r0)
    curve = domain.curve

    def dist(s):
        return np.linalg.norm(curve.point(s) - x0)

    def cross(sign):
        step = 1.0 / 4096.0
        s = s0
        for _ in range(4096):
            s_next = s + sign * step
            if dist(s_next) >= r0:
                lo, hi = s, s_next
                for _ in range(60):
                    mid = 0.5 * (lo + hi)
                    if dist(mid) < r0:
                        lo = mid
                    else:
                        hi = mid
                return 0.5 * (lo + hi)
            s = s_next
        raise PatchDegenerate(f"boundary never leaves B(x0, {r0:g})")

    s_hi = cross(+1.0)
    s_lo = cross(-1.0)

    # degenerate when the boundary re-enters the ball away from the arc
    sg = np.arange(4096) / 4096.0
    inside = np.linalg.norm(curve.point(sg) - x0, axis=1) < r0
    width = (s_hi - s_lo) % 1.0
    rel = (sg - s_lo) % 1.0
    stray = inside & (rel > width)
    if np.any(stray):
        raise PatchDegenerate("domain boundary re-enters the patch ball away from x0")
    return (s_lo, s_lo + width)


def _sigma_arcs(domain, x0, r0, n_scan=2048):
    """Angle intervals of the cap circle lying inside the domain."""
    ang = np.arange(n_scan) * (2.0 * math.pi / n_scan)
    pts = x0 + r0 * np.stack([np.cos(ang), np.sin(ang)], axis=-1)
    inside = np.atleast_1d(domain.contains(pts))
    if not np.any(inside):
        return []
    if np.all(inside):
        return [(0.0, 2.0 * math.pi)]

    def refine(a_in, a_out):
        for _ in range(60):
            mid = 0.5 * (a_in + a_out)
            p = x0 + r0 * np.array([math.cos(mid), math.sin(mid)])
            if domain.contains(p):
                a_in = mid
            else:
                a_out = mid
        return 0.5 * (a_in + a_out)

    arcs = []
    flips = np.nonzero(inside != np.roll(inside, -1))[0]
    step = 2.0 * math.pi / n_scan
    edges = []
    for i in flips:
        a, b = ang[i], ang[i] + step
        if inside[i]:
            edges.append(("out", refine(a, b)))
        else:
            edges.append(("in", refine(b, a)))
    edges.sort(key=lambda e: e[1])
    # pair entry/exit angles into arcs, handling wrap
    ins = [a for k, a in edges if k == "in"]
    outs = [a for k, a in edges if k == "out"]
    for a_in in ins:
        later = [a for a in outs if a > a_in]
        a_out = later[0] if later else outs[0] + 2.0 * math.pi
        arcs.append((a_in, a_out))
    return arcs


def build_patch(domain, x0, r0, collar_fraction=None):
    """Construct the patch at boundary point x0 with ball radius r0.

    When ``collar_fraction`` is None the largest candidate in
    {0.05, ..., 0.45} passing both the cap-separation test and the
    normal-segment uniqueness test is chosen; an explicit value that fails
    either test raises SeparationViolation.
    """
    x0 = np.asarray(x0, dtype=float)
    if not isinstance(domain, HalfPlane):
        # gate against the un-halved measured uniqueness radius; the halved
        # tubular_radius is a collar-depth safety margin, not a ball cap
        domain.tubular_radius
        limit = getattr(domain, "measured_uniqueness_radius", domain.tubular_radius)
        if r0 > limit * (1.0 + 1e-9):
            raise TubularViolation(
                f"r0={r0:g} exceeds measured uniqueness radius {limit:g}"
            )
    nu0, s0 = domain.inward_normal_at(x0)
    gamma = _gamma_interval(domain, x0, s0, r0)
    if isinstance(domain, HalfPlane):
        arcs = [(0.0, math.pi)] if r0 > 0 else []
    else:
        arcs = _sigma_arcs(domain, x0, r0)

    patch = BoundaryPatch(domain, x0, s0, r0, nu0, gamma, arcs, 0.0)

    def c_valid(c):
        if patch.separation_margin(c) <= 0:
            return False
        t = np.linspace(1e-3, 2.0 * c * r0, 32)
        pts = x0 + t[:, None] * nu0
        inside = np.atleast_1d(domain.contains(pts))
        if not np.all(inside):
            return False
        d = np.atleast_1d(domain.delta(pts))
        return bool(np.all(np.abs(d - t) <= 1e-6 * max(1.0, r0)))

    if collar_fraction is None:
        for c in _C_CANDIDATES:
            if c_valid(c):
                patch.collar_fraction = c
                break
        else:
            raise PatchDegenerate("no collar fraction in {0.05..0.45} is valid")
    else:
        if not c_valid(collar_fraction):
            raise SeparationViolation(
                f"collar fraction {collar_fraction:g} fails the separation test "
                f"(margin {patch.separation_margin(collar_fraction):g})"
            )
        patch.collar_fraction = float(collar_fraction)
    return patch


def half_plane_patch(r0=1.0, extent=2.0, collar_fraction=0.45):
    """The upper half-disk: patch of the half-plane at the origin."""
    return build_patch(HalfPlane(extent), (0.0, 0.0), r0, collar_fraction)


# -- three-piece path --------------------------------------------------------

@dataclass
class ThreePiecePath:
    """Normal-up, offset-arc, normal-down path between two boundary points."""

    rho: float
    pieces: tuple            # three (n, 2) arrays of sample points
    arclengths: tuple        # cumulative arc length per piece
    delta_profiles: tuple    # accurate boundary distance per sample

    @property
    def lengths(self):
        return tuple(float(a[-1]) for a in self.arclengths)

    def total_length(self):
        return sum(self.lengths)


def _cumlen(pts):
    seg = np.linalg.norm(np.diff(pts, axis=0), axis=1)
    return np.concatenate([[0.0], np.cumsum(seg)])


def three_piece_path(domain, xi, eta, n_per_piece=64):
    """Connect boundary points xi and eta through the interior.

    gamma1 climbs the inward normal at xi to height rho = |xi - eta|,
    gamma2 follows the boundary arc offset inward by rho, gamma3 descends
    the normal at eta.  Along gamma2 the boundary distance stays rho up to
    curvature corrections (exactly rho for a flat boundary).
    """
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    rho = float(np.linalg.norm(xi - eta))
    if rho == 0.0:
        raise PathLeavesDomain("endpoints coincide")
    if rho >= domain.tubular_radius:
        raise TubularViolation(f"rho={rho:g} >= tubular radius")

    nu_xi, s_xi = domain.inward_normal_at(xi)
    nu_eta, s_eta = domain.inward_normal_at(eta)

    t = np.linspace(0.0, rho, n_per_piece)
    g1 = xi[None, :] + t[:, None] * nu_xi[None, :]
    g3 = eta[None, :] + t[::-1, None] * nu_eta[None, :]

    if isinstance(domain, HalfPlane):
        s_arc = np.linspace(s_xi, s_eta, n_per_piece)
        base = domain.boundary_point(s_arc)
        normals = np.tile(np.array([0.0, 1.0]), (n_per_piece, 1))
    else:
        fwd = (s_eta - s_xi) % 1.0
        if fwd <= 0.5:
            s_arc = (s_xi + np.linspace(0.0, fwd, n_per_piece)) % 1.0
        else:
            s_arc = (s_xi - np.linspace(0.0, 1.0 - fwd, n_per_piece)) % 1.0
        base = domain.curve.point(s_arc)
        normals = domain.curve.inward_normal(s_arc)
    g2 = base + rho * normals

    for g in (g1[1:], g2, g3[:-1]):
        if not np.all(np.atleast_1d(domain.contains(g))):
            raise PathLeavesDomain("path sample exits the domain")

    d1 = np.atleast_1d(domain.delta(g1[1:]))
    d1 = np.concatenate([[0.0], d1])
    d2 = np.atleast_1d(domain.delta(g2))
    d3 = np.atleast_1d(domain.delta(g3[:-1]))
    d3 = np.concatenate([d3, [0.0]])

    return ThreePiecePath(
        rho=rho,
        pieces=(g1, g2, g3),
        arclengths=(_cumlen(g1), _cumlen(g2), _cumlen(g3)),
        delta_profiles=(d1, d2, d3),
    )
