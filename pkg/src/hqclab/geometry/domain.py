"""Planar domains bounded by a closed curve, plus the model half-plane.

The domain object owns the tubular-neighborhood machinery: nearest-point
projection pi(x), distance delta(x), inward normal, and the collar radius
inside which x = pi(x) + delta(x) * nu(pi(x)) is a valid coordinate system.

Two distance routines coexist on purpose.  ``nearest_point`` runs a
safeguarded Newton iteration on (x - p(s)) . p'(s) and is the accurate
route used by geometry operations.  ``wos_distance`` is a vectorized
lower bound (KD-tree against a dense polyline, minus a chord margin)
cheap enough for the Monte Carlo inner loop.
"""

import math

import numpy as np
from scipy.spatial import cKDTree

from ..errors import DegenerateTangent, NonUniqueProjection, OutsideTubular
from ..rng import batch_generator
from .curve import BoundaryCurve

_COARSE_SEEDS = 256


class PlanarDomain:
    """Bounded domain enclosed by a counterclockwise BoundaryCurve."""

    def __init__(self, curve: BoundaryCurve, tubular_radius=None, dense_n=16384):
        self.curve = curve
        self._dense_n = int(dense_n)
        s = np.arange(self._dense_n) / self._dense_n
        self._dense_s = s
        self._dense_xy = curve.point(s)
        self._tree = cKDTree(self._dense_xy)
        # polyline vertices lie on the curve, so the vertex distance
        # overestimates the curve distance by at most half the largest chord
        chords = np.linalg.norm(np.roll(self._dense_xy, -1, axis=0) - self._dense_xy, axis=1)
        self._chord_margin = 0.5 * float(chords.max())
        lo = self._dense_xy.min(axis=0)
        hi = self._dense_xy.max(axis=0)
        self.bbox = (float(lo[0]), float(lo[1]), float(hi[0]), float(hi[1]))
        self.diameter = float(np.linalg.norm(hi - lo))
        self._radial = getattr(curve, "radial_profile", None)
        self._tubular_radius = tubular_radius
        self.unbounded = False

    # -- membership and fast distances -----------------------------------

    def contains(self, xy):
        """Interior predicate, vectorized over (n, 2) arrays."""
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        circ = getattr(self.curve, "circle_data", None)
        if circ is not None:
            center, radius = circ
            out = np.linalg.norm(xy - center, axis=1) < radius
        elif self._radial is not None:
            r_of_theta = self._radial[0]
            rad = np.linalg.norm(xy, axis=1)
            theta = np.arctan2(xy[:, 1], xy[:, 0])
            out = rad < r_of_theta(theta)
        else:
            out = self._polygon_contains(xy)
        return out if out.size > 1 else bool(out[0])

    def _polygon_contains(self, xy, chunk=2048, stride=8):
        # even-odd rule against a decimated polyline, chunked for memory
        poly = self._dense_xy[::stride]
        px = poly[:, 0]
        py = poly[:, 1]
        qx = np.roll(px, -1)
        qy = np.roll(py, -1)
        with np.errstate(divide="ignore", invalid="ignore"):
            slope = np.where(qy == py, np.inf, (qx - px) / (qy - py))
        out = np.empty(xy.shape[0], dtype=bool)
        for k in range(0, xy.shape[0], chunk):
            x = xy[k:k + chunk, 0][:, None]
            y = xy[k:k + chunk, 1][:, None]
            crosses = ((py > y) != (qy > y)) & (x < px + (y - py) * slope)
            out[k:k + chunk] = np.sum(crosses, axis=1) % 2 == 1
        return out

    def wos_distance(self, xy):
        """Lower bound on dist(x, boundary), vectorized; safe jump radius."""
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        circ = getattr(self.curve, "circle_data", None)
        if circ is not None:
            center, radius = circ
            return np.maximum(radius - np.linalg.norm(xy - center, axis=1), 0.0)
        d, _ = self._tree.query(xy, k=1)
        return np.maximum(d - self._chord_margin, 0.0)

    def snap_to_boundary(self, xy):
        """Nearest boundary point, used to absorb Monte Carlo walks."""
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        circ = getattr(self.curve, "circle_data", None)
        if circ is not None:
            center, radius = circ
            rel = xy - center
            rad = np.linalg.norm(rel, axis=1)
            safe = np.where(rad == 0.0, 1.0, rad)
            pts = center + radius * rel / safe[:, None]
            s = (np.arctan2(rel[:, 1], rel[:, 0]) / (2.0 * np.pi)) % 1.0
            return pts, s
        _, idx = self._tree.query(xy, k=1)
        return self._dense_xy[idx], self._dense_s[idx]

    def wos_absorb(self, xy):
        exit_xy, s = self.snap_to_boundary(xy)
        piece = np.zeros(exit_xy.shape[0], dtype=np.uint8)
        return exit_xy, piece, s

    # -- accurate projection ----------------------------------------------

    def _ortho_residual(self, xy, s):
        p = self.curve.point(s)
        dp = self.curve.derivative(s)
        return np.sum((xy - p) * dp, axis=1)

    def _refine(self, xy, seeds, half_width=1.5 / _COARSE_SEEDS):
        """Bracketed Newton/bisection on the orthogonality residual.

        Distance-squared has derivative -2 F(s), so F changes sign from
        positive to negative across each local minimizer; the bracket around
        every seed is kept valid by bisection when Newton misbehaves.
        """
        s = seeds.astype(float).copy()
        lo = s - half_width
        hi = s + half_width
        h = 1e-7
        f = self._ortho_residual(xy, s)
        scale = max(1.0, self.diameter)
        for _ in range(90):
            pos = f > 0
            lo = np.where(pos, s, lo)
            hi = np.where(pos, hi, s)
            fp = (self._ortho_residual(xy, s + h) - self._ortho_residual(xy, s - h)) / (2 * h)
            with np.errstate(divide="ignore", invalid="ignore"):
                newton = s - f / fp
            mid = 0.5 * (lo + hi)
            ok = np.isfinite(newton) & (newton > lo) & (newton < hi)
            s_next = np.where(ok, newton, mid)
            moved = np.max(np.abs(s_next - s))
            s = s_next
            f = self._ortho_residual(xy, s)
            if moved < 1e-15 and np.max(np.abs(f)) < 1e-11 * scale:
                break
        p = self.curve.point(s)
        dist = np.linalg.norm(xy - p, axis=1)
        return s % 1.0, dist

    def project_many(self, xy):
        """Vectorized nearest-point projection; returns (s, distance)."""
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        sg = np.arange(_COARSE_SEEDS) / _COARSE_SEEDS
        pg = self.curve.point(sg)
        d2 = np.sum((xy[:, None, :] - pg[None, :, :]) ** 2, axis=-1)
        i0 = np.argmin(d2, axis=1)     # ties resolve to the smallest parameter
        return self._refine(xy, sg[i0])

    def delta(self, xy):
        """Accurate distance to the boundary."""
        single = np.asarray(xy).ndim == 1
        _, dist = self.project_many(xy)
        return float(dist[0]) if single else dist

    def nearest_point(self, x, check_unique=True):
        """Nearest boundary point for a single collar point.

        Returns (pi(x), delta(x), s).  Raises NonUniqueProjection when a
        second separated root achieves the same distance, OutsideTubular
        when delta exceeds the collar radius.
        """
        x = np.asarray(x, dtype=float)
        xy = x[None, :]
        s, dist = self.project_many(xy)
        s0, d0 = float(s[0]), float(dist[0])
        if check_unique:
            sg = np.arange(_COARSE_SEEDS) / _COARSE_SEEDS
            d2 = np.sum((x - self.curve.point(sg)) ** 2, axis=-1)
            local_min = (d2 <= np.roll(d2, 1)) & (d2 <= np.roll(d2, -1))
            local_min &= np.sqrt(d2) <= d0 * 1.25 + 1e-12
            cands = sg[local_min]
            if cands.size > 1:
                sc, dc = self._refine(np.repeat(xy, cands.size, axis=0), cands)
                pts = self.curve.point(sc)
                best = self.curve.point(s0)
                for j in range(cands.size):
                    sep = np.linalg.norm(pts[j] - best)
                    if sep > 1e-6 * self.diameter and abs(float(dc[j]) - d0) < 1e-9 * self.diameter:
                        raise NonUniqueProjection(
                            f"projection of {x} hits two boundary points at distance {d0:g}"
                        )
        if d0 >= self.tubular_radius:
            raise OutsideTubular(f"delta={d0:g} >= tubular radius {self.tubular_radius:g}")
        return self.curve.point(s0), d0, s0

    def inward_normal_at(self, xi, tol=1e-8):
        """Inward unit normal at a point on (or extremely near) the boundary."""
        xi = np.asarray(xi, dtype=float)
        s, dist = self.project_many(xi[None, :])
        if float(dist[0]) > 1e-5 * self.diameter:
            raise OutsideTubular(f"{xi} is not on the boundary (offset {dist[0]:g})")
        speed = np.linalg.norm(self.curve.derivative(float(s[0])))
        if speed < tol:
            raise DegenerateTangent(f"tangent degenerate at s={s[0]:g}")
        return self.curve.inward_normal(float(s[0])), float(s[0])

    # -- tubular radius ----------------------------------------------------

    @property
    def tubular_radius(self):
        if self._tubular_radius is None:
            self._tubular_radius = self.estimate_tubular_radius()
        return self._tubular_radius

    def estimate_tubular_radius(self, n_probe=1000, seed=7):
        """Largest collar depth passing a sampled uniqueness test, halved.

        Binary search on r: offset ``n_probe`` random boundary points inward
        by random depths t < r; uniqueness of the projection shows up as
        delta(x) == t to tolerance.
        """
        gen = batch_generator(seed, 0)
        svals = gen.random(n_probe)
        t_frac = gen.random(n_probe)
        base = self.curve.point(svals)
        nu = self.curve.inward_normal(svals)
        tol = 1e-6 * max(1.0, self.diameter)

        def all_pass(r):
            t = t_frac * r
            x = base + t[:, None] * nu
            if not np.all(self.contains(x)):
                return False
            d = self.delta(x)
            return bool(np.all(np.abs(d - t) <= tol))

        lo, hi = 0.0, 0.5 * self.diameter
        for _ in range(25):
            mid = 0.5 * (lo + hi)
            if all_pass(mid):
                lo = mid
            else:
                hi = mid
        self.measured_uniqueness_radius = lo if lo > 0 else 0.5 * self._chord_margin
        return 0.5 * self.measured_uniqueness_radius


class HalfPlane:
    """Upper half-plane {y > 0}; used through closed forms and patches only.

    The boundary parameter is the x coordinate itself and the inward normal
    is e2 everywhere, so all projection operations are exact.
    """

    def __init__(self, nominal_extent=2.0):
        self.diameter = 2.0 * nominal_extent   # scale for shells and steps
        self.unbounded = True
        self.tubular_radius = math.inf
        self.curve = None

    def contains(self, xy):
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        out = xy[:, 1] > 0
        return out if out.size > 1 else bool(out[0])

    def delta(self, xy):
        single = np.asarray(xy).ndim == 1
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        out = xy[:, 1].copy()
        return float(out[0]) if single else out

    def wos_distance(self, xy):
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        return np.maximum(xy[:, 1], 0.0)

    def nearest_point(self, x, check_unique=True):
        x = np.asarray(x, dtype=float)
        return np.array([x[0], 0.0]), float(x[1]), float(x[0])

    def project_many(self, xy):
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        return xy[:, 0].copy(), xy[:, 1].copy()

    def inward_normal_at(self, xi, tol=1e-8):
        xi = np.asarray(xi, dtype=float)
        if abs(xi[1]) > 1e-9:
            raise OutsideTubular(f"{xi} is not on the real axis")
        return np.array([0.0, 1.0]), float(xi[0])

    def boundary_point(self, s):
        s = np.asarray(s, dtype=float)
        return np.stack([s, np.zeros_like(s)], axis=-1)

    def wos_absorb(self, xy):
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        exit_xy = np.stack([xy[:, 0], np.zeros(xy.shape[0])], axis=-1)
        piece = np.zeros(xy.shape[0], dtype=np.uint8)
        return exit_xy, piece, xy[:, 0].copy()


# -- module-level operation names -------------------------------------------

def nearest_point(domain, x):
    """Projection pi(x) and distance delta(x) for a collar point."""
    pi, d, _ = domain.nearest_point(x)
    return pi, d


def inward_normal(domain, xi):
    """Inward unit normal at boundary point xi."""
    nu, _ = domain.inward_normal_at(xi)
    return nu


def unit_disk(**kwargs):
    from .curve import circle
    return PlanarDomain(circle(1.0), **kwargs)
