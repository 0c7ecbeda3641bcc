"""Harmonic measure estimation and the measure-profile operations.

Measures are exit frequencies of walk-on-spheres populations (or indicator
Dirichlet solves on the grid, or Poisson-kernel quadrature on the
half-plane).  Profiles reuse a single walk population across all query
radii by binning exit points, which makes empirical tails monotone by
construction.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from ..errors import QuadratureUnstable
from ..powerlaw import ExponentFit, fit_power_law, fit_through_origin
from ..rng import derive_seed
from ..geometry.domain import HalfPlane
from ..geometry.patch import GAMMA, SIGMA, BoundaryPatch
from .grid import GridSolution
from .params import MeasureEstimate, SolverParams
from .wos import run_walks

# -- boundary subset descriptors ---------------------------------------------


@dataclass(frozen=True)
class SigmaTarget:
    """The spherical cap of a patch."""

    def contains_record(self, rec, region):
        return rec.piece == SIGMA

    def contains_xy(self, xy, region):
        return _classify_position(xy, region) == SIGMA


@dataclass(frozen=True)
class GammaAll:
    """The whole domain-boundary arc of the region."""

    def contains_record(self, rec, region):
        return rec.piece == GAMMA

    def contains_xy(self, xy, region):
        return _classify_position(xy, region) == GAMMA


@dataclass(frozen=True)
class GammaBeyond:
    """Gamma minus the closed ball B(ref, radius)."""

    ref: tuple
    radius: float

    def contains_record(self, rec, region):
        d = np.linalg.norm(rec.points - np.asarray(self.ref), axis=1)
        return (rec.piece == GAMMA) & (d > self.radius)

    def contains_xy(self, xy, region):
        d = np.linalg.norm(np.atleast_2d(xy) - np.asarray(self.ref), axis=1)
        return (_classify_position(xy, region) == GAMMA) & (d > self.radius)


@dataclass(frozen=True)
class GammaWithin:
    ref: tuple
    radius: float

    def contains_record(self, rec, region):
        d = np.linalg.norm(rec.points - np.asarray(self.ref), axis=1)
        return (rec.piece == GAMMA) & (d <= self.radius)

    def contains_xy(self, xy, region):
        d = np.linalg.norm(np.atleast_2d(xy) - np.asarray(self.ref), axis=1)
        return (_classify_position(xy, region) == GAMMA) & (d <= self.radius)


@dataclass(frozen=True)
class ParamArc:
    """Boundary-parameter interval; wrap=1.0 for closed curves, None for axes."""

    lo: float
    hi: float
    wrap: float | None = 1.0

    def _inside(self, param):
        if self.wrap is None:
            return (param >= self.lo) & (param < self.hi)
        rel = (param - self.lo) % self.wrap
        width = (self.hi - self.lo) % self.wrap
        return rel < width

    def contains_record(self, rec, region):
        return (rec.piece == GAMMA) & self._inside(rec.param)

    def contains_xy(self, xy, region):
        param = _position_param(xy, region)
        return (_classify_position(xy, region) == GAMMA) & self._inside(param)


@dataclass(frozen=True)
class UnionTarget:
    parts: tuple

    def contains_record(self, rec, region):
        out = np.zeros(rec.n_walks, dtype=bool)
        for p in self.parts:
            out |= p.contains_record(rec, region)
        return out

    def contains_xy(self, xy, region):
        xy = np.atleast_2d(xy)
        out = np.zeros(xy.shape[0], dtype=bool)
        for p in self.parts:
            out |= p.contains_xy(xy, region)
        return out


def _classify_position(xy, region):
    xy = np.atleast_2d(np.asarray(xy, dtype=float))
    if isinstance(region, BoundaryPatch):
        d_dom = np.atleast_1d(region.domain.wos_distance(xy))
        d_cap = np.abs(region.r0 - np.linalg.norm(xy - region.x0, axis=1))
        return np.where(d_cap < d_dom, SIGMA, GAMMA).astype(np.uint8)
    return np.zeros(xy.shape[0], dtype=np.uint8)


def _position_param(xy, region):
    xy = np.atleast_2d(np.asarray(xy, dtype=float))
    dom = region.domain if isinstance(region, BoundaryPatch) else region
    if isinstance(dom, HalfPlane):
        return xy[:, 0]
    _, s = dom.snap_to_boundary(xy)
    return s


# -- harmonic measure ---------------------------------------------------------

def harmonic_measure(region, pole, target, params: SolverParams,
                     method="auto", label="measure") -> MeasureEstimate:
    """omega^pole(target) for the region.

    method: "wos" (exit frequency), "grid" (indicator Dirichlet solve),
    "quad" (half-plane Poisson-kernel quadrature), or "auto".
    """
    if method == "auto":
        method = "quad" if isinstance(region, HalfPlane) else "wos"
    if method == "quad":
        return _half_plane_measure_quad(region, pole, target)
    if method == "grid":
        g = lambda xy: target.contains_xy(xy, region).astype(float)
        sol = GridSolution(region, g, params.grid_h)
        val = float(sol.value(np.asarray(pole, dtype=float)))
        return MeasureEstimate(min(max(val, 0.0), 1.0), 0.0, 0)
    rec = run_walks(region, pole, params.with_(seed=derive_seed(params.seed, label)))
    return measure_from_exits(rec, region, target)


def measure_from_exits(rec, region, target) -> MeasureEstimate:
    hits = target.contains_record(rec, region)
    n = rec.n_walks
    p = float(np.mean(hits))
    se = math.sqrt(max(p * (1.0 - p), 0.0) / n)
    return MeasureEstimate(p, se, n)


def _half_plane_measure_quad(region, pole, target):
    """Numerical Poisson-kernel quadrature on the real axis."""
    x0, t = float(pole[0]), float(pole[1])

    def density(x):
        return (t / math.pi) / ((x - x0) ** 2 + t * t)

    intervals = _target_intervals(target)
    total = 0.0
    err = 0.0
    for a, b in intervals:
        v, e = integrate.quad(density, a, b, limit=200,
                              points=[x0] if a < x0 < b else None)
        total += v
        err += e
    return MeasureEstimate(min(max(total, 0.0), 1.0), max(err, 1e-12), 0)


def _target_intervals(target):
    if isinstance(target, GammaAll):
        return [(-np.inf, np.inf)]
    if isinstance(target, GammaBeyond):
        x0 = float(target.ref[0])
        return [(-np.inf, x0 - target.radius), (x0 + target.radius, np.inf)]
    if isinstance(target, GammaWithin):
        x0 = float(target.ref[0])
        return [(x0 - target.radius, x0 + target.radius)]
    if isinstance(target, ParamArc) and target.wrap is None:
        return [(target.lo, target.hi)]
    if isinstance(target, UnionTarget):
        out = []
        for p in target.parts:
            out.extend(_target_intervals(p))
        return out
    raise ValueError(f"target {target!r} has no half-plane interval form")


# -- profiles ------------------------------------------------------------------

@dataclass
class ProfileRow:
    t: float
    value: float
    std_error: float
    n_walks: int


@dataclass
class LeakProfile:
    """omega^{x0 + t nu}(Sigma) against t, with its through-origin slope."""

    rows: list
    slope: float
    power_fit: ExponentFit
    flagged: list

    def values(self):
        return np.array([r.value for r in self.rows])

    def ts(self):
        return np.array([r.t for r in self.rows])


def sigma_leak_profile(patch: BoundaryPatch, t_grid, params: SolverParams,
                       method="grid") -> LeakProfile:
    """Measure the cap leak along the inward normal and fit its slope.

    Points exceeding the through-origin fit by 5 standard errors are
    reported in ``flagged``.
    """
    t_grid = np.asarray(t_grid, dtype=float)
    cmax = patch.collar_fraction * patch.r0
    if np.any((t_grid <= 0) | (t_grid >= cmax)):
        raise QuadratureUnstable(f"t grid must lie in (0, {cmax:g})")
    target = SigmaTarget()
    rows = []
    if method == "grid":
        g = lambda xy: target.contains_xy(xy, patch).astype(float)
        sol = GridSolution(patch, g, params.grid_h)
        for t in t_grid:
            val = float(sol.value(patch.pole(t)))
            rows.append(ProfileRow(float(t), val, params.grid_h * 0.5, 0))
    else:
        for i, t in enumerate(t_grid):
            est = harmonic_measure(patch, patch.pole(t), target, params,
                                   method="wos", label=f"leak:{i}:{t:.12g}")
            rows.append(ProfileRow(float(t), est.value, est.std_error, est.n_walks))
    vals = np.array([r.value for r in rows])
    errs = np.array([r.std_error for r in rows])
    slope = fit_through_origin(t_grid, vals)
    power = fit_power_law(t_grid, vals)
    flagged = [rows[i] for i in range(len(rows))
               if vals[i] > slope * t_grid[i] + 5.0 * max(errs[i], 1e-12)]
    return LeakProfile(rows, slope, power, flagged)


@dataclass
class TailProfile:
    """F_y(s) = omega^y(Gamma minus the ball of radius s at x0)."""

    pole: np.ndarray
    delta: float
    rows: list
    fitted_tail_const: float      # sup of F(s) * s / delta over the grid

    def ss(self):
        return np.array([r.t for r in self.rows])

    def values(self):
        return np.array([r.value for r in self.rows])

    def ratios(self):
        return self.values() * self.ss() / self.delta


def gamma_tail_profile(region, pole, s_grid, params: SolverParams,
                       x0=None, method="auto", label="tail") -> TailProfile:
    """Tail decay of harmonic measure on Gamma away from x0.

    The Monte Carlo route reuses one walk population for every s, binning
    exit points by |exit - x0|, so the empirical tail is nonincreasing by
    construction.
    """
    pole = np.asarray(pole, dtype=float)
    s_grid = np.asarray(s_grid, dtype=float)
    if x0 is None:
        x0 = region.x0 if isinstance(region, BoundaryPatch) else np.zeros(2)
    x0 = np.asarray(x0, dtype=float)
    if method == "auto":
        method = "quad" if isinstance(region, HalfPlane) else "wos"
    delta = float(np.atleast_1d(region.delta(pole[None, :]))[0])
    rows = []
    if method == "quad":
        for s in s_grid:
            est = _half_plane_measure_quad(region, pole, GammaBeyond(tuple(x0), float(s)))
            rows.append(ProfileRow(float(s), est.value, est.std_error, 0))
    else:
        rec = run_walks(region, pole,
                        params.with_(seed=derive_seed(params.seed, label)))
        d = np.linalg.norm(rec.points - x0, axis=1)
        on_gamma = rec.piece == GAMMA
        n = rec.n_walks
        for s in s_grid:
            p = float(np.mean(on_gamma & (d > s)))
            se = math.sqrt(max(p * (1 - p), 0.0) / n)
            rows.append(ProfileRow(float(s), p, se, n))
    ratios = np.array([r.value for r in rows]) * s_grid / max(delta, 1e-300)
    return TailProfile(pole, delta, rows, float(np.max(ratios)))


# -- layer cake ----------------------------------------------------------------

@dataclass
class MomentResult:
    """Two routes to the mu-th moment of |exit - x0| over Gamma."""

    mu: float
    direct: float
    direct_se: float
    quadrature: float
    quadrature_se: float

    @property
    def combined_sigma(self):
        return math.sqrt(self.direct_se ** 2 + self.quadrature_se ** 2)

    def agrees(self, n_sigma=3.0):
        return abs(self.direct - self.quadrature) <= n_sigma * max(self.combined_sigma, 1e-12)


def layer_cake_moment(patch, pole, mu, params: SolverParams,
                      n_s_grid=96) -> MomentResult:
    """Moment integral of |zeta - x0|^mu d omega^pole over Gamma, two ways.

    Route (a) averages |exit - x0|^mu over one walk population; route (b)
    integrates mu * s^(mu-1) * F(s) over an independently sampled tail
    profile.  The two populations use different derived seeds, so the
    comparison is a genuine statistical cross-check of the layer-cake
    identity.
    """
    if mu <= 0:
        raise ValueError("mu must be positive")
    pole = np.asarray(pole, dtype=float)
    x0 = patch.x0
    delta = float(np.atleast_1d(patch.delta(pole[None, :]))[0])

    rec_a = run_walks(patch, pole, params.with_(seed=derive_seed(params.seed, "moment:a")))
    da = np.linalg.norm(rec_a.points - x0, axis=1)
    vals_a = np.where(rec_a.piece == GAMMA, da ** mu, 0.0)
    direct = float(np.mean(vals_a))
    direct_se = float(np.std(vals_a, ddof=1) / math.sqrt(rec_a.n_walks))

    s_max = 1.05 * patch.r0
    s_min = min(delta / 8.0, s_max / 1e3)
    s_grid = np.geomspace(s_min, s_max, n_s_grid)
    if np.sum(s_grid < delta) < 4 or s_grid[0] > delta / 4.0:
        raise QuadratureUnstable("s grid under-resolves scales below delta(pole)")

    rec_b = run_walks(patch, pole, params.with_(seed=derive_seed(params.seed, "moment:b")))
    db = np.linalg.norm(rec_b.points - x0, axis=1)
    on_gamma_b = rec_b.piece == GAMMA
    F = np.array([float(np.mean(on_gamma_b & (db > s))) for s in s_grid])
    integrand = mu * s_grid ** (mu - 1.0) * F
    quadrature = float(np.trapezoid(integrand, s_grid))
    # head [0, s_min]: the tail is flat there, contributing F(s_min) * s_min^mu
    quadrature += float(F[0] * s_grid[0] ** mu)
    vals_b = np.where(on_gamma_b, db ** mu, 0.0)
    quad_se = float(np.std(vals_b, ddof=1) / math.sqrt(rec_b.n_walks))
    return MomentResult(float(mu), direct, direct_se, quadrature, quad_se)


def layer_cake_split_bound(tail_const, mu, delta, r0):
    """Upper bound on the moment from the split at s = delta.

    For mu < 1:  delta^mu + C mu delta (delta^(mu-1) - r0^(mu-1)) / (1-mu);
    for mu > 1:  delta^mu + C mu delta (r0^(mu-1) - delta^(mu-1)) / (mu-1);
    the mu = 1 endpoint is excluded (logarithmic case).
    """
    if abs(mu - 1.0) < 1e-9:
        raise ValueError("mu = 1 is the excluded logarithmic endpoint")
    if mu < 1.0:
        tail_part = tail_const * mu * delta * (delta ** (mu - 1) - r0 ** (mu - 1)) / (1 - mu)
    else:
        tail_part = tail_const * mu * delta * (r0 ** (mu - 1) - delta ** (mu - 1)) / (mu - 1)
    return delta ** mu + tail_part
