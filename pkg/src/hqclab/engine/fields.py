"""Harmonic fields: one evaluable object per solver backend.

Every field knows its region (a domain or a boundary patch), its boundary
data, and how to produce a value with an error bar at an interior point.
The free function ``gradient_estimate`` implements the shared central
finite-difference rule at step delta/8; closed-form fields override it
with exact differentiation.
"""

import numpy as np

from ..errors import StepTooLarge
from ..rng import derive_seed
from .params import SolverParams
from .poissondisk import PoissonDiskEvaluator
from .grid import GridSolution
from .wos import mean_and_stderr, run_walks


class HarmonicField:
    """Base field; subclasses set ``backend`` and implement evaluate_many."""

    backend = "abstract"

    def __init__(self, region, boundary_data, params: SolverParams | None = None):
        self.region = region
        self.boundary_data = boundary_data
        self.params = params or SolverParams()

    def evaluate(self, x):
        vals, errs = self.evaluate_many(np.asarray(x, dtype=float)[None, :])
        return float(vals[0]), float(errs[0])

    def evaluate_many(self, pts):
        raise NotImplementedError

    def gradient(self, x, h=None):
        return gradient_estimate(self, x, h=h)

    def sup_bound(self, n=512):
        """Max |boundary data| over boundary samples (the A constant)."""
        pts = _boundary_samples(self.region, n)
        return float(np.max(np.abs(np.atleast_1d(self.boundary_data(pts)))))

    def mean_value_residual(self, x, r, n=64):
        """|circle average - center value|; zero for exact harmonicity."""
        x = np.asarray(x, dtype=float)
        ang = 2.0 * np.pi * np.arange(n) / n
        circle = x[None, :] + r * np.stack([np.cos(ang), np.sin(ang)], axis=-1)
        vals, _ = self.evaluate_many(circle)
        center, _ = self.evaluate(x)
        return abs(float(np.mean(vals)) - center)


def _boundary_samples(region, n):
    if hasattr(region, "gamma_points"):          # patch: gamma plus cap
        gpts, _ = region.gamma_points(n)
        spts = region.sigma_points(n)
        return np.concatenate([gpts, spts], axis=0) if spts.size else gpts
    if getattr(region, "curve", None) is not None:
        return region.curve.point(np.arange(n) / n)
    return region.boundary_point(np.linspace(-0.5 * region.diameter,
                                             0.5 * region.diameter, n))


class ClosedFormField(HarmonicField):
    """Wraps an analytic harmonic function with exact value and gradient."""

    backend = "closed_form"

    def __init__(self, region, formula, params=None):
        super().__init__(region, formula.value, params)
        self.formula = formula

    def evaluate_many(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        vals = np.atleast_1d(self.formula.value(pts))
        return vals, np.zeros_like(vals)

    def gradient(self, x, h=None):
        if h is not None:
            return gradient_estimate(self, x, h=h)
        g = self.formula.grad(np.asarray(x, dtype=float))
        return np.asarray(g, dtype=float), 0.0


class WalkOnSpheresField(HarmonicField):
    """Monte Carlo field: value at x is the mean of g over exit points."""

    backend = "walk_on_spheres"

    def evaluate_many(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        vals = np.empty(pts.shape[0])
        errs = np.empty(pts.shape[0])
        for i, x in enumerate(pts):
            seed = derive_seed(self.params.seed, f"eval:{i}:{x[0]:.12g}:{x[1]:.12g}")
            rec = run_walks(self.region, x, self.params.with_(seed=seed))
            gvals = np.atleast_1d(self.boundary_data(rec.points))
            vals[i], errs[i] = mean_and_stderr(gvals)
        return vals, errs

    def exits(self, x, n_walks=None, label="measure"):
        seed = derive_seed(self.params.seed, label)
        return run_walks(self.region, x, self.params.with_(seed=seed), n_walks=n_walks)


class GridBackedField(HarmonicField):
    """Field evaluated from a Shortley-Weller reference solve."""

    backend = "grid"

    def __init__(self, region, boundary_data, params=None, bbox=None):
        super().__init__(region, boundary_data, params)
        self._solution = None
        self._bbox = bbox

    @property
    def solution(self) -> GridSolution:
        if self._solution is None:
            self._solution = GridSolution(self.region, self.boundary_data,
                                          self.params.grid_h, bbox=self._bbox)
        return self._solution

    @property
    def error_scale(self):
        """Declared accuracy scale of the discrete solution, O(h)."""
        return self.params.grid_h

    def evaluate_many(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        vals = np.atleast_1d(self.solution.value(pts))
        return vals, np.zeros_like(vals)


class PoissonDiskField(HarmonicField):
    """Harmonic extension of circle data by trapezoid Poisson quadrature."""

    backend = "poisson_disk"

    def __init__(self, region, g_theta, params=None, n_nodes=2048):
        def g_xy(xy):
            xy = np.atleast_2d(np.asarray(xy, dtype=float))
            return g_theta(np.arctan2(xy[:, 1], xy[:, 0]) % (2.0 * np.pi))

        super().__init__(region, g_xy, params)
        self.evaluator = PoissonDiskEvaluator(g_theta, n_nodes=n_nodes)

    def evaluate_many(self, pts):
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        vals = np.real(self.evaluator.values_xy(pts))
        return vals, np.zeros_like(vals)


def gradient_estimate(field, x, h=None):
    """Central finite-difference gradient at step h = delta/8.

    Returns (grad, err) where err combines the backend error bars with the
    step scale.  StepTooLarge guards h >= delta/2, and the grid backend
    additionally requires delta > 2 * grid_h so the stencil stays within
    interpolable cells.
    """
    x = np.asarray(x, dtype=float)
    delta = float(np.atleast_1d(field.region.delta(x[None, :]))[0])
    if delta <= 0:
        raise StepTooLarge(f"point {x} is not interior (delta={delta:g})")
    if h is None:
        h = delta / 8.0
    if h >= delta / 2.0:
        raise StepTooLarge(f"step {h:g} >= delta/2 = {delta / 2:g}")
    if field.backend == "grid" and delta <= 2.0 * field.params.grid_h:
        raise StepTooLarge(
            f"delta {delta:g} <= 2*grid_h; grid gradient needs deeper points"
        )
    if field.backend == "walk_on_spheres":
        eps = field.params.resolve_eps(field.region.diameter)
        if delta <= 4.0 * eps:
            raise StepTooLarge(f"delta {delta:g} <= 4*eps_shell for the walk backend")
    stencil = np.array([[h, 0.0], [-h, 0.0], [0.0, h], [0.0, -h]])
    vals, errs = field.evaluate_many(x[None, :] + stencil)
    grad = np.array([(vals[0] - vals[1]) / (2 * h), (vals[2] - vals[3]) / (2 * h)])
    err = float(np.sqrt(errs[0] ** 2 + errs[1] ** 2 + errs[2] ** 2 + errs[3] ** 2) / (2 * h))
    return grad, err


def make_field(region, backend, boundary_data=None, formula=None,
               params=None, n_nodes=2048, bbox=None):
    """Factory for the four backends."""
    if backend == "closed_form":
        return ClosedFormField(region, formula, params)
    if backend == "walk_on_spheres":
        return WalkOnSpheresField(region, boundary_data, params)
    if backend == "grid":
        return GridBackedField(region, boundary_data, params, bbox=bbox)
    if backend == "poisson_disk":
        return PoissonDiskField(region, boundary_data, params, n_nodes=n_nodes)
    raise ValueError(f"unknown backend {backend!r}")
