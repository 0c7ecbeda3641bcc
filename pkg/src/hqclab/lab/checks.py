"""Interior checks driven by a basepoint certificate.

Each check samples along the inward normal ray through x0 and compares
the measured profile against the rate the certificate's exponent implies:
tent suprema grow like t^mu, gradients decay like t^(mu-1) for mu < 1 and
stay bounded for mu > 1.
"""

from dataclasses import dataclass

import numpy as np

from ..powerlaw import ExponentFit, fit_power_law
from ..rng import batch_generator
from .certificates import BasepointHolderCert

EXPONENT_SLACK = 0.05


@dataclass
class TentReport:
    ts: np.ndarray
    sups: np.ndarray
    fit: ExponentFit
    c_hat: float              # max sup / (t^mu * (M + A/r0^mu))
    ratio_max: float          # max sup / t^mu, the raw window constant
    mu: float
    passed: bool


def _ray_points(cert: BasepointHolderCert, t_grid):
    t_grid = np.asarray(t_grid, dtype=float)
    cmax = cert.patch.collar_fraction * cert.patch.r0
    if np.any((t_grid <= 0) | (t_grid >= cmax)):
        raise ValueError(f"t grid must lie in (0, c*r0) = (0, {cmax:g})")
    return t_grid, np.array([cert.patch.pole(t) for t in t_grid])


def tent_check(cert: BasepointHolderCert, field, t_grid, n_circle=48,
               n_interior=16, seed=11) -> TentReport:
    """Supremum of |u - u(x0)| over D cap B(x0 + t nu, t/2) against t^mu.

    The sup is taken over circle samples of the tent ball (where the max
    of a harmonic function lives) plus seeded interior samples, all
    filtered to the domain.
    """
    t_grid, poles = _ray_points(cert, t_grid)
    u0 = float(np.atleast_1d(field.boundary_data(cert.x0[None, :]))[0])
    gen = batch_generator(seed, 0)
    ang = 2.0 * np.pi * np.arange(n_circle) / n_circle
    unit_circle = np.stack([np.cos(ang), np.sin(ang)], axis=-1)
    rad = np.sqrt(gen.random(n_interior))
    ang_i = 2.0 * np.pi * gen.random(n_interior)
    unit_inner = rad[:, None] * np.stack([np.cos(ang_i), np.sin(ang_i)], axis=-1)

    sups = np.empty(t_grid.size)
    for i, (t, x) in enumerate(zip(t_grid, poles)):
        ball = np.concatenate([x + 0.5 * t * unit_circle,
                               x + 0.5 * t * unit_inner], axis=0)
        inside = np.atleast_1d(cert.patch.domain.contains(ball))
        pts = ball[inside]
        if pts.shape[0] < 32:
            raise ValueError(f"only {pts.shape[0]} tent samples inside at t={t:g}")
        vals, _ = field.evaluate_many(pts)
        sups[i] = float(np.max(np.abs(vals - u0)))

    fit = fit_power_law(t_grid, sups)
    pref = cert.prefactor()
    ratio = sups / t_grid ** cert.mu
    return TentReport(t_grid, sups, fit, float(np.max(ratio) / pref),
                      float(np.max(ratio)), cert.mu,
                      bool(fit.exponent >= cert.mu - EXPONENT_SLACK))


@dataclass
class GradientDecayReport:
    ts: np.ndarray
    grad_norms: np.ndarray
    fit: ExponentFit
    c_hat: float              # max |grad u| t^(1-mu) / prefactor
    mu: float
    passed: bool
    outside_scope: bool = False   # flagged when mu is not in (0, 1)


def gradient_decay_check(cert: BasepointHolderCert, field, t_grid) -> GradientDecayReport:
    """Profile |grad u(x0 + t nu)| against the decay rate t^(mu-1)."""
    t_grid, poles = _ray_points(cert, t_grid)
    norms = np.empty(t_grid.size)
    for i, x in enumerate(poles):
        g, _ = field.gradient(x)
        norms[i] = float(np.linalg.norm(g))
    fit = fit_power_law(t_grid, norms)
    pref = cert.prefactor()
    c_hat = float(np.max(norms * t_grid ** (1.0 - cert.mu)) / pref)
    outside = not (0.0 < cert.mu < 1.0)
    passed = bool(fit.exponent >= (cert.mu - 1.0) - EXPONENT_SLACK)
    return GradientDecayReport(t_grid, norms, fit, c_hat, cert.mu, passed, outside)


@dataclass
class UniformGradientReport:
    ts: np.ndarray
    grad_norms: np.ndarray
    fit: ExponentFit
    max_grad: float
    c_hat: float              # max |grad u| / (M r0^(mu-1) + A/r0)
    mu: float
    passed: bool


def uniform_gradient_check(cert: BasepointHolderCert, field, t_grid) -> UniformGradientReport:
    """For mu > 1: the gradient stays bounded along the ray (no blow-up)."""
    if cert.mu <= 1.0:
        raise ValueError(f"uniform bound needs mu > 1, got {cert.mu:g}")
    t_grid, poles = _ray_points(cert, t_grid)
    norms = np.empty(t_grid.size)
    for i, x in enumerate(poles):
        g, _ = field.gradient(x)
        norms[i] = float(np.linalg.norm(g))
    fit = fit_power_law(t_grid, norms) if np.all(norms > 0) else \
        ExponentFit(0.0, 0.0, 1.0, (float(t_grid.min()), float(t_grid.max())))
    ref = cert.uniform_prefactor()
    return UniformGradientReport(
        t_grid, norms, fit, float(np.max(norms)),
        float(np.max(norms) / ref) if ref > 0 else 0.0,
        cert.mu, bool(fit.exponent >= -EXPONENT_SLACK),
    )
