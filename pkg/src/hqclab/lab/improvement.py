"""One-step exponent improvement and its collar/path consequences.

The improvement step composes three verified facts: the trace of the map
is beta0-Holder at xi with constant C0, the target boundary is a graph
with |phi(y1)| <= C_omega |y1|^(1+alpha), and the rotated normal component
equals phi of the tangential trace on the boundary.  Together they certify
the normal trace at exponent beta1 = (1+alpha) beta0 with constant
C1 = C_omega * C0^(1+alpha).
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import EndpointExponent
from ..geometry.patch import three_piece_path
from ..maps.distortion import differential, linear_distortion_bound
from ..maps.rotated import RotatedMap
from ..powerlaw import ExponentFit, fit_power_law
from .certificates import BasepointHolderCert
from .checks import EXPONENT_SLACK

ENDPOINT_GAP = 0.01


@dataclass
class ImprovedNormalCert:
    """Certificate for the rotated normal component after one step."""

    beta0: float
    beta1: float
    C0: float
    C1: float
    alpha: float
    C_omega: float
    distances: np.ndarray
    normal_values: np.ndarray
    violations: int
    trace_bound_ok: bool      # |F(eta)| <= C0 |eta - xi|^beta0 held on samples


def normal_trace_improvement(rotated: RotatedMap, cert_beta0, C0=None,
                             n_samples=128, tol=1e-6,
                             abs_floor=1e-12) -> ImprovedNormalCert:
    """Certify |F_n(eta)| <= C1 |eta - xi|^beta1 on boundary samples.

    ``cert_beta0`` is the trace exponent of the full map at xi (a float or
    a BasepointHolderCert carrying C0 as M).  Violations are counted at
    relative tolerance ``tol`` over the certified bound.
    """
    if isinstance(cert_beta0, BasepointHolderCert):
        beta0 = cert_beta0.mu
        C0 = cert_beta0.M if C0 is None else C0
    else:
        beta0 = float(cert_beta0)
        if C0 is None:
            raise ValueError("C0 required when cert_beta0 is a bare exponent")
    chart = rotated.chart
    alpha, C_omega = chart.alpha, chart.graph_const
    beta1 = (1.0 + alpha) * beta0
    C1 = C_omega * C0 ** (1.0 + alpha)

    window = getattr(rotated, "residual_window", 0.25)
    theta_xi = rotated.xi_theta
    eta = theta_xi + np.concatenate([
        -np.geomspace(window, window * 1e-3, n_samples // 2),
        np.geomspace(window * 1e-3, window, n_samples // 2),
    ])
    F = rotated.boundary_values(eta)
    src = np.stack([np.cos(eta), np.sin(eta)], axis=-1)
    d = np.linalg.norm(src - rotated.xi, axis=1)
    keep = d > 0
    F, d = F[keep], d[keep]

    full_dev = np.linalg.norm(F, axis=1)
    trace_ok = bool(np.all(full_dev <= C0 * d ** beta0 * (1.0 + tol) + abs_floor))
    normal_dev = np.abs(F[:, 1])
    bound = C1 * d ** beta1
    violations = int(np.count_nonzero(normal_dev > bound * (1.0 + tol) + abs_floor))
    return ImprovedNormalCert(beta0, beta1, C0, C1, alpha, C_omega,
                              d, normal_dev, violations, trace_ok)


@dataclass
class CollarGradientReport:
    """|Df| profile along the inward normal with the distortion passage."""

    ts: np.ndarray
    df_norms: np.ndarray
    normal_grad_norms: np.ndarray
    fit: ExponentFit
    beta1: float
    H: float
    passage_ok: bool          # |Df| <= H(K) |grad f_n| held at every t
    target_exponent: float
    passed: bool


def collar_gradient_bound(mapping, xi, beta1, K, t_grid, rotated=None,
                          tol=1e-7) -> CollarGradientReport:
    """Profile |Df(xi + t nu)| and certify its exponent.

    For beta1 < 1 the target rate is t^(beta1 - 1); for beta1 > 1 the
    profile must stay bounded (fitted exponent >= -0.05).  The passage
    |Df| <= H(K) |grad f_n| is checked pointwise; exponents within 0.01 of
    the endpoint beta1 = 1 are rejected.
    """
    if abs(beta1 - 1.0) < ENDPOINT_GAP:
        raise EndpointExponent(f"beta1 = {beta1:g} is within {ENDPOINT_GAP} of 1")
    if rotated is None:
        from ..maps.rotated import rotate_to_chart
        rotated = rotate_to_chart(mapping, xi)
    xi = np.asarray(xi, dtype=float)
    nu, _ = mapping.source.inward_normal_at(xi)
    t_grid = np.asarray(t_grid, dtype=float)
    H = linear_distortion_bound(K, 2)

    df_norms = np.empty(t_grid.size)
    fn_norms = np.empty(t_grid.size)
    passage = True
    for i, t in enumerate(t_grid):
        x = xi + t * nu
        s = differential(mapping, x)
        R = rotated.chart.rotation
        fn_grad = (R @ s.Df)[1]
        df_norms[i] = s.sigma_max
        fn_norms[i] = float(np.linalg.norm(fn_grad))
        if s.sigma_max > H * fn_norms[i] * (1.0 + tol) + 1e-300:
            passage = False
    fit = fit_power_law(t_grid, df_norms)
    target = beta1 - 1.0 if beta1 < 1.0 else 0.0
    floor = (beta1 - 1.0) - EXPONENT_SLACK if beta1 < 1.0 else -EXPONENT_SLACK
    return CollarGradientReport(t_grid, df_norms, fn_norms, fit, beta1, H,
                                passage, target, bool(fit.exponent >= floor))


# -- path integration ----------------------------------------------------------

def _powerlaw_segment_integral(s, v):
    """Integral of a positive sampled function assuming local power laws.

    On each cell the integrand is modeled as v_k (s/s_k)^p with p from the
    endpoint ratio, integrated exactly; exact for pure power-law data and
    second-order accurate otherwise.  The head [0, s_0] extrapolates the
    first cell's exponent (requires p > -1, true for integrable profiles).
    """
    s = np.asarray(s, dtype=float)
    v = np.asarray(v, dtype=float)
    total = 0.0
    head_p = 0.0
    for k in range(s.size - 1):
        s0, s1, v0, v1 = s[k], s[k + 1], v[k], v[k + 1]
        if v0 <= 0 or v1 <= 0:
            total += 0.5 * (v0 + v1) * (s1 - s0)
            continue
        p = math.log(v1 / v0) / math.log(s1 / s0)
        if k == 0:
            head_p = p
        if abs(p + 1.0) < 1e-9:
            total += v0 * s0 * math.log(s1 / s0)
        else:
            total += v0 * s0 * ((s1 / s0) ** (p + 1.0) - 1.0) / (p + 1.0)
    if v[0] > 0 and head_p > -1.0:
        total += v[0] * s[0] / (1.0 + head_p)
    return total


@dataclass
class PathUpgradeReport:
    """Certified trace bound from integrating |Df| along the 3-piece path."""

    rho: float
    beta1: float
    piece_integrals: tuple
    total: float
    c_prime: float            # total / rho^beta1, the certified constant
    piece_constants: tuple    # per-piece integral / rho^beta1
    direct: float | None      # |f(xi) - f(eta)| when a map is given
    consistent: bool          # direct <= total (up to tolerance)


def path_holder_upgrade(domain, xi, eta, beta1, mapping=None, grad_norm=None,
                        n_arc=64, n_normal=48, s_floor_frac=1e-4,
                        tol=1e-6) -> PathUpgradeReport:
    """Integrate the measured |Df| along the three-piece path.

    Exactly one of ``mapping`` (|Df| from differentials) or ``grad_norm``
    (a callable on (n, 2) points, for synthetic profiles) must be given.
    The normal legs use geometric grids with power-law cell quadrature, so
    integrable endpoint singularities t^(beta1 - 1) are handled exactly.
    """
    if (mapping is None) == (grad_norm is None):
        raise ValueError("pass exactly one of mapping or grad_norm")
    xi = np.asarray(xi, dtype=float)
    eta = np.asarray(eta, dtype=float)
    path = three_piece_path(domain, xi, eta, n_per_piece=n_arc)
    rho = path.rho

    if grad_norm is None:
        def grad_norm(points):
            out = np.empty(points.shape[0])
            for i, x in enumerate(points):
                out[i] = differential(mapping, x).sigma_max
            return out

    nu_xi, _ = domain.inward_normal_at(xi)
    nu_eta, _ = domain.inward_normal_at(eta)
    svals = np.geomspace(s_floor_frac * rho, rho, n_normal)

    v1 = grad_norm(xi[None, :] + svals[:, None] * nu_xi[None, :])
    int1 = _powerlaw_segment_integral(svals, v1)
    v3 = grad_norm(eta[None, :] + svals[:, None] * nu_eta[None, :])
    int3 = _powerlaw_segment_integral(svals, v3)

    g2 = path.pieces[1]
    arc2 = path.arclengths[1]
    v2 = grad_norm(g2)
    int2 = float(np.trapezoid(v2, arc2))

    total = int1 + int2 + int3
    scale = rho ** beta1
    direct = None
    consistent = True
    if mapping is not None:
        th = np.arctan2([xi[1], eta[1]], [xi[0], eta[0]])
        fvals = mapping.boundary_values(th)
        direct = float(np.linalg.norm(fvals[0] - fvals[1]))
        consistent = direct <= total * (1.0 + 1e-3) + tol
    return PathUpgradeReport(
        rho, beta1, (int1, int2, int3), total, total / scale,
        tuple(v / scale for v in (int1, int2, int3)), direct, consistent,
    )
