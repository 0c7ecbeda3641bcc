"""Quasiconformal distortion algebra for planar map differentials.

Singular values of 2x2 matrices come from the closed form via the
rotation-split invariants: for A = [[a, b], [c, d]], with
E=(a+d)/2, F=(a-d)/2, G=(c+b)/2, H=(c-b)/2,
sigma_max = hypot(E,H) + hypot(F,G) and sigma_min = |hypot(E,H) - hypot(F,G)|,
and det A = sigma_max * sigma_min * sign.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..errors import JacobianNonPositive

JACOBIAN_FLOOR = 1e-10


def svd2x2(A):
    """(sigma_max, sigma_min) for one 2x2 matrix or a stack (..., 2, 2)."""
    A = np.asarray(A, dtype=float)
    a, b = A[..., 0, 0], A[..., 0, 1]
    c, d = A[..., 1, 0], A[..., 1, 1]
    E = 0.5 * (a + d)
    F = 0.5 * (a - d)
    G = 0.5 * (c + b)
    H = 0.5 * (c - b)
    Q = np.hypot(E, H)
    R = np.hypot(F, G)
    return Q + R, np.abs(Q - R)


@dataclass(frozen=True)
class DifferentialSample:
    """Differential of a planar map at a point, with distortion statistics.

    distortion is |Df|^n / J_f (n = 2), which is >= 1 whenever J_f > 0.
    """

    x: np.ndarray
    Df: np.ndarray
    sigma_max: float
    sigma_min: float
    jacobian: float
    distortion: float
    grad_error: float = 0.0

    @property
    def sense_preserving(self):
        return self.jacobian > 0


def sample_from_matrix(x, Df, grad_error=0.0) -> DifferentialSample:
    Df = np.asarray(Df, dtype=float)
    smax, smin = svd2x2(Df)
    J = float(Df[0, 0] * Df[1, 1] - Df[0, 1] * Df[1, 0])
    k = float(smax ** 2 / J) if J > 0 else math.inf
    return DifferentialSample(np.asarray(x, dtype=float), Df, float(smax),
                              float(smin), J, k, grad_error)


def differential(mapping, x, h=None) -> DifferentialSample:
    """Differential sample assembled from component gradient estimates."""
    Df, err = mapping.differential_matrix(np.asarray(x, dtype=float), h=h)
    return sample_from_matrix(x, Df, err)


def qc_constant(mapping, points, h=None):
    """K-hat: sup of |Df|^2 / J_f over the sample points.

    Raises JacobianNonPositive (with the offending point) if the map fails
    the sense-preservation screen J_f > 1e-10 anywhere.
    """
    worst = 1.0
    for x in np.atleast_2d(np.asarray(points, dtype=float)):
        s = differential(mapping, x, h=h)
        if s.jacobian <= JACOBIAN_FLOOR:
            raise JacobianNonPositive(
                f"J_f = {s.jacobian:g} <= {JACOBIAN_FLOOR:g} at {x}", point=x
            )
        worst = max(worst, s.distortion)
    return worst


def linear_distortion_bound(K, n=2):
    """H(K) = K^(1/(n-1)), the singular-value ratio bound.

    Justified by chaining |Df|^n <= K J_f <= K |Df| l(Df)^(n-1), which gives
    |Df| <= K^(1/(n-1)) l(Df); validated by the randomized matrix checks.
    """
    if K < 1:
        raise ValueError("K must be >= 1")
    if n < 2:
        raise ValueError("n must be >= 2")
    return float(K) ** (1.0 / (n - 1))


@dataclass(frozen=True)
class DistortionReport:
    """Outcome of the singular-value chain checks at one sample."""

    qc_holds: bool            # |Df|^2 <= K * J_f (within tolerance)
    ratio_ok: bool            # sigma_max <= H(K) * sigma_min
    ratio_slack: float        # H(K) * sigma_min - sigma_max
    row_ok: bool              # sigma_min <= |row i| for every row
    row_slacks: tuple

    @property
    def passed(self):
        return (not self.qc_holds) or (self.ratio_ok and self.row_ok)


def distortion_check(sample: DifferentialSample, K, tol=1e-9) -> DistortionReport:
    """Check sigma_max <= H(K) sigma_min and the row lower bounds.

    The chain is only asserted when the quasiconformality inequality
    |Df|^2 <= K J_f actually holds at the sample; the report carries each
    inequality's slack either way.
    """
    H = linear_distortion_bound(K, 2)
    scale = max(sample.sigma_max, 1.0)
    qc_holds = sample.sigma_max ** 2 <= K * sample.jacobian + tol * scale ** 2
    ratio_slack = H * sample.sigma_min - sample.sigma_max
    ratio_ok = ratio_slack >= -tol * scale
    rows = np.linalg.norm(sample.Df, axis=1)
    row_slacks = tuple(float(r - sample.sigma_min) for r in rows)
    row_ok = all(sl >= -tol * scale for sl in row_slacks)
    return DistortionReport(bool(qc_holds), bool(ratio_ok), float(ratio_slack),
                            bool(row_ok), row_slacks)
