"""Power-law fitting on log-log data.

Used everywhere a decay or growth rate has to be measured: gradient decay
profiles, tent suprema, harmonic-measure leak slopes.
"""

import math
from dataclasses import dataclass

import numpy as np

from .errors import WindowTooNarrow

MIN_DECADES = 1.5


@dataclass(frozen=True)
class ExponentFit:
    """Fitted power law y ~ constant * t**exponent.

    ``window`` is the (t_min, t_max) range the fit was taken over; a fit is
    only marked accepted when that window spans at least 1.5 decades.
    """

    exponent: float
    constant: float
    r2: float
    window: tuple[float, float]

    @property
    def decades(self) -> float:
        lo, hi = self.window
        return math.log10(hi / lo)

    @property
    def accepted(self) -> bool:
        return self.decades >= MIN_DECADES and np.isfinite(self.exponent)

    def predict(self, t):
        return self.constant * np.asarray(t, dtype=float) ** self.exponent


def fit_power_law(t, y, require_window: bool = False) -> ExponentFit:
    """Ordinary least squares on (log t, log y).

    Nonpositive y values are dropped before fitting (they carry no power-law
    information and usually come from Monte Carlo zeros).
    """
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    keep = (t > 0) & (y > 0) & np.isfinite(y)
    t, y = t[keep], y[keep]
    if t.size < 2:
        raise WindowTooNarrow(f"power-law fit needs >= 2 positive points, got {t.size}")
    window = (float(t.min()), float(t.max()))
    if require_window and math.log10(window[1] / window[0]) < MIN_DECADES:
        raise WindowTooNarrow(
            f"fit window [{window[0]:g}, {window[1]:g}] spans "
            f"{math.log10(window[1] / window[0]):.2f} decades < {MIN_DECADES}"
        )
    lx, ly = np.log(t), np.log(y)
    slope, intercept = np.polyfit(lx, ly, 1)
    pred = slope * lx + intercept
    ss_res = float(np.sum((ly - pred) ** 2))
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else max(0.0, 1.0 - ss_res / ss_tot)
    return ExponentFit(float(slope), float(math.exp(intercept)), float(r2), window)


def fit_through_origin(t, y):
    """Least-squares slope of y = C*t (no intercept)."""
    t = np.asarray(t, dtype=float)
    y = np.asarray(y, dtype=float)
    denom = float(np.dot(t, t))
    if denom == 0.0:
        raise WindowTooNarrow("through-origin fit needs nonzero abscissae")
    return float(np.dot(t, y) / denom)
