"""hqclab: a numerical laboratory for harmonic quasiconformal maps.

Builds harmonic maps and fields on C^{1,alpha} planar domains and measures
every link of the boundary-regularity chain (harmonic-measure bounds,
tent and gradient-decay rates, the exponent-improvement iteration, and the
final Lipschitz constant) against closed-form oracles, Monte Carlo walks,
and grid solves.
"""

__version__ = "0.1.0"

from . import engine, geometry, lab, maps  # noqa: F401
from .errors import HqcLabError  # noqa: F401
