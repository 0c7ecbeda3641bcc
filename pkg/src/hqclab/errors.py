"""Exception types shared across the toolkit.

Each class carries the process exit code the CLI uses when the error
escapes a subcommand, so failures are distinguishable in scripts.
"""


class HqcLabError(Exception):
    """Base class for all toolkit errors."""

    exit_code = 1


# -- geometry ---------------------------------------------------------------

class NonUniqueProjection(HqcLabError):
    """Nearest-point projection has two competing roots at equal distance."""

    exit_code = 3


class OutsideTubular(HqcLabError):
    """Point lies outside the collar where the normal coordinates are valid."""

    exit_code = 3


class DegenerateTangent(HqcLabError):
    exit_code = 3


class RadiusTooLarge(HqcLabError):
    """Requested graph-chart radius breaks injectivity of the graph window."""

    exit_code = 3


class PatchDegenerate(HqcLabError):
    exit_code = 3


class SeparationViolation(HqcLabError):
    """B(x0, 2c*r0) is not disjoint from the spherical cap of the patch."""

    exit_code = 3


class PathLeavesDomain(HqcLabError):
    exit_code = 3


class TubularViolation(HqcLabError):
    exit_code = 3


# -- solvers ----------------------------------------------------------------

class MaxStepsExceeded(HqcLabError):
    """More than 1% of walks failed to reach the absorption shell."""

    exit_code = 4


class SolverDiverged(HqcLabError):
    exit_code = 4


class GridTooCoarse(HqcLabError):
    exit_code = 4


class QuadratureUnstable(HqcLabError):
    exit_code = 4


class QuadratureUnderResolved(HqcLabError):
    exit_code = 4


class StepTooLarge(HqcLabError):
    """Finite-difference step too large for the distance to the boundary."""

    exit_code = 4


# -- maps -------------------------------------------------------------------

class NotInjective(HqcLabError):
    exit_code = 6


class JacobianNonPositive(HqcLabError):
    """Map is not sense-preserving at the reported point."""

    exit_code = 6

    def __init__(self, message, point=None):
        super().__init__(message)
        self.point = point


class TraceOutsideChart(HqcLabError):
    exit_code = 6


class ChartResidualTooLarge(HqcLabError):
    exit_code = 6


# -- regularity checks ------------------------------------------------------

class WindowTooNarrow(HqcLabError):
    exit_code = 5


class NonFiniteTrace(HqcLabError):
    exit_code = 5


class EndpointExponent(HqcLabError):
    """Improved exponent too close to 1, where the decay law degenerates."""

    exit_code = 5


class StageFailure(HqcLabError):
    """A pipeline stage missed its exponent target.

    ``stage_index`` is used by the CLI to encode which stage failed.
    """

    exit_code = 5

    def __init__(self, message, stage_index=0, stage_name=""):
        super().__init__(message)
        self.stage_index = stage_index
        self.stage_name = stage_name


# -- cli --------------------------------------------------------------------

class ConfigInvalid(HqcLabError):
    """Scenario or domain config violates the schema; message carries the path."""

    exit_code = 2


class NonPositiveData(HqcLabError):
    """Log-log plot input is empty or has nonpositive coordinates."""

    exit_code = 7
