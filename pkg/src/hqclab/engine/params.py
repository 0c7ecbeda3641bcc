"""Solver parameter and estimate containers."""

from dataclasses import dataclass, replace

from ..rng import BATCH_SIZE


@dataclass(frozen=True)
class SolverParams:
    """Knobs for the Monte Carlo and grid backends.

    eps_shell is the walk absorption distance; when None it defaults to
    1e-4 times the diameter of whichever region is being solved.
    """

    eps_shell: float | None = None
    max_steps: int = 10_000
    n_walks: int = 10_000
    seed: int = 0
    grid_h: float = 1.0 / 128.0
    threads: int = 1
    batch_size: int = BATCH_SIZE

    def __post_init__(self):
        if self.eps_shell is not None and self.eps_shell <= 0:
            raise ValueError("eps_shell must be positive")
        if self.n_walks < 1:
            raise ValueError("n_walks must be >= 1")

    def resolve_eps(self, diameter: float) -> float:
        return self.eps_shell if self.eps_shell is not None else 1e-4 * diameter

    def with_(self, **kw):
        return replace(self, **kw)


@dataclass(frozen=True)
class MeasureEstimate:
    """Harmonic-measure value with its Monte Carlo standard error."""

    value: float
    std_error: float
    n_walks: int

    def __post_init__(self):
        lo = self.value - 3.0 * self.std_error
        hi = self.value + 3.0 * self.std_error
        if not (-0.01 <= lo and hi <= 1.01):
            raise ValueError(
                f"measure {self.value:g} +- 3*{self.std_error:g} leaves [-0.01, 1.01]"
            )

    def agrees_with(self, other, n_sigma=3.0):
        sig = (self.std_error ** 2 + getattr(other, "std_error", 0.0) ** 2) ** 0.5
        val = getattr(other, "value", other)
        return abs(self.value - val) <= n_sigma * max(sig, 1e-12)
