"""Walk-on-spheres sampling of Brownian exit points.

Each walk jumps from its current point to a uniform point on the largest
safe circle around it, and is absorbed once it comes within eps_shell of
the region boundary, where it snaps to the nearest boundary point.  The
exit distribution realizes harmonic measure up to O(eps_shell) bias.

Determinism contract: walks are partitioned into fixed-size batches, batch
k draws from a Philox stream keyed by (seed, k), and per-iteration angle
draws cover the whole batch whether or not a walk is still active.  The
assembled exit set is therefore bit-identical for any worker count.
"""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from ..errors import MaxStepsExceeded
from ..rng import batch_generator, batch_sizes
from .params import SolverParams

CAPPED_FRACTION_LIMIT = 0.01


@dataclass
class ExitRecord:
    """Exit data for a population of walks started at one pole."""

    points: np.ndarray      # (n, 2) exit locations on the boundary
    piece: np.ndarray       # (n,) 0 = domain boundary arc, 1 = cap
    param: np.ndarray       # boundary parameter (arc s or cap angle)
    capped: np.ndarray      # (n,) walks that hit the step limit
    steps_total: int

    @property
    def n_walks(self):
        return self.points.shape[0]

    @property
    def capped_fraction(self):
        return float(np.mean(self.capped)) if self.n_walks else 0.0


def _run_batch(region, start, m, eps, max_steps, gen, batch_size):
    pos = np.tile(np.asarray(start, dtype=float), (m, 1))
    active = np.ones(m, dtype=bool)
    steps = 0
    for _ in range(max_steps):
        if not np.any(active):
            break
        # fixed-size draw keeps the stream layout independent of progress
        theta = gen.random(batch_size)[:m] * (2.0 * np.pi)
        d = region.wos_distance(pos[active])
        just_done = d < eps
        idx = np.nonzero(active)[0]
        done_idx = idx[just_done]
        active[done_idx] = False
        move_idx = idx[~just_done]
        if move_idx.size:
            r = d[~just_done]
            pos[move_idx, 0] += r * np.cos(theta[move_idx])
            pos[move_idx, 1] += r * np.sin(theta[move_idx])
        steps += 1
    capped = active.copy()
    exit_xy, piece, param = region.wos_absorb(pos)
    return ExitRecord(exit_xy, piece, np.asarray(param, dtype=float), capped, steps)


def run_walks(region, pole, params: SolverParams, n_walks=None,
              raise_on_capped=True) -> ExitRecord:
    """Sample exit points of n_walks Brownian walks from ``pole``.

    The region must provide wos_distance(points) (a safe lower bound on the
    boundary distance) and wos_absorb(points) (snap + classify).
    """
    n = params.n_walks if n_walks is None else int(n_walks)
    eps = params.resolve_eps(region.diameter)
    sizes = batch_sizes(n, params.batch_size)

    def work(k):
        gen = batch_generator(params.seed, k)
        return _run_batch(region, pole, sizes[k], eps, params.max_steps,
                          gen, params.batch_size)

    if params.threads > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=params.threads) as ex:
            records = list(ex.map(work, range(len(sizes))))
    else:
        records = [work(k) for k in range(len(sizes))]

    rec = ExitRecord(
        points=np.concatenate([r.points for r in records], axis=0),
        piece=np.concatenate([r.piece for r in records]),
        param=np.concatenate([r.param for r in records]),
        capped=np.concatenate([r.capped for r in records]),
        steps_total=sum(r.steps_total for r in records),
    )
    if raise_on_capped and rec.capped_fraction > CAPPED_FRACTION_LIMIT:
        raise MaxStepsExceeded(
            f"{rec.capped_fraction:.2%} of walks exceeded {params.max_steps} steps"
        )
    return rec


def mean_and_stderr(values):
    """Sample mean and standard error, deterministic for a fixed array."""
    values = np.asarray(values, dtype=float)
    n = values.size
    mean = float(np.mean(values))
    if n < 2:
        return mean, 0.0
    var = float(np.sum((values - mean) ** 2)) / (n - 1)
    return mean, (var / n) ** 0.5
