"""Finite-difference reference solver for the Dirichlet problem.

5-point Laplacian on a uniform grid over the region bounding box, with
boundary-cut edges handled by Shortley-Weller interpolation: when a grid
neighbor falls outside, the stencil leg is shortened to the boundary
crossing (located by bisection on the interior predicate) and the Dirichlet
value there moves to the right-hand side.  The sparse system is solved
directly.
"""

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from ..errors import GridTooCoarse, SolverDiverged

_THETA_MIN = 1e-8


def _region_bbox(region):
    if hasattr(region, "x0"):        # boundary patch
        x0, r0 = region.x0, region.r0
        return (x0[0] - r0, x0[1] - r0, x0[0] + r0, x0[1] + r0)
    return region.bbox


class GridSolution:
    """Discrete harmonic function on region interior grid nodes."""

    def __init__(self, region, boundary_value, h, bbox=None, pad=1e-9):
        self.region = region
        self.g = boundary_value
        self.h = float(h)
        x0, y0, x1, y1 = bbox if bbox is not None else _region_bbox(region)
        # snap the lattice so the bbox corners are nodes
        self.nx = int(round((x1 - x0) / self.h)) + 1
        self.ny = int(round((y1 - y0) / self.h)) + 1
        if self.nx < 5 or self.ny < 5:
            raise GridTooCoarse(f"grid {self.nx}x{self.ny} too small")
        self.x0, self.y0 = x0, y0
        self.xs = x0 + self.h * np.arange(self.nx)
        self.ys = y0 + self.h * np.arange(self.ny)
        self._solve()

    # -- assembly ---------------------------------------------------------

    def _node_xy(self, i, j):
        return np.stack([self.xs[i], self.ys[j]], axis=-1)

    def _crossing_fraction(self, xy_in, direction):
        """theta in (0, 1]: fraction of h from inside node to the boundary."""
        n = xy_in.shape[0]
        lo = np.zeros(n)
        hi = np.ones(n)
        for _ in range(45):
            mid = 0.5 * (lo + hi)
            pts = xy_in + mid[:, None] * (direction * self.h)
            inside = np.atleast_1d(self.region.contains(pts))
            lo = np.where(inside, mid, lo)
            hi = np.where(inside, hi, mid)
        return np.maximum(0.5 * (lo + hi), _THETA_MIN)

    def _solve(self):
        II, JJ = np.meshgrid(np.arange(self.nx), np.arange(self.ny), indexing="ij")
        nodes = np.stack([self.xs[II.ravel()], self.ys[JJ.ravel()]], axis=-1)
        inside = np.atleast_1d(self.region.contains(nodes)).reshape(self.nx, self.ny)
        self.inside = inside
        index = -np.ones((self.nx, self.ny), dtype=np.int64)
        ii, jj = np.nonzero(inside)
        n_unk = ii.size
        if n_unk == 0:
            raise GridTooCoarse("no interior nodes")
        index[ii, jj] = np.arange(n_unk)
        self._index = index

        h2 = self.h * self.h
        dirs = [(1, 0), (-1, 0), (0, 1), (0, -1)]
        theta = np.ones((4, n_unk))
        nbr_idx = np.full((4, n_unk), -1, dtype=np.int64)
        rhs = np.zeros(n_unk)
        xy_in = self._node_xy(ii, jj)

        for d, (di, dj) in enumerate(dirs):
            ni, nj = ii + di, jj + dj
            ok = (ni >= 0) & (ni < self.nx) & (nj >= 0) & (nj < self.ny)
            nbr_inside = np.zeros(n_unk, dtype=bool)
            nbr_inside[ok] = inside[ni[ok], nj[ok]]
            nbr_idx[d, nbr_inside] = index[ni[nbr_inside], nj[nbr_inside]]
            cut = ~nbr_inside
            if np.any(cut):
                direction = np.array([di, dj], dtype=float)
                theta[d, cut] = self._crossing_fraction(xy_in[cut], direction)

        tE, tW, tN, tS = theta[0], theta[1], theta[2], theta[3]
        diag = (2.0 / h2) * (1.0 / (tE * tW) + 1.0 / (tN * tS))
        coef = np.stack([
            2.0 / (h2 * (tE * (tE + tW))),
            2.0 / (h2 * (tW * (tE + tW))),
            2.0 / (h2 * (tN * (tN + tS))),
            2.0 / (h2 * (tS * (tN + tS))),
        ])

        rows = [np.arange(n_unk)]
        cols = [np.arange(n_unk)]
        vals = [diag]
        for d, (di, dj) in enumerate(dirs):
            interior = nbr_idx[d] >= 0
            rows.append(np.nonzero(interior)[0])
            cols.append(nbr_idx[d, interior])
            vals.append(-coef[d, interior])
            cut = ~interior
            if np.any(cut):
                direction = np.array([di, dj], dtype=float)
                cross = xy_in[cut] + theta[d, cut][:, None] * (direction * self.h)
                gvals = np.atleast_1d(self.g(cross))
                rhs[np.nonzero(cut)[0]] += coef[d, cut] * gvals

        A = sp.csr_matrix(
            (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
            shape=(n_unk, n_unk),
        )
        u = spla.spsolve(A, rhs)
        if not np.all(np.isfinite(u)):
            raise SolverDiverged("direct solve returned non-finite values")
        resid = np.abs(A @ u - rhs)
        scale = np.abs(A).dot(np.abs(u)) + np.abs(rhs)
        self.residual = float(np.max(resid / np.maximum(scale, 1e-300)))
        if self.residual > 1e-10:
            raise SolverDiverged(f"relative residual {self.residual:g} > 1e-10")
        self.u = u
        self._ii, self._jj = ii, jj

    # -- evaluation ---------------------------------------------------------

    def node_values(self):
        """(points, values) at the interior nodes."""
        return self._node_xy(self._ii, self._jj), self.u.copy()

    def value(self, xy):
        """Bilinear interpolation; all four cell corners must be interior."""
        single = np.asarray(xy).ndim == 1
        xy = np.atleast_2d(np.asarray(xy, dtype=float))
        fx = (xy[:, 0] - self.x0) / self.h
        fy = (xy[:, 1] - self.y0) / self.h
        i = np.clip(np.floor(fx).astype(int), 0, self.nx - 2)
        j = np.clip(np.floor(fy).astype(int), 0, self.ny - 2)
        ax = fx - i
        ay = fy - j
        corners = [(i, j), (i + 1, j), (i, j + 1), (i + 1, j + 1)]
        idx = [self._index[ci, cj] for ci, cj in corners]
        if any(np.any(ix < 0) for ix in idx):
            raise GridTooCoarse(
                "evaluation cell touches the boundary; refine the grid or "
                "evaluate deeper inside"
            )
        v00, v10, v01, v11 = (self.u[ix] for ix in idx)
        out = (v00 * (1 - ax) * (1 - ay) + v10 * ax * (1 - ay)
               + v01 * (1 - ax) * ay + v11 * ax * ay)
        return float(out[0]) if single else out


def grid_solve(region, boundary_value, grid_h, bbox=None) -> GridSolution:
    """Reference Dirichlet solve; see GridSolution."""
    return GridSolution(region, boundary_value, grid_h, bbox=bbox)
