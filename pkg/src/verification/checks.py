"""Brute-force checks that do not rely on the closed forms they verify."""

import logging
from typing import List, NamedTuple, Tuple

import numpy as np

from geometry import conics
from geometry.conics import ConicCoeffs, Line
from geometry.inellipse import midpoint_solutions, tangency_arrays
from geometry.quadgeom import NormalizedQuad, Quadrilateral
from utils.config import MIN_GRID_SIZE, MIN_POLYGON_SIDES, POLYGON_SIDES, TANGENCY_TOL
from utils.exceptions import InvalidConfigError

logger = logging.getLogger(__name__)

# Tangency points this close to a vertex (as a fraction of the side) are not interior
_SEGMENT_MARGIN = 1e-9


class SideScan(NamedTuple):
    q: float
    distance: float


def q_grid(grid_size: int) -> np.ndarray:
    """Open grid k/N, k = 1..N-1."""
    if grid_size < MIN_GRID_SIZE:
        raise InvalidConfigError(f"grid_size must be >= {MIN_GRID_SIZE}, got {grid_size}")
    return np.arange(1, grid_size) / grid_size


def _midpoint_gaps(nq: NormalizedQuad, q: np.ndarray) -> np.ndarray:
    """|P_j(q) - MP_j| for every side and q, shape (4, len(q))."""
    points = tangency_arrays(nq.s, nq.t, q)
    midpoints = np.array(nq.side_midpoints())[:, None, :]
    return np.hypot(*np.moveaxis(points - midpoints, -1, 0))


def grid_scan_midpoints(nq: NormalizedQuad, grid_size: int) -> List[SideScan]:
    """Per side, the grid parameter whose tangency point is nearest the side midpoint."""
    q = q_grid(grid_size)
    gaps = _midpoint_gaps(nq, q)
    best = np.argmin(gaps, axis=1)
    return [SideScan(float(q[k]), float(gaps[j, k])) for j, k in enumerate(best)]


def midpoint_count_profile(nq: NormalizedQuad, grid_size: int, tol: float) -> Tuple[np.ndarray, np.ndarray]:
    """Number of midpoint tangencies at each grid q and at the four closed-form midpoint parameters."""
    q = np.concatenate([q_grid(grid_size), midpoint_solutions(nq).as_tuple()])
    gaps = _midpoint_gaps(nq, q)
    counts = np.count_nonzero(gaps <= tol * nq.diameter(), axis=0)
    return q, counts


def inscribed_check(c: ConicCoeffs, Q: Quadrilateral, tol: float = TANGENCY_TOL) -> bool:
    """Tangent to every side line, strictly inside every side segment, centered inside Q."""
    if not conics.is_real_ellipse(c):
        return False
    for j, (p, r) in enumerate(Q.sides(), start=1):
        line = Line.through(p, r)
        result = conics.line_tangency(c, line, tol)
        if not result.is_tangent:
            logger.debug(f"Side {j} is {result.status.value} (residual {result.residual:.3e})")
            return False
        d = np.subtract(r, p)
        u = float(np.dot(np.subtract(result.point, p), d) / np.dot(d, d))
        if not _SEGMENT_MARGIN < u < 1 - _SEGMENT_MARGIN:
            logger.debug(f"Tangency on side {j} at segment parameter {u} is not interior")
            return False
    return Q.contains(conics.geometry(c).center)


def polygonal_area(c: ConicCoeffs, n: int = POLYGON_SIDES) -> float:
    """Shoelace area of the n-gon inscribed in the ellipse."""
    if n < MIN_POLYGON_SIDES:
        raise InvalidConfigError(f"Polygon needs at least {MIN_POLYGON_SIDES} sides, got {n}")
    x, y = conics.geometry(c).boundary(n).T
    return float(0.5 * abs(np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y)))
