"""Convex quadrilaterals: canonical labeling, classification and normalization.

A quadrilateral is labeled A1..A4 clockwise. Sides are S1=A1A2, S2=A2A3,
S3=A3A4, S4=A4A1 and diagonals D1=A1A3, D2=A2A4. Every non-parallelogram is
affinely equivalent to Q(s,t) with vertices (0,0), (0,1), (s,t), (1,0).
"""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional, Sequence, Tuple

import numpy as np

from geometry.affine import AffineMap, Point, as_point, cross, distance, midpoint
from utils.config import default_tolerance
from utils.exceptions import (
    CollinearPointsError,
    InvalidNormalizedQuadError,
    MalformedInputError,
    NonConvexQuadrilateralError,
    ParallelogramError,
)

logger = logging.getLogger(__name__)

_DEGENERACY_TOL = 1e-12


class Classification(str, Enum):
    PARALLELOGRAM = "parallelogram"
    TRAPEZOID = "trapezoid"
    MDQ_TYPE_1 = "mdq-type-1"
    MDQ_TYPE_2 = "mdq-type-2"
    GENERIC = "generic"


@dataclass(frozen=True)
class Quadrilateral:
    vertices: Tuple[Point, Point, Point, Point]

    def __post_init__(self):
        if len(self.vertices) != 4:
            raise MalformedInputError(f"A quadrilateral needs 4 vertices, got {len(self.vertices)}")
        vertices = tuple(as_point(v) for v in self.vertices)
        if not all(math.isfinite(c) for v in vertices for c in v):
            raise MalformedInputError(f"Vertex coordinates must be finite: {vertices}")
        object.__setattr__(self, "vertices", vertices)
        _check_clockwise_convex(vertices)

    @property
    def array(self) -> np.ndarray:
        return np.array(self.vertices)

    def side(self, j: int) -> Tuple[Point, Point]:
        """Endpoints of side S_j, j in 1..4."""
        return self.vertices[j - 1], self.vertices[j % 4]

    def sides(self):
        return [self.side(j) for j in range(1, 5)]

    def side_vector(self, j: int) -> Point:
        p, q = self.side(j)
        return (q[0] - p[0], q[1] - p[1])

    def diameter(self) -> float:
        return max(distance(p, q) for p, q in itertools.combinations(self.vertices, 2))

    def relabeled(self, shift: int) -> Quadrilateral:
        """Cyclic relabeling: the new A1 is the old A_{1+shift}."""
        shift %= 4
        return Quadrilateral(self.vertices[shift:] + self.vertices[:shift])

    def transformed(self, T: AffineMap) -> Quadrilateral:
        """Image under T with labels carried over.

        An orientation-reversing T is followed by the labeling (A1, A4, A3, A2),
        which keeps both diagonals and restores clockwise order.
        """
        image = [T.apply_point(v) for v in self.vertices]
        if T.det < 0:
            image = [image[0], image[3], image[2], image[1]]
        return Quadrilateral(tuple(image))

    def contains(self, p: Point) -> bool:
        """Strict interior test for the clockwise convex polygon."""
        for a, b in self.sides():
            if cross((b[0] - a[0], b[1] - a[1]), (p[0] - a[0], p[1] - a[1])) >= 0:
                return False
        return True


def _check_clockwise_convex(vertices: Sequence[Point]) -> None:
    scale = max(distance(p, q) for p, q in itertools.combinations(vertices, 2)) ** 2
    if scale == 0:
        raise CollinearPointsError("All vertices coincide")
    turns = []
    for i in range(4):
        p, q, r = vertices[i], vertices[(i + 1) % 4], vertices[(i + 2) % 4]
        turns.append(cross((q[0] - p[0], q[1] - p[1]), (r[0] - q[0], r[1] - q[1])))
    if any(abs(turn) <= _DEGENERACY_TOL * scale for turn in turns):
        raise CollinearPointsError(f"Consecutive vertices are collinear: {list(vertices)}")
    if not all(turn < 0 for turn in turns):
        raise NonConvexQuadrilateralError(
            f"Vertices are not a clockwise convex quadrilateral: {list(vertices)}"
        )


def make_quadrilateral(points: Sequence[Point]) -> Quadrilateral:
    """Canonically label four points given in any order.

    The vertex with the smallest y (ties: smallest x) becomes A1 and the rest
    follow clockwise.
    """
    if len(points) != 4:
        raise MalformedInputError(f"A quadrilateral needs 4 vertices, got {len(points)}")
    pts = [as_point(p) for p in points]
    if not all(math.isfinite(c) for p in pts for c in p):
        raise MalformedInputError(f"Vertex coordinates must be finite: {pts}")

    scale = max(distance(p, q) for p, q in itertools.combinations(pts, 2)) ** 2
    for p, q, r in itertools.combinations(pts, 3):
        if abs(cross((q[0] - p[0], q[1] - p[1]), (r[0] - p[0], r[1] - p[1]))) <= _DEGENERACY_TOL * scale:
            raise CollinearPointsError(f"Points {p}, {q}, {r} are collinear")

    cx = sum(p[0] for p in pts) / 4.0
    cy = sum(p[1] for p in pts) / 4.0
    ordered = sorted(pts, key=lambda p: math.atan2(p[1] - cy, p[0] - cx), reverse=True)
    start = min(range(4), key=lambda i: (ordered[i][1], ordered[i][0]))
    ordered = ordered[start:] + ordered[:start]
    quad = Quadrilateral(tuple(ordered))
    logger.debug(f"Canonical labeling: {quad.vertices}")
    return quad


@dataclass(frozen=True)
class DiagonalData:
    P: Point
    M1: Point
    M2: Point


def diagonal_data(Q: Quadrilateral) -> DiagonalData:
    a1, a2, a3, a4 = Q.vertices
    d1 = (a3[0] - a1[0], a3[1] - a1[1])
    d2 = (a4[0] - a2[0], a4[1] - a2[1])
    u, _ = np.linalg.solve([[d1[0], -d2[0]], [d1[1], -d2[1]]], [a2[0] - a1[0], a2[1] - a1[1]])
    P = (a1[0] + u * d1[0], a1[1] + u * d1[1])
    return DiagonalData(as_point(P), midpoint(a1, a3), midpoint(a2, a4))


def side_midpoints(Q: Quadrilateral) -> Tuple[Point, Point, Point, Point]:
    return tuple(midpoint(p, q) for p, q in Q.sides())


def _parallel(Q: Quadrilateral, j: int, k: int, tol: float) -> bool:
    u, v = Q.side_vector(j), Q.side_vector(k)
    return abs(cross(u, v)) <= tol * math.hypot(*u) * math.hypot(*v)


def classify(Q: Quadrilateral, tol: Optional[float] = None) -> Classification:
    """Parallelogram / trapezoid / mdq type 1 / mdq type 2 / generic, in Q's own labeling."""
    if tol is None:
        tol = default_tolerance()
    pair_13 = _parallel(Q, 1, 3, tol)
    pair_24 = _parallel(Q, 2, 4, tol)
    if pair_13 and pair_24:
        return Classification.PARALLELOGRAM
    if pair_13 or pair_24:
        return Classification.TRAPEZOID
    diag = diagonal_data(Q)
    reach = tol * Q.diameter()
    if distance(diag.P, diag.M2) <= reach:
        return Classification.MDQ_TYPE_1
    if distance(diag.P, diag.M1) <= reach:
        return Classification.MDQ_TYPE_2
    return Classification.GENERIC


@dataclass(frozen=True)
class NormalizedQuad:
    """Q(s,t) with vertices (0,0), (0,1), (s,t), (1,0) and (s,t) in G."""

    s: float
    t: float

    def __post_init__(self):
        s, t = float(self.s), float(self.t)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "t", t)
        if not (s > 0 and t > 0 and s + t > 1 and abs(s - 1) > _DEGENERACY_TOL):
            raise InvalidNormalizedQuadError(f"(s, t) = ({s}, {t}) is outside s,t>0, s+t>1, s!=1")

    def quadrilateral(self) -> Quadrilateral:
        return Quadrilateral(((0.0, 0.0), (0.0, 1.0), (self.s, self.t), (1.0, 0.0)))

    def side_midpoints(self) -> Tuple[Point, Point, Point, Point]:
        s, t = self.s, self.t
        return ((0.0, 0.5), (s / 2, (1 + t) / 2), ((1 + s) / 2, t / 2), (0.5, 0.0))

    def diameter(self) -> float:
        return self.quadrilateral().diameter()


class Normalization(NamedTuple):
    transform: AffineMap
    normalized: NormalizedQuad
    quad: Quadrilateral


def normalize(Q: Quadrilateral, tol: Optional[float] = None) -> Normalization:
    """Affine map sending A1, A2, A4 to (0,0), (0,1), (1,0), and the image (s,t) of A3.

    Trapezoids are relabeled so the parallel pair is {S2, S4}, which makes t = 1.
    """
    if tol is None:
        tol = default_tolerance()
    kind = classify(Q, tol)
    if kind is Classification.PARALLELOGRAM:
        raise ParallelogramError(f"{Q.vertices} is a parallelogram; the inscribed family needs s != 1")
    labeled = Q
    if kind is Classification.TRAPEZOID and _parallel(Q, 1, 3, tol):
        labeled = Q.relabeled(1)
        logger.debug("Parallel pair on S1/S3, shifting labeling by one")
    a1, a2, a3, a4 = labeled.vertices
    T = AffineMap.from_points([a1, a2, a4], [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0)])
    s, t = T.apply_point(a3)
    if kind is Classification.TRAPEZOID:
        t = 1.0
    logger.debug(f"Normalized {kind.value} to s={s}, t={t} via {T}")
    return Normalization(T, NormalizedQuad(s, t), labeled)
