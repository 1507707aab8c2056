"""Affine maps of the plane and small point helpers."""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from utils.exceptions import SingularMapError

logger = logging.getLogger(__name__)

Point = Tuple[float, float]

_SINGULAR_TOL = 1e-12


def as_point(p) -> Point:
    """Coerce an array-like pair to a plain (x, y) tuple of floats."""
    x, y = p
    return (float(x), float(y))


def midpoint(p: Point, q: Point) -> Point:
    return ((p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0)


def distance(p: Point, q: Point) -> float:
    return float(np.hypot(p[0] - q[0], p[1] - q[1]))


def cross(u, v) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


@dataclass(frozen=True, eq=False)
class AffineMap:
    """x -> linear @ x + shift, with an invertible 2x2 linear part."""

    linear: np.ndarray
    shift: np.ndarray

    def __post_init__(self):
        linear = np.asarray(self.linear, dtype=float).reshape(2, 2)
        shift = np.asarray(self.shift, dtype=float).reshape(2)
        # |det| against the squared Frobenius norm: unchanged when the map is rescaled
        if abs(np.linalg.det(linear)) <= _SINGULAR_TOL * float(np.sum(linear * linear)):
            raise SingularMapError(f"Affine map is singular: det={np.linalg.det(linear)}")
        linear.setflags(write=False)
        shift.setflags(write=False)
        object.__setattr__(self, "linear", linear)
        object.__setattr__(self, "shift", shift)

    @classmethod
    def identity(cls) -> AffineMap:
        return cls(np.eye(2), np.zeros(2))

    @classmethod
    def from_points(cls, src: Sequence[Point], dst: Sequence[Point]) -> AffineMap:
        """The unique affine map sending three source points to three targets."""
        src = np.asarray(src, dtype=float)
        dst = np.asarray(dst, dtype=float)
        system = np.column_stack([src, np.ones(3)])
        try:
            solution = np.linalg.solve(system, dst)
        except np.linalg.LinAlgError as e:
            raise SingularMapError(f"Source points are collinear: {src.tolist()}") from e
        return cls(solution[:2].T, solution[2])

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.linear))

    def homogeneous(self) -> np.ndarray:
        matrix = np.eye(3)
        matrix[:2, :2] = self.linear
        matrix[:2, 2] = self.shift
        return matrix

    def apply(self, points) -> np.ndarray:
        """Map a single point (shape (2,)) or an array of points (shape (n, 2))."""
        points = np.asarray(points, dtype=float)
        return points @ self.linear.T + self.shift

    def apply_point(self, p) -> Point:
        return as_point(self.apply(p))

    def inverse(self) -> AffineMap:
        inv = np.linalg.inv(self.linear)
        return AffineMap(inv, -inv @ self.shift)

    def compose(self, other: AffineMap) -> AffineMap:
        """self after other."""
        return AffineMap(self.linear @ other.linear, self.linear @ other.shift + self.shift)

    def __repr__(self) -> str:
        return f"AffineMap(linear={self.linear.tolist()}, shift={self.shift.tolist()})"
