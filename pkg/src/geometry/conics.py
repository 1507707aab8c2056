"""General conic algebra for A x^2 + B xy + C y^2 + D x + E y + F = 0.

Only real, nondegenerate ellipses are handled beyond rejection. Coefficient
vectors are compared up to scale through their canonical form: unit Euclidean
norm with the first nonzero quadratic coefficient positive.
"""

from __future__ import annotations

import logging
import math
from dataclasses import astuple, dataclass, fields
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from geometry.affine import AffineMap, Point, as_point
from utils.config import ALGEBRAIC_RTOL, ELLIPSE_TOL, TANGENCY_TOL
from utils.exceptions import DegenerateLineError, NotAnEllipseError

logger = logging.getLogger(__name__)

_PIVOT_TOL = 1e-14


@dataclass(frozen=True)
class ConicCoeffs:
    A: float
    B: float
    C: float
    D: float
    E: float
    F: float

    def __post_init__(self):
        for f in fields(self):
            object.__setattr__(self, f.name, float(getattr(self, f.name)))
        if self.A == 0 and self.B == 0 and self.C == 0:
            raise NotAnEllipseError(f"Quadratic part of {self} vanishes")

    @classmethod
    def from_sequence(cls, values: Sequence[float]) -> ConicCoeffs:
        if len(values) != 6:
            raise ValueError(f"Expected 6 conic coefficients, got {len(values)}")
        return cls(*values)

    @classmethod
    def from_matrix(cls, m: np.ndarray) -> ConicCoeffs:
        """Read coefficients back from the symmetric 3x3 homogeneous matrix."""
        return cls(m[0, 0], 2 * m[0, 1], m[1, 1], 2 * m[0, 2], 2 * m[1, 2], m[2, 2])

    def as_array(self) -> np.ndarray:
        return np.array(astuple(self))

    def matrix(self) -> np.ndarray:
        A, B, C, D, E, F = astuple(self)
        return np.array([[A, B / 2, D / 2],
                         [B / 2, C, E / 2],
                         [D / 2, E / 2, F]])

    def scaled(self, factor: float) -> ConicCoeffs:
        return ConicCoeffs.from_sequence(self.as_array() * factor)

    def canonical(self) -> ConicCoeffs:
        v = self.as_array()
        v = v / np.linalg.norm(v)
        floor = _PIVOT_TOL * float(np.max(np.abs(v[:3])))
        pivot = next((x for x in v[:3] if abs(x) > floor), None)
        if pivot is None:
            pivot = v[np.flatnonzero(v[:3])[0]]
        if pivot < 0:
            v = -v
        return ConicCoeffs.from_sequence(v)

    def is_close(self, other: ConicCoeffs, rel_tol: float = ALGEBRAIC_RTOL) -> bool:
        """Equality up to a nonzero scalar multiple."""
        return bool(np.allclose(self.canonical().as_array(), other.canonical().as_array(),
                                rtol=0.0, atol=rel_tol))


@dataclass(frozen=True)
class ConicDiscriminants:
    Delta: float
    delta: float


@dataclass(frozen=True)
class EllipseGeometry:
    center: Point
    a: float
    b: float
    angle: float

    def boundary(self, n: int) -> np.ndarray:
        """n points on the ellipse, counterclockwise, as an (n, 2) array."""
        theta = 2 * np.pi * np.arange(n) / n
        cos_t, sin_t = math.cos(self.angle), math.sin(self.angle)
        u = self.a * np.cos(theta)
        v = self.b * np.sin(theta)
        x = self.center[0] + u * cos_t - v * sin_t
        y = self.center[1] + u * sin_t + v * cos_t
        return np.column_stack([x, y])

    def bounding_box(self):
        """(xmin, ymin, xmax, ymax) of the rotated ellipse."""
        cos_t, sin_t = math.cos(self.angle), math.sin(self.angle)
        half_w = math.hypot(self.a * cos_t, self.b * sin_t)
        half_h = math.hypot(self.a * sin_t, self.b * cos_t)
        cx, cy = self.center
        return (cx - half_w, cy - half_h, cx + half_w, cy + half_h)


@dataclass(frozen=True)
class Line:
    anchor: Point
    direction: Point

    def __post_init__(self):
        object.__setattr__(self, "anchor", as_point(self.anchor))
        object.__setattr__(self, "direction", as_point(self.direction))
        if math.hypot(*self.direction) == 0:
            raise DegenerateLineError(f"Line through {self.anchor} has zero direction")

    @classmethod
    def through(cls, p: Point, q: Point) -> Line:
        return cls(p, (q[0] - p[0], q[1] - p[1]))


class TangencyStatus(str, Enum):
    TANGENT = "tangent"
    SECANT = "secant"
    DISJOINT = "disjoint"


@dataclass(frozen=True)
class TangencyResult:
    status: TangencyStatus
    point: Optional[Point]
    residual: float

    @property
    def is_tangent(self) -> bool:
        return self.status is TangencyStatus.TANGENT


def discriminants(c: ConicCoeffs) -> ConicDiscriminants:
    """Delta = 4AC - B^2 and delta = CD^2 + AE^2 - BDE - F*Delta on the raw coefficients."""
    A, B, C, D, E, F = astuple(c)
    Delta = 4 * A * C - B * B
    delta = C * D * D + A * E * E - B * D * E - F * Delta
    return ConicDiscriminants(Delta, delta)


@dataclass(frozen=True)
class _CenteredForm:
    """c / |(A, B, C)| with A + C > 0, written as A x'^2 + B x'y' + C y'^2 + k about its center."""

    coeffs: np.ndarray
    Delta: float
    center: Optional[np.ndarray]
    k: float
    k_scale: float


def _centered_form(c: ConicCoeffs) -> _CenteredForm:
    v = c.as_array()
    v = v / np.linalg.norm(v[:3])
    if v[0] + v[2] < 0:
        v = -v
    A, B, C, D, E, F = v
    Delta = 4 * A * C - B * B
    if Delta <= 0:
        return _CenteredForm(v, Delta, None, math.nan, math.nan)
    cx = (B * E - 2 * C * D) / Delta
    cy = (B * D - 2 * A * E) / Delta
    k = F + (D * cx + E * cy) / 2
    return _CenteredForm(v, Delta, np.array([cx, cy]), k, abs(F) + abs(D * cx) / 2 + abs(E * cy) / 2)


def is_real_ellipse(c: ConicCoeffs, tol: float = ELLIPSE_TOL) -> bool:
    """Delta > 0 and the center value strictly negative, both relative to the size of their terms.

    The test is invariant under scaling of the coefficients and under
    translation or scaling of the plane.
    """
    form = _centered_form(c)
    return form.Delta > tol and -form.k > tol * form.k_scale


def _require_ellipse(c: ConicCoeffs) -> _CenteredForm:
    if not is_real_ellipse(c):
        raise NotAnEllipseError(f"{c} is not a real nondegenerate ellipse")
    return _centered_form(c)


def geometry(c: ConicCoeffs) -> EllipseGeometry:
    form = _require_ellipse(c)
    A, B, C = form.coeffs[:3]
    # eigh sorts ascending: the smaller eigenvalue belongs to the major axis
    evals, evecs = np.linalg.eigh([[A, B / 2], [B / 2, C]])
    a, b = np.sqrt(-form.k / evals)
    angle = math.atan2(evecs[1, 0], evecs[0, 0]) % math.pi
    if angle >= math.pi:
        angle = 0.0
    return EllipseGeometry(as_point(form.center), float(a), float(b), angle)


def area(c: ConicCoeffs) -> float:
    """pi * a * b = 2 pi |k| / sqrt(Delta) for the centered form; equals pi * sqrt(4 delta^2 / Delta^3)."""
    form = _require_ellipse(c)
    return 2.0 * math.pi * -form.k / math.sqrt(form.Delta)


def evaluate(c: ConicCoeffs, p) -> float:
    """Value of the canonicalized conic polynomial at p."""
    A, B, C, D, E, F = astuple(c.canonical())
    x, y = as_point(p)
    return A * x * x + B * x * y + C * y * y + D * x + E * y + F


def line_tangency(c: ConicCoeffs, line: Line, tol: float = TANGENCY_TOL) -> TangencyResult:
    """Classify a line against an ellipse through the restricted quadratic alpha u^2 + beta u + gamma.

    The line is parametrized from the foot of the perpendicular through the
    conic's center. The residual is |beta^2 - 4 alpha gamma| over
    4 alpha (x0' M x0 + |k|), which bounds both terms, so it is
    dimensionless and lies in [0, 1].
    """
    form = _require_ellipse(c)
    A, B, C = form.coeffs[:3]
    norm = math.hypot(*line.direction)
    dx, dy = line.direction[0] / norm, line.direction[1] / norm
    cx, cy = form.center
    # anchor relative to the center, moved to the foot of the perpendicular
    rx, ry = line.anchor[0] - cx, line.anchor[1] - cy
    along = rx * dx + ry * dy
    x0, y0 = rx - along * dx, ry - along * dy
    alpha = A * dx * dx + B * dx * dy + C * dy * dy
    beta = 2 * A * x0 * dx + B * (x0 * dy + y0 * dx) + 2 * C * y0 * dy
    offset = A * x0 * x0 + B * x0 * y0 + C * y0 * y0
    gamma = offset + form.k
    disc = beta * beta - 4 * alpha * gamma
    residual = abs(disc) / (4 * alpha * (offset - form.k))
    x0, y0 = x0 + cx, y0 + cy
    if residual <= tol:
        u = -beta / (2 * alpha)
        return TangencyResult(TangencyStatus.TANGENT, (x0 + u * dx, y0 + u * dy), residual)
    if disc > 0:
        return TangencyResult(TangencyStatus.SECANT, None, residual)
    return TangencyResult(TangencyStatus.DISJOINT, None, residual)


def pushforward(c: ConicCoeffs, T: AffineMap) -> ConicCoeffs:
    """The conic of the image set T({p : c(p) = 0}), i.e. c composed with T^-1."""
    h_inv = T.inverse().homogeneous()
    image = h_inv.T @ c.matrix() @ h_inv
    return ConicCoeffs.from_matrix(image).canonical()
