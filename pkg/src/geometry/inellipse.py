"""Ellipses inscribed in a convex quadrilateral.

Every ellipse inscribed in Q(s,t) is a member of a one-parameter family
indexed by q in (0,1), where q is the abscissa of the tangency point on the
bottom side S4. The family coefficients are polynomials in q, which gives
closed forms for the tangency points, for the parameters at which a
tangency point is a side midpoint, and for the area profile a^2 b^2(q).
Results for an arbitrary quadrilateral are computed on Q(s,t) and carried
back with the inverse of the normalization map.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import FrozenSet, List, NamedTuple, Optional, Tuple

import numpy as np
from numpy.polynomial import Polynomial

from geometry import conics
from geometry.affine import Point, as_point
from geometry.conics import ConicCoeffs
from geometry.quadgeom import (
    Classification,
    Normalization,
    NormalizedQuad,
    Quadrilateral,
    classify,
    normalize,
)
from utils.config import (
    ALGEBRAIC_RTOL,
    AREA_Q_WIDTH,
    AREA_SCAN_SAMPLES,
    GOLDEN_Q_WIDTH,
    default_tolerance,
)
from utils.exceptions import ParallelogramError, ParameterOutOfRangeError
from utils.optimize import bisect_sign_change, golden_section_max

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FamilyParam:
    q: float

    def __post_init__(self):
        q = float(self.q)
        if not 0.0 < q < 1.0:
            raise ParameterOutOfRangeError(f"Family parameter q={q} is outside (0, 1)")
        object.__setattr__(self, "q", q)

    @classmethod
    def coerce(cls, value) -> FamilyParam:
        return value if isinstance(value, FamilyParam) else cls(value)


def _q(value) -> float:
    return FamilyParam.coerce(value).q


def family_polynomials(nq: NormalizedQuad) -> Tuple[Polynomial, ...]:
    """The six family coefficients A..F of Q(s,t) as polynomials in q."""
    s, t = nq.s, nq.t
    mix = Polynomial([s, t - s])  # (1-q)s + qt
    return (
        Polynomial([t * t]),
        Polynomial([-2 * s * t, 2 * t * (s - t + 2), 4 * (t - 1) * t]),
        mix ** 2,
        Polynomial([0.0, -2 * t * t]),
        Polynomial([0.0, -2 * t]) * mix,
        Polynomial([0.0, 0.0, t * t]),
    )


def discriminant_polynomials(nq: NormalizedQuad) -> Tuple[Polynomial, Polynomial]:
    """Delta(q) and delta(q) of the family conic."""
    A, B, C, D, E, F = family_polynomials(nq)
    Delta = 4 * A * C - B ** 2
    delta = C * D ** 2 + A * E ** 2 - B * D * E - F * Delta
    return Delta, delta


def area_profile(nq: NormalizedQuad, q):
    """a^2 b^2 = 4 delta^2 / Delta^3 of the family member(s) at q; vectorized over q."""
    Delta, delta = discriminant_polynomials(nq)
    return 4 * delta(q) ** 2 / Delta(q) ** 3


def ellipse_from_q(nq: NormalizedQuad, q) -> ConicCoeffs:
    q = _q(q)
    return ConicCoeffs(*(float(p(q)) for p in family_polynomials(nq)))


@dataclass(frozen=True)
class TangencySet:
    p1: Point
    p2: Point
    p3: Point
    p4: Point

    def as_tuple(self) -> Tuple[Point, Point, Point, Point]:
        return (self.p1, self.p2, self.p3, self.p4)


def tangency_arrays(s: float, t: float, q) -> np.ndarray:
    """Tangency points on S1..S4 for each q, shape (4, *q.shape, 2)."""
    q = np.asarray(q, dtype=float)
    zero = np.zeros_like(q)
    den1 = (t - s) * q + s
    den2 = (t - 1) * (s + t) * q + s
    den3 = (s + t - 2) * q + 1
    return np.stack([
        np.stack([zero, q * t / den1], axis=-1),
        np.stack([(1 - q) * s * s / den2, t * (s + q * (t - 1)) / den2], axis=-1),
        np.stack([(s + q * (t - 1)) / den3, (1 - q) * t / den3], axis=-1),
        np.stack([q, zero], axis=-1),
    ])


def tangency_points(nq: NormalizedQuad, q) -> TangencySet:
    points = tangency_arrays(nq.s, nq.t, _q(q))
    return TangencySet(*(as_point(p) for p in points))


@dataclass(frozen=True)
class MidpointSolutions:
    """q_j is the unique family parameter whose tangency point on S_j is the midpoint of S_j."""

    q1: float
    q2: float
    q3: float
    q4: float

    def as_tuple(self) -> Tuple[float, float, float, float]:
        return (self.q1, self.q2, self.q3, self.q4)


def midpoint_solutions(nq: NormalizedQuad) -> MidpointSolutions:
    s, t = nq.s, nq.t
    return MidpointSolutions(
        q1=s / (s + t),
        q2=s / (t * t + s * t + s - t),
        q3=1 / (s + t),
        q4=0.5,
    )


def side_groups(kind: Classification, sol: MidpointSolutions) -> List[Tuple[float, FrozenSet[int]]]:
    """Partition of the four sides by shared midpoint parameter.

    Coincidences follow from the class: q1=q4 and q2=q3 exactly when s=t,
    q1=q2 and q3=q4 exactly when s+t=2, q2=q4 exactly when t=1; q1 and q3
    never coincide.
    """
    if kind is Classification.MDQ_TYPE_1:
        return [(sol.q4, frozenset({1, 4})), (sol.q3, frozenset({2, 3}))]
    if kind is Classification.MDQ_TYPE_2:
        return [(sol.q1, frozenset({1, 2})), (sol.q4, frozenset({3, 4}))]
    if kind is Classification.TRAPEZOID:
        return [(sol.q4, frozenset({2, 4})), (sol.q1, frozenset({1})), (sol.q3, frozenset({3}))]
    if kind is Classification.GENERIC:
        return [(q, frozenset({j})) for j, q in enumerate(sol.as_tuple(), start=1)]
    raise ParallelogramError("Midpoint grouping is undefined for parallelograms")


def midpoint_sides(nq: NormalizedQuad, q, tol: Optional[float] = None) -> FrozenSet[int]:
    """Sides whose tangency point lies within tol * diam of the side midpoint."""
    if tol is None:
        tol = default_tolerance()
    points = tangency_arrays(nq.s, nq.t, _q(q))
    gaps = np.hypot(*(points - np.array(nq.side_midpoints())).T)
    return frozenset(int(j) + 1 for j in np.flatnonzero(gaps <= tol * nq.diameter()))


def count_midpoint_tangencies(nq: NormalizedQuad, q, tol: Optional[float] = None) -> int:
    return len(midpoint_sides(nq, q, tol))


@dataclass(frozen=True)
class MidpointTangentEllipse:
    q: float
    conic: ConicCoeffs
    midpoint_sides: FrozenSet[int]
    tangency_points: TangencySet
    area: float

    def __post_init__(self):
        if not 1 <= len(self.midpoint_sides) <= 2:
            raise ValueError(f"An inscribed ellipse of a non-parallelogram has 1 or 2 midpoint sides, "
                             f"got {sorted(self.midpoint_sides)}")


def _to_user(norm: Normalization, q: float) -> Tuple[ConicCoeffs, TangencySet, float]:
    back = norm.transform.inverse()
    conic = conics.pushforward(ellipse_from_q(norm.normalized, q), back)
    points = TangencySet(*(back.apply_point(p) for p in tangency_points(norm.normalized, q).as_tuple()))
    return conic, points, conics.area(conic)


def _carry_back(norm: Normalization, q: float, sides: FrozenSet[int]) -> MidpointTangentEllipse:
    conic, points, area = _to_user(norm, q)
    return MidpointTangentEllipse(q, conic, sides, points, area)


def midpoint_tangent_ellipses(Q: Quadrilateral, tol: Optional[float] = None) -> List[MidpointTangentEllipse]:
    """Inscribed ellipses tangent at side midpoints, in Q's coordinates.

    Mdq's and trapezoids give only the ellipses tangent at two midpoints;
    a generic quadrilateral gives one ellipse per side.
    """
    kind = classify(Q, tol)
    norm = normalize(Q, tol)
    sol = midpoint_solutions(norm.normalized)
    logger.debug(f"{kind.value}: midpoint parameters {sol.as_tuple()}")
    groups = side_groups(kind, sol)
    if kind is not Classification.GENERIC:
        groups = [g for g in groups if len(g[1]) >= 2]
    return [_carry_back(norm, q, sides) for q, sides in groups]


def midpoint_tangent_ellipse_for_side(Q: Quadrilateral, side: int,
                                      tol: Optional[float] = None) -> MidpointTangentEllipse:
    """The inscribed ellipse tangent at the midpoint of the given side (1..4)."""
    if side not in (1, 2, 3, 4):
        raise ValueError(f"Side index must be 1..4, got {side}")
    kind = classify(Q, tol)
    norm = normalize(Q, tol)
    q, sides = next(g for g in side_groups(kind, midpoint_solutions(norm.normalized)) if side in g[1])
    return _carry_back(norm, q, sides)


def maximize_area_parameter(nq: NormalizedQuad, samples: int = AREA_SCAN_SAMPLES,
                            width: float = AREA_Q_WIDTH) -> float:
    """Numeric argmax of a^2 b^2(q) over (0, 1).

    A uniform scan brackets the maximum, golden-section search narrows the
    bracket, and bisection on the sign of d/dq log(a^2 b^2) finishes it,
    since the profile is too flat at its peak for value comparisons alone.
    """
    Delta, delta = discriminant_polynomials(nq)

    def profile(q):
        return 4 * delta(q) ** 2 / Delta(q) ** 3

    slope = 2 * delta.deriv() * Delta - 3 * Delta.deriv() * delta

    grid = (np.arange(samples) + 0.5) / samples
    k = int(np.argmax(profile(grid)))
    lo = grid[k] - 1.0 / samples if k > 0 else grid[k] / 2
    hi = grid[k] + 1.0 / samples if k < samples - 1 else (grid[k] + 1) / 2
    a, b = golden_section_max(profile, lo, hi, GOLDEN_Q_WIDTH)
    logger.debug(f"Area scan bracket [{lo}, {hi}], golden bracket [{a}, {b}]")

    bracket = bisect_sign_change(slope, a, b, width) or bisect_sign_change(slope, lo, hi, width)
    if bracket is None:
        logger.warning(f"Slope sign change not bracketed for s={nq.s}, t={nq.t}; using golden bracket")
        bracket = (a, b)
    return float((bracket[0] + bracket[1]) / 2)


class InscribedEllipse(NamedTuple):
    q: float
    conic: ConicCoeffs
    area: float
    midpoint_sides: FrozenSet[int]
    tangency_points: TangencySet


def inscribed_ellipse(Q: Quadrilateral, q, tol: Optional[float] = None) -> InscribedEllipse:
    """The family member at q, in Q's coordinates (q indexes the normalized labeling)."""
    q = _q(q)
    norm = normalize(Q, tol)
    conic, points, area = _to_user(norm, q)
    return InscribedEllipse(q, conic, area, midpoint_sides(norm.normalized, q, tol), points)


def max_area_ellipse(Q: Quadrilateral, tol: Optional[float] = None) -> InscribedEllipse:
    """The inscribed ellipse of maximal area, in Q's coordinates."""
    kind = classify(Q, tol)
    norm = normalize(Q, tol)
    nq = norm.normalized
    if kind is Classification.TRAPEZOID:
        q = 0.5
        expected = nq.s / 4 * q * (1 - q)
        observed = float(area_profile(nq, q))
        if abs(observed - expected) > ALGEBRAIC_RTOL * expected:
            logger.warning(f"Trapezoid area law mismatch at s={nq.s}: {observed} != {expected}")
    else:
        q = maximize_area_parameter(nq)
    logger.debug(f"Maximal-area parameter q={q} for {kind.value}")
    conic, points, area = _to_user(norm, q)
    return InscribedEllipse(q, conic, area, midpoint_sides(nq, q, tol), points)
