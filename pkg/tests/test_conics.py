import math

import numpy as np
import pytest

from geometry import conics
from geometry.affine import AffineMap
from geometry.conics import ConicCoeffs, Line, TangencyStatus
from utils.exceptions import DegenerateLineError, NotAnEllipseError

# (x-1)^2 / 4 + (y-2)^2 = 1, scaled by 4
SHIFTED_ELLIPSE = ConicCoeffs(1.0, 0.0, 4.0, -2.0, -16.0, 13.0)


def test_vanishing_quadratic_part_rejected():
    with pytest.raises(NotAnEllipseError):
        ConicCoeffs(0, 0, 0, 1, 1, 1)


def test_canonical_is_unit_norm_with_positive_pivot(unit_circle):
    c = unit_circle.scaled(-3.0).canonical()
    assert np.linalg.norm(c.as_array()) == pytest.approx(1.0)
    assert c.A > 0
    assert c.is_close(unit_circle)


def test_canonical_pivot_skips_zero_leading_coefficient():
    c = ConicCoeffs(0.0, 1.0, 0.0, 0.0, 0.0, -1.0).scaled(-2.0).canonical()
    assert c.A == 0.0
    assert c.B > 0


def test_matrix_round_trip(trapezoid_midpoint_conic):
    back = ConicCoeffs.from_matrix(trapezoid_midpoint_conic.matrix())
    np.testing.assert_allclose(back.as_array(), trapezoid_midpoint_conic.as_array())


def test_discriminants_of_unit_circle(unit_circle):
    d = conics.discriminants(unit_circle)
    assert (d.Delta, d.delta) == (4.0, 4.0)


def test_discriminants_of_trapezoid_example(trapezoid_midpoint_conic):
    d = conics.discriminants(trapezoid_midpoint_conic)
    assert d.Delta == pytest.approx(16.0)
    assert d.delta == pytest.approx(16.0)


@pytest.mark.parametrize("coeffs, expected", [
    ((1, 0, 1, 0, 0, -1), True),
    ((1, 0, 1, 0, 0, 1), False),     # no real points
    ((1, 0, 1, 0, 0, 0), False),     # a single point
    ((1, 0, -1, 0, 0, -1), False),   # hyperbola
    ((1, 2, 1, 0, 0, -1), False),    # parallel lines
])
def test_is_real_ellipse(coeffs, expected):
    assert conics.is_real_ellipse(ConicCoeffs(*coeffs)) is expected


def test_geometry_of_axis_aligned_ellipse():
    g = conics.geometry(SHIFTED_ELLIPSE)
    assert g.center == pytest.approx((1.0, 2.0))
    assert (g.a, g.b) == pytest.approx((2.0, 1.0))
    assert math.sin(g.angle) == pytest.approx(0.0, abs=1e-12)


def test_geometry_of_rotated_ellipse():
    # x^2/4 + y^2 = 1 rotated by 30 degrees
    theta = math.radians(30)
    R = AffineMap([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]], [0, 0])
    g = conics.geometry(conics.pushforward(ConicCoeffs(0.25, 0, 1, 0, 0, -1), R))
    assert (g.a, g.b) == pytest.approx((2.0, 1.0))
    assert g.angle == pytest.approx(theta)


def test_geometry_rejects_non_ellipse():
    with pytest.raises(NotAnEllipseError):
        conics.geometry(ConicCoeffs(1, 0, -1, 0, 0, -1))


def test_area(unit_circle, trapezoid_midpoint_conic):
    assert conics.area(unit_circle) == pytest.approx(math.pi)
    assert conics.area(trapezoid_midpoint_conic) == pytest.approx(math.pi / 2)
    assert conics.area(SHIFTED_ELLIPSE) == pytest.approx(2 * math.pi)


def test_area_is_scale_invariant(trapezoid_midpoint_conic):
    assert conics.area(trapezoid_midpoint_conic.scaled(-7.5)) == pytest.approx(math.pi / 2)


def test_evaluate_sign(unit_circle):
    assert conics.evaluate(unit_circle, (0, 0)) < 0
    assert conics.evaluate(unit_circle, (1, 0)) == pytest.approx(0.0)
    assert conics.evaluate(unit_circle.scaled(-1), (2, 0)) > 0


@pytest.mark.parametrize("y, status", [
    (1.0, TangencyStatus.TANGENT),
    (0.5, TangencyStatus.SECANT),
    (2.0, TangencyStatus.DISJOINT),
])
def test_line_tangency_against_horizontal_lines(unit_circle, y, status):
    result = conics.line_tangency(unit_circle, Line((-3.0, y), (2.0, 0.0)))
    assert result.status is status
    if status is TangencyStatus.TANGENT:
        assert result.point == pytest.approx((0.0, 1.0))
    else:
        assert result.point is None


def test_trapezoid_example_tangent_at_side_midpoints(trapezoid_midpoint_conic):
    top = conics.line_tangency(trapezoid_midpoint_conic, Line.through((0, 1), (4, 1)))
    bottom = conics.line_tangency(trapezoid_midpoint_conic, Line.through((1, 0), (0, 0)))
    assert top.is_tangent and bottom.is_tangent
    assert top.point == pytest.approx((2.0, 1.0))
    assert bottom.point == pytest.approx((0.5, 0.0))
    assert top.residual <= 1e-9


def test_zero_direction_line_rejected():
    with pytest.raises(DegenerateLineError):
        Line((0, 0), (0, 0))


def test_pushforward_scales_circle(unit_circle):
    T = AffineMap([[2.0, 0.0], [0.0, 1.0]], [0.0, 0.0])
    assert conics.pushforward(unit_circle, T).is_close(ConicCoeffs(0.25, 0, 1, 0, 0, -1))


def test_pushforward_maps_points_on_the_conic(trapezoid_midpoint_conic):
    T = AffineMap([[1.5, 0.3], [-0.2, 0.8]], [4.0, -1.0])
    image = conics.pushforward(trapezoid_midpoint_conic, T)
    for p in conics.geometry(trapezoid_midpoint_conic).boundary(12):
        assert conics.evaluate(image, T.apply_point(p)) == pytest.approx(0.0, abs=1e-12)


def test_boundary_is_counterclockwise():
    pts = conics.geometry(SHIFTED_ELLIPSE).boundary(8)
    x, y = pts.T
    signed = 0.5 * (np.dot(x, np.roll(y, -1)) - np.dot(np.roll(x, -1), y))
    assert signed > 0


def test_bounding_box_of_axis_aligned_ellipse():
    assert conics.geometry(SHIFTED_ELLIPSE).bounding_box() == pytest.approx((-1.0, 1.0, 3.0, 3.0))


def _random_ellipse(rng, size=(0.5, 3.0), reach=5.0):
    """A random ellipse as (coefficients with random scale and sign, a, b, center)."""
    a, b = sorted(rng.uniform(*size, 2), reverse=True)
    theta = rng.uniform(0.0, math.pi)
    rotation = np.array([[math.cos(theta), -math.sin(theta)], [math.sin(theta), math.cos(theta)]])
    center = rng.uniform(-reach, reach, 2)
    T = AffineMap(rotation @ np.diag([a, b]), center)
    factor = rng.choice([-1.0, 1.0]) * 10.0 ** rng.uniform(-6, 6)
    return conics.pushforward(ConicCoeffs(1, 0, 1, 0, 0, -1), T).scaled(factor), a, b, center


def _random_map(rng):
    while True:
        linear = rng.normal(size=(2, 2))
        if np.linalg.cond(linear) < 50:
            return AffineMap(linear, rng.uniform(-10, 10, 2))


def test_axes_product_law_on_random_ellipses():
    rng = np.random.default_rng(11)
    for _ in range(200):
        c, a, b, center = _random_ellipse(rng, size=(0.1, 5.0), reach=50.0)
        d = conics.discriminants(c)
        assert (a * b) ** 2 == pytest.approx(4 * d.delta ** 2 / d.Delta ** 3, rel=1e-8)
        g = conics.geometry(c)
        assert (g.a, g.b) == pytest.approx((a, b), rel=1e-8)
        assert g.center == pytest.approx(tuple(center), abs=1e-8)


def test_pushforward_scales_area_by_determinant():
    rng = np.random.default_rng(12)
    for _ in range(200):
        c, *_ = _random_ellipse(rng)
        T = _random_map(rng)
        image = conics.pushforward(c, T)
        assert conics.is_real_ellipse(image)
        assert conics.area(image) == pytest.approx(abs(T.det) * conics.area(c), rel=1e-9)


def test_pushforward_there_and_back_is_identity():
    rng = np.random.default_rng(13)
    for _ in range(200):
        c, *_ = _random_ellipse(rng)
        T = _random_map(rng)
        assert conics.pushforward(conics.pushforward(c, T), T.inverse()).is_close(c)


@pytest.mark.parametrize("factor", [1e-9, -2.5, 1e9])
def test_coefficient_scaling_changes_nothing(factor):
    c = SHIFTED_ELLIPSE.scaled(factor)
    assert conics.is_real_ellipse(c)
    g, g0 = conics.geometry(c), conics.geometry(SHIFTED_ELLIPSE)
    assert (*g.center, g.a, g.b) == pytest.approx((*g0.center, g0.a, g0.b))
    assert math.sin(g.angle) == pytest.approx(math.sin(g0.angle), abs=1e-12)
    assert conics.area(c) == pytest.approx(2 * math.pi)
    assert not conics.is_real_ellipse(ConicCoeffs(1, 0, 1, 0, 0, 1).scaled(factor))


@pytest.mark.parametrize("scale, shift", [
    (1.0, (100.0, 100.0)),
    (1.0, (1e4, -1e4)),
    (1e-7, (0.0, 0.0)),
    (1e7, (0.0, 0.0)),
    (1e5, (3e5, 0.0)),
])
def test_ellipse_away_from_origin_and_unit_scale(scale, shift):
    T = AffineMap(np.eye(2) * scale, shift)
    c = conics.pushforward(SHIFTED_ELLIPSE, T)
    assert conics.is_real_ellipse(c)
    g = conics.geometry(c)
    assert g.center == pytest.approx(T.apply_point((1.0, 2.0)), rel=1e-9)
    assert (g.a, g.b) == pytest.approx((2 * scale, scale), rel=1e-6)
    assert conics.area(c) == pytest.approx(2 * math.pi * scale ** 2, rel=1e-6)


@pytest.mark.parametrize("scale, shift", [
    (1.0, (100.0, -100.0)),
    (1e-7, (0.0, 0.0)),
    (1e7, (0.0, 0.0)),
    (1e-3, (0.01, 0.02)),
])
def test_tangency_away_from_origin_and_unit_scale(scale, shift):
    T = AffineMap(np.eye(2) * scale, shift)
    c = conics.pushforward(SHIFTED_ELLIPSE, T)
    top = T.apply_point((1.0, 3.0))
    result = conics.line_tangency(c, Line((top[0] - 7 * scale, top[1]), (scale, 0.0)))
    assert result.is_tangent
    assert result.point == pytest.approx(top, rel=1e-9, abs=1e-9 * scale)
    lower = T.apply_point((1.0, 2.5))
    assert conics.line_tangency(c, Line(lower, (1.0, 0.0))).status is TangencyStatus.SECANT
