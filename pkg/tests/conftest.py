import os
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from geometry.conics import ConicCoeffs  # noqa: E402
from geometry.quadgeom import NormalizedQuad, make_quadrilateral  # noqa: E402

# Worked example with s = t = 2 after normalization (a type-1 mdq)
EXAMPLE_MDQ_VERTICES = [(0.0, 0.0), (0.0, 1.0), (2.0, 4.0), (1.0, 1.0)]
# Worked example Q(4, 1) (a trapezoid)
EXAMPLE_TRAPEZOID_VERTICES = [(0.0, 0.0), (0.0, 1.0), (4.0, 1.0), (1.0, 0.0)]
GENERIC_VERTICES = [(0.0, 0.0), (0.0, 1.0), (2.0, 3.0), (1.0, 0.0)]
MDQ_TYPE_2_VERTICES = [(0.0, 0.0), (0.0, 1.0), (0.5, 1.5), (1.0, 0.0)]
SQUARE_VERTICES = [(0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0)]


def flatten(vertices):
    return [str(c) for v in vertices for c in v]


@pytest.fixture
def mdq_quad():
    return make_quadrilateral(EXAMPLE_MDQ_VERTICES)


@pytest.fixture
def trapezoid_quad():
    return make_quadrilateral(EXAMPLE_TRAPEZOID_VERTICES)


@pytest.fixture
def generic_quad():
    return make_quadrilateral(GENERIC_VERTICES)


@pytest.fixture
def mdq_type_2_quad():
    return make_quadrilateral(MDQ_TYPE_2_VERTICES)


@pytest.fixture
def square_quad():
    return make_quadrilateral(SQUARE_VERTICES)


@pytest.fixture
def trapezoid_nq():
    return NormalizedQuad(4.0, 1.0)


@pytest.fixture
def mdq_midpoint_conics():
    """The two midpoint-tangent ellipses of the mdq example, expanded from center form."""
    # 10(x-2/3)^2 - 10(x-2/3)(y-4/3) + 4(y-4/3)^2 = 5/3
    first = ConicCoeffs(10.0, -10.0, 4.0, 0.0, -4.0, 1.0)
    # 54(x-4/5)^2 - 54(x-4/5)(y-8/5) + 16(y-8/5)^2 = 27/5
    second = ConicCoeffs(54.0, -54.0, 16.0, 0.0, -8.0, 1.0)
    return first, second


@pytest.fixture
def trapezoid_midpoint_conic():
    # (x-5/4)^2 - 3(x-5/4)(y-1/2) + (25/4)(y-1/2)^2 = 1
    return ConicCoeffs(1.0, -3.0, 6.25, -1.0, -2.5, 0.25)


@pytest.fixture
def unit_circle():
    return ConicCoeffs(1.0, 0.0, 1.0, 0.0, 0.0, -1.0)


@pytest.fixture(autouse=True)
def _clear_tolerance_override(monkeypatch):
    monkeypatch.delenv("INELLIPSE_TOL", raising=False)

