import math

import pytest

from utils.optimize import INV_PHI, bisect_sign_change, golden_section_max


def test_golden_section_brackets_the_maximum():
    a, b = golden_section_max(lambda x: -(x - 0.3) ** 2, 0.0, 1.0, 1e-6)
    assert b - a <= 1e-6
    assert a <= 0.3 <= b


def test_golden_section_accepts_reversed_interval():
    a, b = golden_section_max(lambda x: -(x - 0.7) ** 2, 1.0, 0.0, 1e-5)
    assert a <= 0.7 <= b


def test_golden_section_short_interval_returned_as_is():
    assert golden_section_max(lambda x: x, 0.2, 0.2 + 1e-9, 1e-6) == pytest.approx((0.2, 0.2 + 1e-9))


def test_golden_section_evaluates_once_per_step():
    calls = []

    def f(x):
        calls.append(x)
        return -(x - 0.41) ** 2

    a, b = golden_section_max(f, 0.0, 1.0, 1e-6)
    assert a <= 0.41 <= b
    # two initial probes, then one per shrink by 1/phi until the width is <= 1e-6
    assert len(calls) == 2 + math.ceil(math.log(1e-6) / math.log(INV_PHI))


def test_bisect_sign_change_narrows_to_width():
    lo, hi = bisect_sign_change(lambda x: 0.7 - x, 0.0, 1.0, 1e-12)
    assert hi - lo <= 1e-12
    assert lo <= 0.7 <= hi


def test_bisect_without_sign_change_returns_none():
    assert bisect_sign_change(lambda x: 1.0 + x, 0.0, 1.0, 1e-6) is None
    # a - to + change is not a maximum
    assert bisect_sign_change(lambda x: x - 0.5, 0.0, 1.0, 1e-6) is None
