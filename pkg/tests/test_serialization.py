import json

import pytest

from geometry.inellipse import max_area_ellipse, midpoint_tangent_ellipses
from geometry.quadgeom import classify, normalize
from utils.exceptions import MalformedInputError
from utils.serialization import (
    dumps_json,
    load_result_document,
    midpoint_flag,
    render_fuzz_text,
    render_text,
    result_document,
)
from verification.fuzz import FuzzReport


def _document(quad):
    norm = normalize(quad)
    return result_document(norm.quad, classify(quad), norm.normalized,
                           ellipses=midpoint_tangent_ellipses(quad), maximal=max_area_ellipse(quad))


def test_midpoint_flag():
    assert midpoint_flag(frozenset({4, 2})) == "midpoint-tangent (S2,S4)"
    assert midpoint_flag(frozenset()) is None


def test_result_document_fields(trapezoid_quad):
    doc = _document(trapezoid_quad)
    assert doc["classification"] == "trapezoid"
    assert doc["normalized"] == pytest.approx({"s": 4.0, "t": 1.0})
    (ellipse,) = doc["ellipses"]
    assert ellipse["midpoint_sides"] == [2, 4]
    assert len(ellipse["coefficients"]) == 6
    assert len(ellipse["tangency_points"]) == 4
    assert doc["maximal"]["flag"] == "midpoint-tangent (S2,S4)"


def test_coefficients_are_canonical(mdq_quad):
    for entry in _document(mdq_quad)["ellipses"]:
        coeffs = entry["coefficients"]
        assert sum(c * c for c in coeffs) == pytest.approx(1.0)
        assert coeffs[0] > 0


def test_json_round_trip_is_lossless(mdq_quad):
    doc = _document(mdq_quad)
    loaded = load_result_document(dumps_json(doc))
    for entry, original in zip(loaded["ellipses"], doc["ellipses"]):
        assert list(entry["coefficients"].as_array()) == original["coefficients"]
    assert list(loaded["maximal"]["coefficients"].as_array()) == doc["maximal"]["coefficients"]
    assert "flag" not in loaded["maximal"]


@pytest.mark.parametrize("text", [
    "{",
    "[]",
    json.dumps({"classification": "generic", "ellipses": [{"coefficients": [1, 2, 3]}]}),
    json.dumps({"classification": "generic", "maximal": {"coefficients": [0, 0, 0, 1, 1, 1]}}),
])
def test_load_rejects_bad_documents(text):
    with pytest.raises(MalformedInputError):
        load_result_document(text)


def test_render_text(mdq_quad):
    text = render_text(_document(mdq_quad))
    assert text.startswith("Classification: mdq-type-1")
    assert "# Ellipses (2)" in text
    assert "# Maximal-area ellipse" in text
    assert "A1" in text and "A4" in text


def test_render_fuzz_text():
    text = render_fuzz_text(FuzzReport("counts", trials_run=3, histogram={"trapezoid": {1: 3}}))
    assert "# Histogram" in text
    assert text.rstrip().endswith("PASS")
