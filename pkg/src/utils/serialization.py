"""Result documents: JSON and plain-text renderings of command results.

JSON numbers are written with Python's shortest round-trip float repr, so a
document read back with load_result_document reproduces every conic exactly.
"""

import json
import logging

import pandas as pd
from tabulate import tabulate

from geometry.conics import ConicCoeffs
from utils.exceptions import MalformedInputError, NotAnEllipseError

logger = logging.getLogger(__name__)

COEFFICIENT_NAMES = ["A", "B", "C", "D", "E", "F"]


def _pair(p):
    return [float(p[0]), float(p[1])]


def midpoint_flag(sides):
    """'midpoint-tangent (S2,S4)' style label, or None when no side midpoint is touched."""
    if not sides:
        return None
    return "midpoint-tangent (" + ",".join(f"S{j}" for j in sorted(sides)) + ")"


def ellipse_entry(ellipse):
    """One ellipse of a result document; accepts any result with q, conic, area, sides and points."""
    return {
        "q": float(ellipse.q),
        "coefficients": [float(x) for x in ellipse.conic.canonical().as_array()],
        "tangency_points": [_pair(p) for p in ellipse.tangency_points.as_tuple()],
        "midpoint_sides": sorted(int(j) for j in ellipse.midpoint_sides),
        "area": float(ellipse.area),
    }


def maximal_entry(ellipse):
    entry = {
        "q": float(ellipse.q),
        "coefficients": [float(x) for x in ellipse.conic.canonical().as_array()],
        "area": float(ellipse.area),
        "midpoint_sides": sorted(int(j) for j in ellipse.midpoint_sides),
    }
    flag = midpoint_flag(ellipse.midpoint_sides)
    if flag:
        entry["flag"] = flag
    return entry


def result_document(quad, classification, normalized=None, ellipses=None, maximal=None):
    """Assemble a ResultDocument; `quad` is the labeling that side indices refer to."""
    doc = {
        "vertices": [_pair(v) for v in quad.vertices],
        "classification": classification.value,
    }
    if normalized is not None:
        doc["normalized"] = {"s": float(normalized.s), "t": float(normalized.t)}
    if ellipses is not None:
        doc["ellipses"] = [ellipse_entry(e) for e in ellipses]
    if maximal is not None:
        doc["maximal"] = maximal_entry(maximal)
    return doc


def dumps_json(doc):
    return json.dumps(doc, indent=2) + "\n"


def _coefficients(raw):
    if not isinstance(raw, list) or len(raw) != 6:
        raise MalformedInputError(f"Expected 6 conic coefficients, got {raw!r}")
    try:
        return ConicCoeffs.from_sequence([float(x) for x in raw])
    except (TypeError, ValueError, NotAnEllipseError) as e:
        raise MalformedInputError(f"Invalid conic coefficients {raw!r}: {e}") from e


def load_result_document(text):
    """Read a JSON ResultDocument back; ellipse and maximal coefficients become ConicCoeffs."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"Result document is not valid JSON: {e}") from e
    if not isinstance(doc, dict) or "classification" not in doc:
        raise MalformedInputError("Result document must be an object with a 'classification' key")
    for entry in doc.get("ellipses", []):
        entry["coefficients"] = _coefficients(entry.get("coefficients"))
    if "maximal" in doc:
        doc["maximal"]["coefficients"] = _coefficients(doc["maximal"].get("coefficients"))
    return doc


def _ellipse_frame(entries):
    rows = []
    for e in entries:
        row = {"q": e["q"], "midpoint sides": ",".join(map(str, e["midpoint_sides"])) or "-",
               "area": e["area"]}
        row.update(dict(zip(COEFFICIENT_NAMES, e["coefficients"])))
        rows.append(row)
    return pd.DataFrame(rows)


def render_text(doc):
    """Markdown-style tables for a ResultDocument."""
    out = [f"Classification: {doc['classification']}"]
    if "normalized" in doc:
        out.append(f"Normalized: s = {doc['normalized']['s']!r}, t = {doc['normalized']['t']!r}")
    out.append("")
    vertices = pd.DataFrame(doc["vertices"], columns=["x", "y"], index=[f"A{i}" for i in range(1, 5)])
    out.append(tabulate(vertices, headers="keys", tablefmt="pipe"))

    if "ellipses" in doc:
        out.append("")
        out.append(f"# Ellipses ({len(doc['ellipses'])})")
        if doc["ellipses"]:
            out.append(tabulate(_ellipse_frame(doc["ellipses"]), headers="keys", tablefmt="pipe",
                                showindex=False, floatfmt=".12g"))
            points = [[f"{e['q']:.12g}"] + [f"({x:.12g}, {y:.12g})" for x, y in e["tangency_points"]]
                      for e in doc["ellipses"]]
            out.append("")
            out.append(tabulate(points, headers=["q", "P1", "P2", "P3", "P4"], tablefmt="pipe"))

    if "maximal" in doc:
        m = doc["maximal"]
        out.append("")
        out.append("# Maximal-area ellipse" + (f" [{m['flag']}]" if "flag" in m else ""))
        out.append(tabulate(_ellipse_frame([m]), headers="keys", tablefmt="pipe",
                            showindex=False, floatfmt=".12g"))
    return "\n".join(out) + "\n"


def render_fuzz_text(report):
    summary = [
        ["target", report.target],
        ["trials run", report.trials_run],
        ["violations", len(report.violations)],
        ["max midpoint count", report.max_observed_midpoint_count],
        ["elapsed (s)", f"{report.elapsed:.3f}"],
    ]
    out = [tabulate(summary, tablefmt="pipe")]
    histogram = report.histogram_frame()
    if not histogram.empty:
        out += ["", "# Histogram", tabulate(histogram, headers="keys", tablefmt="pipe", showindex=False)]
    if report.violations:
        out += ["", "# Violations",
                tabulate(report.to_frame(), headers="keys", tablefmt="pipe", showindex=False)]
    out.append("")
    out.append("PASS" if report.ok else "FAIL")
    return "\n".join(out) + "\n"
