"""Standalone SVG figures of a quadrilateral and some of its inscribed ellipses."""

import logging
import math

from lxml import etree

from geometry import conics
from geometry.quadgeom import side_midpoints

logger = logging.getLogger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"
MARGIN = 0.05
DOT_RADIUS = 0.01
STROKE_WIDTH = 0.003

_STYLE = {
    "quad": {"fill": "none", "stroke": "black"},
    "ellipse": {"fill": "none", "stroke": "#1f77b4"},
    "tangency": {"fill": "#d62728", "stroke": "none"},
    "midpoint": {"fill": "none", "stroke": "black"},
}


def _fmt(x):
    return repr(float(x))


def _element(parent, tag, css_class=None, **attrs):
    attrib = {"class": css_class} if css_class else {}
    if css_class in _STYLE:
        attrib.update(_STYLE[css_class])
    attrib.update({k.replace("_", "-"): v for k, v in attrs.items()})
    return etree.SubElement(parent, f"{{{SVG_NS}}}{tag}", attrib)


def _bounding_box(quad, shapes):
    xs = [v[0] for v in quad.vertices]
    ys = [v[1] for v in quad.vertices]
    for g in shapes:
        x0, y0, x1, y1 = g.bounding_box()
        xs += [x0, x1]
        ys += [y0, y1]
    return min(xs), min(ys), max(xs), max(ys)


def _marked_points(ellipse, mark_all_points):
    points = ellipse.tangency_points.as_tuple()
    if mark_all_points:
        return list(points)
    return [points[j - 1] for j in sorted(ellipse.midpoint_sides)]


def render_svg(quad, ellipses, mark_all_points=True, title=None):
    """SVG 1.1 document for `quad` and `ellipses`.

    Each ellipse result needs `conic`, `tangency_points` and `midpoint_sides`.
    With mark_all_points off, only tangency points that are side midpoints
    are drawn. Side midpoints are always drawn as hollow dots.
    """
    shapes = [conics.geometry(e.conic) for e in ellipses]
    xmin, ymin, xmax, ymax = _bounding_box(quad, shapes)
    width, height = xmax - xmin, ymax - ymin
    pad = MARGIN * max(width, height)
    xmin, ymin, xmax, ymax = xmin - pad, ymin - pad, xmax + pad, ymax + pad
    diagonal = math.hypot(xmax - xmin, ymax - ymin)
    radius = _fmt(DOT_RADIUS * diagonal)
    stroke = _fmt(STROKE_WIDTH * diagonal)

    root = etree.Element(f"{{{SVG_NS}}}svg", nsmap={None: SVG_NS}, version="1.1")
    # y is flipped by the group below, so the box spans [-ymax, -ymin]
    root.set("viewBox", " ".join(_fmt(v) for v in (xmin, -ymax, xmax - xmin, ymax - ymin)))
    if title:
        etree.SubElement(root, f"{{{SVG_NS}}}title").text = title
    figure = _element(root, "g", transform="scale(1,-1)", stroke_width=stroke)

    _element(figure, "polygon", "quad",
             points=" ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in quad.vertices))
    for g in shapes:
        cx, cy = g.center
        _element(figure, "ellipse", "ellipse", cx=_fmt(cx), cy=_fmt(cy), rx=_fmt(g.a), ry=_fmt(g.b),
                 transform=f"rotate({_fmt(math.degrees(g.angle))} {_fmt(cx)} {_fmt(cy)})")
    for e in ellipses:
        for x, y in _marked_points(e, mark_all_points):
            _element(figure, "circle", "tangency", cx=_fmt(x), cy=_fmt(y), r=radius)
    for x, y in side_midpoints(quad):
        _element(figure, "circle", "midpoint", cx=_fmt(x), cy=_fmt(y), r=radius)

    logger.debug(f"SVG with {len(shapes)} ellipses, viewBox {root.get('viewBox')}")
    return etree.tostring(root, xml_declaration=True, encoding="UTF-8", pretty_print=True).decode("utf-8")
