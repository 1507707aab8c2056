"""Random quadrilaterals of a prescribed class.

Parameters (s, t) are drawn from a compact part of the admissible region with
a margin from every degenerate locus (s=1, t=1, s=t, s+t=2), then pushed
through a random affine map of bounded condition number. Labels are carried
through the map, so the sampled class is the class of the result.
"""

import logging
from typing import Optional, Sequence

import numpy as np

from geometry.affine import AffineMap
from geometry.quadgeom import Classification, NormalizedQuad, Quadrilateral
from utils.config import MAX_CONDITION, SAMPLING_MARGIN, SAMPLING_RANGE

logger = logging.getLogger(__name__)

NON_PARALLELOGRAM_KINDS = (
    Classification.GENERIC,
    Classification.MDQ_TYPE_1,
    Classification.MDQ_TYPE_2,
    Classification.TRAPEZOID,
)
ALL_KINDS = NON_PARALLELOGRAM_KINDS + (Classification.PARALLELOGRAM,)

_UNIT_SQUARE = ((0.0, 0.0), (0.0, 1.0), (1.0, 1.0), (1.0, 0.0))


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Generator for one fuzz trial; independent of the order trials run in."""
    return np.random.default_rng([seed, trial])


def _away_from_one(rng: np.random.Generator, lo: float, hi: float) -> float:
    while True:
        s = rng.uniform(lo, hi)
        if abs(s - 1) > SAMPLING_MARGIN:
            return float(s)


def sample_parameters(rng: np.random.Generator, kind: Classification) -> NormalizedQuad:
    """(s, t) for a normalized quadrilateral of the given non-parallelogram class."""
    lo, hi = SAMPLING_RANGE
    m = SAMPLING_MARGIN
    if kind is Classification.GENERIC:
        while True:
            s, t = rng.uniform(lo, hi, size=2)
            if (s + t > 1 + m and abs(s - 1) > m and abs(t - 1) > m
                    and abs(s - t) > m and abs(s + t - 2) > m):
                return NormalizedQuad(s, t)
    if kind is Classification.MDQ_TYPE_1:
        s = _away_from_one(rng, 0.5 + m, hi)
        return NormalizedQuad(s, s)
    if kind is Classification.MDQ_TYPE_2:
        s = _away_from_one(rng, 0.1, 1.9)
        return NormalizedQuad(s, 2.0 - s)
    if kind is Classification.TRAPEZOID:
        return NormalizedQuad(_away_from_one(rng, lo, hi), 1.0)
    raise ValueError(f"No normalized form for {kind.value}")


def _rotation(theta: float) -> np.ndarray:
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, -s], [s, c]])


def random_affine(rng: np.random.Generator, max_condition: float = MAX_CONDITION,
                  allow_reflection: bool = False) -> AffineMap:
    """Rotation * diag(major, minor) * rotation plus a shift, condition number <= max_condition."""
    major = rng.uniform(0.5, 5.0)
    minor = major / rng.uniform(1.0, max_condition)
    theta, phi = rng.uniform(0.0, 2 * np.pi, size=2)
    linear = _rotation(theta) @ np.diag([major, minor]) @ _rotation(phi)
    if allow_reflection and rng.random() < 0.5:
        linear = linear @ np.diag([1.0, -1.0])
    shift = rng.uniform(-10.0, 10.0, size=2)
    return AffineMap(linear, shift)


def random_quad(rng: np.random.Generator, kind: Classification,
                allow_reflection: bool = False,
                transform: Optional[AffineMap] = None) -> Quadrilateral:
    if kind is Classification.PARALLELOGRAM:
        base = Quadrilateral(_UNIT_SQUARE)
    else:
        base = sample_parameters(rng, kind).quadrilateral()
    if transform is None:
        transform = random_affine(rng, allow_reflection=allow_reflection)
    return base.transformed(transform)


def cycle_kinds(kinds: Optional[Sequence[Classification]], trial: int,
                default: Sequence[Classification] = NON_PARALLELOGRAM_KINDS) -> Classification:
    kinds = tuple(kinds) if kinds else tuple(default)
    return kinds[trial % len(kinds)]
