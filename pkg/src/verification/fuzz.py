"""Randomized drivers that check the inscribed-ellipse results trial by trial.

Every driver runs `cfg.trials` trials in index order, each with its own
generator seeded from (cfg.seed, trial), and returns a FuzzReport. A report
with no violations means the checked property held on every trial.
"""

import logging
import time
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from geometry import conics
from geometry.affine import Point
from geometry.conics import Line
from geometry.inellipse import (
    area_profile,
    ellipse_from_q,
    maximize_area_parameter,
    midpoint_sides,
    midpoint_solutions,
    midpoint_tangent_ellipses,
    tangency_points,
)
from geometry.quadgeom import Classification, NormalizedQuad, classify, normalize
from utils.config import ALGEBRAIC_RTOL, FUZZ_TOL, MIN_GRID_SIZE, POLYGON_RTOL, POLYGON_SIDES
from utils.exceptions import InvalidConfigError, ParallelogramError
from verification.checks import inscribed_check, midpoint_count_profile, polygonal_area
from verification.sampling import (
    ALL_KINDS,
    cycle_kinds,
    random_affine,
    random_quad,
    sample_parameters,
    trial_rng,
)

logger = logging.getLogger(__name__)

EXPECTED_MIDPOINT_GROUPS = {
    Classification.MDQ_TYPE_1: [frozenset({1, 4}), frozenset({2, 3})],
    Classification.MDQ_TYPE_2: [frozenset({1, 2}), frozenset({3, 4})],
    Classification.TRAPEZOID: [frozenset({2, 4})],
    Classification.GENERIC: [],
}

_Q_RANGE = (0.01, 0.99)


@dataclass(frozen=True)
class FuzzConfig:
    seed: int = 0
    trials: int = 1000
    grid_size: int = 512
    tol: float = FUZZ_TOL

    def __post_init__(self):
        if not 0 <= self.seed < 2 ** 64:
            raise InvalidConfigError(f"seed must be a 64-bit unsigned integer, got {self.seed}")
        if self.trials < 1:
            raise InvalidConfigError(f"trials must be >= 1, got {self.trials}")
        if self.grid_size < MIN_GRID_SIZE:
            raise InvalidConfigError(f"grid_size must be >= {MIN_GRID_SIZE}, got {self.grid_size}")
        if not self.tol > 0:
            raise InvalidConfigError(f"tol must be positive, got {self.tol}")


@dataclass(frozen=True)
class Violation:
    trial: int
    vertices: Tuple[Point, ...]
    q: Optional[float]
    detail: str


@dataclass
class FuzzReport:
    target: str
    trials_run: int = 0
    violations: List[Violation] = field(default_factory=list)
    max_observed_midpoint_count: int = 0
    # class -> {observed value -> number of trials}
    histogram: Dict[str, Dict[int, int]] = field(default_factory=dict)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_frame(self) -> pd.DataFrame:
        rows = [{"trial": v.trial, "vertices": v.vertices, "q": v.q, "detail": v.detail}
                for v in self.violations]
        return pd.DataFrame(rows, columns=["trial", "vertices", "q", "detail"])

    def histogram_frame(self) -> pd.DataFrame:
        rows = [{"class": kind, "value": value, "trials": n}
                for kind, counts in self.histogram.items() for value, n in counts.items()]
        return pd.DataFrame(rows, columns=["class", "value", "trials"])

    def to_dict(self, include_elapsed: bool = True) -> dict:
        doc = {
            "target": self.target,
            "trials_run": self.trials_run,
            "max_observed_midpoint_count": self.max_observed_midpoint_count,
            "histogram": {kind: {str(k): n for k, n in counts.items()}
                          for kind, counts in self.histogram.items()},
            "violations": [
                {"trial": v.trial, "vertices": [list(p) for p in v.vertices], "q": v.q, "detail": v.detail}
                for v in self.violations
            ],
        }
        if include_elapsed:
            doc["elapsed"] = self.elapsed
        return doc


class _Trial:
    """Per-trial handle passed to a driver body."""

    def __init__(self, index: int, rng: np.random.Generator, report: FuzzReport,
                 tally: Dict[str, Counter]):
        self.index = index
        self.rng = rng
        self._report = report
        self._tally = tally

    def observe(self, kind: Classification, value: int) -> None:
        self._tally[kind.value][int(value)] += 1

    def fail(self, vertices, q: Optional[float], detail: str) -> None:
        logger.warning(f"Trial {self.index}: {detail}")
        self._report.violations.append(Violation(self.index, tuple(vertices), q, detail))


def _run(target: str, cfg: FuzzConfig, body: Callable[[_Trial], None]) -> FuzzReport:
    report = FuzzReport(target)
    tally: Dict[str, Counter] = defaultdict(Counter)
    start = time.perf_counter()
    for index in range(cfg.trials):
        body(_Trial(index, trial_rng(cfg.seed, index), report, tally))
        report.trials_run += 1
    report.violations.sort(key=lambda v: v.trial)
    report.histogram = {kind: dict(sorted(counts.items())) for kind, counts in sorted(tally.items())}
    report.elapsed = time.perf_counter() - start
    logger.info(f"fuzz {target}: {report.trials_run} trials, {len(report.violations)} violations "
                f"in {report.elapsed:.2f}s")
    return report


def fuzz_theorem_t1(cfg: FuzzConfig, kinds: Optional[Sequence[Classification]] = None) -> FuzzReport:
    """No inscribed ellipse is tangent at the midpoints of three or more sides."""
    max_count = 0

    def body(trial: _Trial):
        nonlocal max_count
        kind = cycle_kinds(kinds, trial.index)
        Q = random_quad(trial.rng, kind)
        try:
            nq = normalize(Q).normalized
        except ParallelogramError:
            logger.warning(f"Trial {trial.index}: sampled {kind.value} normalized as a parallelogram, skipped")
            return
        q, counts = midpoint_count_profile(nq, cfg.grid_size, cfg.tol)
        k = int(np.argmax(counts))
        trial.observe(kind, counts[k])
        max_count = max(max_count, int(counts[k]))
        if counts[k] >= 3:
            trial.fail(Q.vertices, float(q[k]), f"{counts[k]} midpoint tangencies for {kind.value}")

    report = _run("t1", cfg, body)
    report.max_observed_midpoint_count = max_count
    return report


def fuzz_lemma_counts(cfg: FuzzConfig, kinds: Optional[Sequence[Classification]] = None) -> FuzzReport:
    """Exact number of inscribed ellipses tangent at two side midpoints, per class."""
    max_count = 0

    def body(trial: _Trial):
        nonlocal max_count
        kind = cycle_kinds(kinds, trial.index)
        Q = random_quad(trial.rng, kind)
        observed_kind = classify(Q)
        if observed_kind is not kind:
            trial.fail(Q.vertices, None, f"sampled {kind.value} but classified {observed_kind.value}")
            return

        ellipses = midpoint_tangent_ellipses(Q)
        found = sorted((e.midpoint_sides for e in ellipses if len(e.midpoint_sides) >= 2), key=sorted)
        nq = normalize(Q).normalized
        recounted = {midpoint_sides(nq, q, cfg.tol) for q in midpoint_solutions(nq).as_tuple()}
        recounted = sorted((g for g in recounted if len(g) >= 2), key=sorted)
        expected = EXPECTED_MIDPOINT_GROUPS[kind]

        trial.observe(kind, len(found))
        max_count = max([max_count] + [len(e.midpoint_sides) for e in ellipses])
        if found != expected or recounted != expected:
            trial.fail(Q.vertices, None,
                       f"{kind.value}: expected {[sorted(g) for g in expected]}, "
                       f"got {[sorted(g) for g in found]}, recount {[sorted(g) for g in recounted]}")
        for e in ellipses:
            if kind is Classification.TRAPEZOID and len(e.midpoint_sides) == 2 and abs(e.q - 0.5) > cfg.tol:
                trial.fail(Q.vertices, e.q, "trapezoid midpoint-tangent ellipse not at q = 1/2")
            if not inscribed_check(e.conic, Q):
                trial.fail(Q.vertices, e.q, f"ellipse for sides {sorted(e.midpoint_sides)} is not inscribed")

    report = _run("counts", cfg, body)
    report.max_observed_midpoint_count = max_count
    return report


def fuzz_affine_invariance(cfg: FuzzConfig, kinds: Optional[Sequence[Classification]] = None) -> FuzzReport:
    """Classification is unchanged by affine maps, orientation-reversing ones included."""

    def body(trial: _Trial):
        kind = cycle_kinds(kinds, trial.index, default=ALL_KINDS)
        Q = random_quad(trial.rng, kind)
        image = Q.transformed(random_affine(trial.rng, allow_reflection=True))
        before, after = classify(Q), classify(image)
        trial.observe(kind, int(before is kind and after is kind))
        if before is not kind or after is not before:
            trial.fail(Q.vertices, None,
                       f"sampled {kind.value}, classified {before.value}, image classified {after.value}")

    return _run("affine", cfg, body)


def fuzz_area_law(cfg: FuzzConfig) -> FuzzReport:
    """Trapezoid area law, its maximizer at q = 1/2, and polygonal agreement with the area formula."""

    def body(trial: _Trial):
        rng = trial.rng
        nq = sample_parameters(rng, Classification.TRAPEZOID)
        vertices = nq.quadrilateral().vertices
        q = float(rng.uniform(*_Q_RANGE))
        expected = nq.s / 4 * q * (1 - q)
        observed = float(area_profile(nq, q))
        passed = True
        if abs(observed - expected) > ALGEBRAIC_RTOL * expected:
            trial.fail(vertices, q, f"a^2 b^2 = {observed!r}, trapezoid law gives {expected!r}")
            passed = False
        q_star = maximize_area_parameter(nq)
        if abs(q_star - 0.5) > ALGEBRAIC_RTOL:
            trial.fail(vertices, q_star, f"numeric maximizer {q_star!r} is not 1/2")
            passed = False

        generic = sample_parameters(rng, Classification.GENERIC)
        q = float(rng.uniform(*_Q_RANGE))
        c = ellipse_from_q(generic, q)
        exact, polygon = conics.area(c), polygonal_area(c, POLYGON_SIDES)
        if polygon > exact or abs(polygon - exact) > POLYGON_RTOL * exact:
            trial.fail(generic.quadrilateral().vertices, q, f"polygonal area {polygon!r} vs {exact!r}")
            passed = False
        trial.observe(Classification.TRAPEZOID, int(passed))

    return _run("area", cfg, body)


def _family_failures(nq: NormalizedQuad, q: float, other_q: float) -> List[str]:
    c = ellipse_from_q(nq, q)
    if not conics.is_real_ellipse(c):
        return ["not a real ellipse"]
    Q = nq.quadrilateral()
    reach = ALGEBRAIC_RTOL * nq.diameter()
    failures = []
    for j, ((p, r), expected) in enumerate(zip(Q.sides(), tangency_points(nq, q).as_tuple()), start=1):
        result = conics.line_tangency(c, Line.through(p, r))
        if not result.is_tangent:
            failures.append(f"side {j} {result.status.value}, residual {result.residual:.3e}")
            continue
        if np.hypot(result.point[0] - expected[0], result.point[1] - expected[1]) > reach:
            failures.append(f"side {j} tangency {result.point} != closed form {expected}")
    if not failures and not inscribed_check(c, Q):
        failures.append("not inscribed")
    if c.is_close(ellipse_from_q(nq, other_q)):
        failures.append(f"q={q!r} and q={other_q!r} give the same conic")
    return failures


def fuzz_family(cfg: FuzzConfig, kinds: Optional[Sequence[Classification]] = None) -> FuzzReport:
    """Every family member is a real ellipse tangent to all four sides at the closed-form points."""

    def body(trial: _Trial):
        kind = cycle_kinds(kinds, trial.index)
        nq = sample_parameters(trial.rng, kind)
        q, other_q = (float(x) for x in trial.rng.uniform(*_Q_RANGE, size=2))
        if abs(q - other_q) < 1e-3:
            other_q = q + 0.01 if q < 0.5 else q - 0.01
        failures = _family_failures(nq, q, other_q)
        trial.observe(kind, int(not failures))
        for detail in failures:
            trial.fail(nq.quadrilateral().vertices, q, detail)

    return _run("family", cfg, body)


FUZZ_TARGETS = {
    "t1": fuzz_theorem_t1,
    "counts": fuzz_lemma_counts,
    "affine": fuzz_affine_invariance,
    "area": fuzz_area_law,
    "family": fuzz_family,
}


def run_target(target: str, cfg: FuzzConfig, kinds: Optional[Sequence[Classification]] = None) -> FuzzReport:
    if target not in FUZZ_TARGETS:
        raise InvalidConfigError(f"Unknown fuzz target {target!r}; choose from {sorted(FUZZ_TARGETS)}")
    driver = FUZZ_TARGETS[target]
    if not kinds:
        return driver(cfg)
    if target == "area":
        raise InvalidConfigError("The area target samples trapezoids only and takes no --class")
    if Classification.PARALLELOGRAM in kinds and target != "affine":
        raise InvalidConfigError(f"fuzz {target} excludes parallelograms")
    return driver(cfg, kinds)
