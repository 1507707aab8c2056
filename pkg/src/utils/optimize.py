import logging
import math

logger = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5) - 1) / 2  # 1 / phi
INV_PHI_SQUARE = (3 - math.sqrt(5)) / 2  # 1 / phi^2


def golden_section_max(f, a, b, tol=1e-5):
    """Shrink [a, b] around the maximum of a unimodal f until it is at most tol wide.

    Each step drops the golden fraction of the bracket on the side of the
    lower probe and reuses the surviving probe, so f is evaluated once per
    step.
    """
    lo, hi = min(a, b), max(a, b)
    inner = lo + INV_PHI_SQUARE * (hi - lo)
    outer = lo + INV_PHI * (hi - lo)
    f_inner, f_outer = f(inner), f(outer)
    while hi - lo > tol:
        if f_inner > f_outer:
            hi, outer, f_outer = outer, inner, f_inner
            inner = lo + INV_PHI_SQUARE * (hi - lo)
            f_inner = f(inner)
        else:
            lo, inner, f_inner = inner, outer, f_outer
            outer = lo + INV_PHI * (hi - lo)
            f_outer = f(outer)
        if not lo < inner < outer < hi:
            logger.debug(f"Golden section stalled at [{lo}, {hi}]")
            break
    return lo, hi


def bisect_sign_change(g, lo, hi, width):
    """
    Bisection for a + to - sign change of g on [lo, hi].

    Returns the final bracket, or None when g does not change
    sign across the given interval.
    """
    g_lo, g_hi = g(lo), g(hi)
    if not (g_lo > 0 >= g_hi):
        logger.debug(f"No sign change on [{lo}, {hi}]: g={g_lo}, {g_hi}")
        return None
    while hi - lo > width:
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:
            break
        if g(mid) > 0:
            lo = mid
        else:
            hi = mid
    return lo, hi
