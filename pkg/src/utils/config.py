import logging
import os

from utils.exceptions import InvalidConfigError

logger = logging.getLogger(__name__)

# Tolerances
DEFAULT_TOL = 1e-9
TOL_ENV_VAR = "INELLIPSE_TOL"
ALGEBRAIC_RTOL = 1e-9
TANGENCY_TOL = 1e-9
ELLIPSE_TOL = 1e-12
FUZZ_TOL = 1e-7

# Maximal-area search
AREA_SCAN_SAMPLES = 1024
AREA_Q_WIDTH = 1e-12
GOLDEN_Q_WIDTH = 1e-6

# Oracles
POLYGON_SIDES = 10_000
POLYGON_RTOL = 1e-5
MIN_GRID_SIZE = 16
MIN_POLYGON_SIDES = 64

# Random quadrilateral sampling
SAMPLING_MARGIN = 0.05
MAX_CONDITION = 50.0
SAMPLING_RANGE = (0.1, 4.0)

DEFAULT_FAMILY_Q = (0.25, 0.5, 0.75)

# Exit codes returned by the command line interface
EXIT_OK = 0
EXIT_VIOLATION = 1


def default_tolerance():
    """Return the classification tolerance, honouring the INELLIPSE_TOL override."""
    raw = os.environ.get(TOL_ENV_VAR)
    if raw is None or raw.strip() == "":
        return DEFAULT_TOL
    try:
        value = float(raw)
    except ValueError as e:
        raise InvalidConfigError(f"{TOL_ENV_VAR} must be a number, got {raw!r}") from e
    if not value > 0:
        raise InvalidConfigError(f"{TOL_ENV_VAR} must be positive, got {raw!r}")
    logger.debug(f"Tolerance overridden from environment: {value}")
    return value
