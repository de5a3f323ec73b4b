"""Constants for skewpbw."""

from enum import Enum

# Base component constants
NAME = "SkewPBW"
DOMAIN = "skewpbw"
VERSION = "0.1.0"
ISSUE_URL = "https://github.com/skewpbw/skewpbw/issues"

# DSL
FILE_EXTENSION = ".spbw"
STDIN_NAME = "-"

# Configuration and options
CONF_PROBE_BOUND = "probe_bound"
CONF_DEGREE_BOUND = "degree_bound"
CONF_HILBERT_N = "N"
CONF_GK_M = "M"
CONF_CENTER_DEGREE = "degree"
CONF_JOBS = "jobs"
CONF_JSON = "json"
CONF_SEED = "seed"
CONF_SAMPLES = "samples"

# Defaults
DEFAULT_PROBE_BOUND = 6
DEFAULT_HILBERT_N = 5
DEFAULT_GK_M = 50
DEFAULT_CENTER_DEGREE = 2
DEFAULT_JOBS = 1
DEFAULT_SEED = 0
DEFAULT_VALIDATE_SAMPLES = 20
GK_MIN_M = 4

# Exit codes
EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3


class Side(str, Enum):
    """Module side; fixes the matrix convention for maps."""

    LEFT = "left"  # row vectors, v -> v * M
    RIGHT = "right"  # column vectors, v -> M * v

    def flipped(self) -> "Side":
        return Side.RIGHT if self is Side.LEFT else Side.LEFT


def default_degree_bound(*degrees: int) -> int:
    """Completion bound used when none is given: 2 * (max input degree) + 4."""
    top = max((d for d in degrees if d >= 0), default=0)
    return 2 * top + 4


CANCELLATIVE_HINT = (
    "center is K·1 up to the probed degree; if that holds in every degree "
    "then Z(A) = K and A is universally cancellative"
)

STARTUP_MESSAGE = f"""
-------------------------------------------------------------------
{NAME}
Version: {VERSION}
Exact arithmetic and verification for skew PBW extensions.
If you have any issues with this you need to open an issue here:
{ISSUE_URL}
-------------------------------------------------------------------
"""
