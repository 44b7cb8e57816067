import logging
import os
from fractions import Fraction

# -----------------------
# Logging setup
# -----------------------
logger = logging.getLogger(__name__)

# -----------------------
# Precision policy
# -----------------------
PRECISION_BITS = int(os.environ.get("PILLAI_PRECISION_BITS", "128"))
PRECISION_CEILING_BITS = int(os.environ.get("PILLAI_PRECISION_CEILING_BITS", "2048"))

# decimal digits kept when a certified interval is rounded to an exact rational
ROUND_DIGITS = 20

# -----------------------
# Recurrence ceilings
# -----------------------
MAX_ORDER = int(os.environ.get("PILLAI_MAX_ORDER", "8"))
MAX_FIELD_DEGREE = int(os.environ.get("PILLAI_MAX_FIELD_DEGREE", "24"))
GROWTH_EPSILON = Fraction(1, 100)
CHECK_CEILING = 300
THRESHOLD_CEILING = 10_000

# -----------------------
# Algebraic numbers
# -----------------------
INDEPENDENCE_DENOMINATOR_CEILING = 10**6
# exponents above this are not verified symbolically
WITNESS_EXPONENT_CEILING = 64

# -----------------------
# Bound chain
# -----------------------
FALLBACK_FLOOR = Fraction(648, 1000)

# -----------------------
# Search
# -----------------------
BOX_CELL_CEILING = int(os.environ.get("PILLAI_BOX_CELL_CEILING", str(10**6)))
DEFAULT_LOW = 2


def precision_ladder(start=None, ceiling=None):
    """Working precisions tried in order: start, 2*start, ... up to the ceiling."""
    bits = start or PRECISION_BITS
    top = ceiling or PRECISION_CEILING_BITS
    while bits <= top:
        yield bits
        bits *= 2
