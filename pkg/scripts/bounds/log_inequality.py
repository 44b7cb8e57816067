import logging
import math

from mpmath import iv

from scripts.common.intervals import certainly_gt, certainly_le, certainly_positive, to_interval, upper, working_precision
from scripts.config.settings import PRECISION_BITS

# -----------------------
# Logging setup
# -----------------------
logger = logging.getLogger(__name__)


def least_true(predicate, low):
    """Least integer m >= low with predicate(m), for a predicate that stays true once true."""
    if predicate(low):
        return low
    step = 1
    high = low + step
    while not predicate(high):
        low = high
        step *= 2
        high = low + step
    while high - low > 1:
        mid = (low + high) // 2
        if predicate(mid):
            high = mid
        else:
            low = mid
    return high


def solve_log_inequality(A, B, p, C, bits=None):
    """Least m* >= 2 with A m > B (log m)^p + C for every m >= m*.

    Past R = max(2, e^(p-1)) the derivative A - p B (log m)^(p-1) / m is
    increasing, so once it is positive the left side minus the right side only
    grows; the final crossing is located by doubling and bisection there.
    """
    bits = bits or PRECISION_BITS
    if p < 1:
        raise ValueError("exponent p must be a positive integer")
    with working_precision(bits):
        A, B, C = to_interval(A), to_interval(B), to_interval(C)
        if not certainly_positive(A):
            raise ValueError("A must be positive")
        if upper(abs(B)) == 0:
            return max(2, math.floor(upper(C / A)) + 1)

        def holds(m):
            return certainly_gt(A * m, B * iv.ln(iv.mpf(m)) ** p + C)

        def slope_positive(m):
            return certainly_positive(A - p * B * iv.ln(iv.mpf(m)) ** (p - 1) / m)

        tail = max(2, math.ceil(math.exp(p - 1)))
        increasing_from = least_true(slope_positive, tail)
        if not holds(increasing_from):
            result = least_true(holds, increasing_from)
        elif increasing_from > tail:
            previous = increasing_from - 1
            slope = A - p * B * iv.ln(iv.mpf(previous)) ** (p - 1) / previous
            if not certainly_le(slope, 0) or not holds(previous):
                result = increasing_from
            else:
                # decreasing on [tail, previous], so every m there holds as well
                result = _scan_down(holds, tail)
        else:
            result = _scan_down(holds, tail)
    logger.debug(f"solve_log_inequality(p={p}) -> {result}")
    return result


def _scan_down(holds, tail):
    for m in range(tail - 1, 1, -1):
        if not holds(m):
            return m + 1
    return 2


def exit_bound(A, B, p, C=0, bits=None):
    """Largest m that can still violate A m > B (log m)^p + C."""
    return solve_log_inequality(A, B, p, C, bits) - 1
