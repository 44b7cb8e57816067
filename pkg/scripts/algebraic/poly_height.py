import logging

from mpmath import iv

from scripts.algebraic.algebraic_numbers import as_algebraic, weil_height
from scripts.common.intervals import round_up, working_precision
from scripts.config.settings import PRECISION_BITS

# -----------------------
# Logging setup
# -----------------------
logger = logging.getLogger(__name__)


def _trim(coefficients):
    coeffs = [as_algebraic(c) for c in coefficients]
    while len(coeffs) > 1 and coeffs[-1].is_zero:
        coeffs.pop()
    if all(c.is_zero for c in coeffs):
        raise ValueError("polynomial must be nonzero")
    return coeffs


def poly_ratio_height_bound(p, q, bits=None):
    """C with h0(p(n) / q(m)) <= C log max(n, m) for all n, m >= 2.

    `p` and `q` list algebraic (or rational) coefficients, low degree first.
    C = (sum h0(coefficients) + (deg p + deg q) log 2) / log 2 + deg p + deg q,
    rounded up to a rational.
    """
    p, q = _trim(p), _trim(q)
    degrees = (len(p) - 1) + (len(q) - 1)
    bits = bits or PRECISION_BITS
    with working_precision(bits):
        heights = iv.mpf(0)
        for c in p + q:
            heights += weil_height(c, bits)
        log2 = iv.ln(iv.mpf(2))
        bound = (heights + degrees * log2) / log2 + degrees
    result = round_up(bound)
    logger.info(f"ℹ️ Polynomial ratio height constant {float(result):.6g} (degrees {len(p) - 1}, {len(q) - 1})")
    return result
