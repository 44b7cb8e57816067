import logging
import math
from fractions import Fraction

import sympy

from scripts.algebraic.algebraic_numbers import as_algebraic, weil_height
from scripts.common.errors import Inconclusive
from scripts.common.intervals import lower, upper, working_precision
from scripts.common.verdict import Verdict
from scripts.config.settings import (
    INDEPENDENCE_DENOMINATOR_CEILING,
    PRECISION_BITS,
    WITNESS_EXPONENT_CEILING,
    precision_ladder,
)

# -----------------------
# Logging setup
# -----------------------
logger = logging.getLogger(__name__)


def simplest_between(low, high):
    """The fraction of least denominator in the closed interval [low, high], 0 < low <= high."""
    floor = math.floor(low)
    if low == floor:
        return Fraction(floor)
    if floor + 1 <= high:
        return Fraction(floor + 1)
    return floor + 1 / simplest_between(1 / (high - floor), 1 / (low - floor))


def _exponent_vector(q):
    vector = dict(sympy.factorint(q.numerator))
    for p, e in sympy.factorint(q.denominator).items():
        vector[p] = vector.get(p, 0) - e
    return {int(p): int(e) for p, e in vector.items() if p != -1 and e}


def _rational_verdict(x, y, ceiling):
    qx, qy = x.rational_value(), y.rational_value()
    vx, vy = _exponent_vector(abs(qx)), _exponent_vector(abs(qy))
    if set(vx) != set(vy):
        return Verdict(True, detail="prime supports differ", certified_to=ceiling)
    first = min(vx)
    ratio = Fraction(vx[first], vy[first])
    if any(Fraction(vx[p], vy[p]) != ratio for p in vx):
        return Verdict(True, detail="exponent vectors are not proportional", certified_to=ceiling)
    # q / p = v_x / v_y from |x|^p = |y|^q
    p, q = ratio.denominator, ratio.numerator
    if qx**p != qy**q:
        p, q = 2 * p, 2 * q
    return Verdict(False, detail=f"{qx}^{p} = {qy}^{q}", witness=(p, q))


def _verify_power_relation(x, y, p, q):
    """Exponents (p', q') with x^p' = y^q' exactly, or None."""
    left, right = x.power(p), y.power(q)
    if left == right:
        return p, q
    if left == right.negate():
        return 2 * p, 2 * q
    return None


# -----------------------
# Multiplicative independence
# -----------------------
def mult_independent(x, y, ceiling=INDEPENDENCE_DENOMINATOR_CEILING):
    """Decide whether x^p = y^q has a solution (p, q) != (0, 0).

    A relation forces q/p = h0(x)/h0(y). The simplest rational inside the
    certified height ratio is tried exactly by resultant arithmetic; a Pass
    means every rational in the final ratio interval has denominator above
    `ceiling`.
    """
    x, y = as_algebraic(x), as_algebraic(y)
    logger.info(f"🚀 Testing multiplicative independence of {x!r} and {y!r}")
    if x.is_rational and y.is_rational:
        verdict = _rational_verdict(x, y, ceiling)
        logger.info(f"✅ Independence verdict: {verdict.detail}")
        return verdict

    rejected = set()
    for bits in precision_ladder(PRECISION_BITS):
        with working_precision(bits):
            ratio = weil_height(x, bits) / weil_height(y, bits)
        candidate = simplest_between(lower(ratio), upper(ratio))
        if candidate.denominator > ceiling:
            logger.info(f"✅ Height ratio excludes denominators up to {ceiling} at {bits} bits")
            return Verdict(
                True,
                detail=f"no relation with exponent up to {ceiling}",
                certified_to=ceiling,
                extra={"height_ratio": [str(lower(ratio)), str(upper(ratio))]},
            )
        p, q = candidate.denominator, candidate.numerator
        if candidate in rejected:
            continue
        if max(p, q) > WITNESS_EXPONENT_CEILING:
            logger.warning(f"⚠️ Candidate exponents ({p}, {q}) above the exact ceiling, refining")
            continue
        witness = _verify_power_relation(x, y, p, q)
        if witness is not None:
            logger.info(f"ℹ️ Relation found: x^{witness[0]} = y^{witness[1]}")
            return Verdict(False, detail=f"x^{witness[0]} = y^{witness[1]}", witness=witness)
        rejected.add(candidate)
    raise Inconclusive("height ratio still admits small denominators at the precision ceiling", stage="independence")
