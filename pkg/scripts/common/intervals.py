"""Certified interval helpers on top of mpmath.iv.

Every real quantity that depends on an algebraic root lives in an
``iv.mpf`` (or ``iv.mpc``) enclosure. Claims are made only through the
``certainly_*`` predicates, which treat an undecided comparison as false.
"""
import logging
import math
from contextlib import contextmanager
from fractions import Fraction

import sympy
from mpmath import iv, libmp

from scripts.common.errors import NonPositiveValue
from scripts.config.settings import ROUND_DIGITS

# -----------------------
# Logging setup
# -----------------------
logger = logging.getLogger(__name__)

IV_REAL = iv.mpf
IV_COMPLEX = iv.mpc


# -----------------------
# Precision control
# -----------------------
@contextmanager
def working_precision(bits):
    saved = iv.prec
    iv.prec = bits
    try:
        yield bits
    finally:
        iv.prec = saved


# -----------------------
# Conversion
# -----------------------
def to_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, sympy.Rational):
        return Fraction(int(x.p), int(x.q))
    raise TypeError(f"not an exact rational: {x!r}")


def to_interval(x):
    """Enclose an int, Fraction, sympy Rational or interval in an iv.mpf."""
    if isinstance(x, (IV_REAL, IV_COMPLEX)):
        return x
    if isinstance(x, int):
        return iv.mpf(x)
    q = to_fraction(x)
    if q.denominator == 1:
        return iv.mpf(q.numerator)
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def to_complex(x):
    if isinstance(x, IV_COMPLEX):
        return x
    return iv.mpc(to_interval(x), 0)


def hull(lo, hi):
    return iv.mpf([to_interval(lo), to_interval(hi)])


def rational_box(re_lo, re_hi, im_lo=0, im_hi=0):
    return iv.mpc(hull(re_lo, re_hi), hull(im_lo, im_hi))


def lower(x):
    """Exact lower endpoint of a real interval as a Fraction."""
    p, q = libmp.to_rational(to_interval(x)._mpi_[0])
    return Fraction(int(p), int(q))


def upper(x):
    p, q = libmp.to_rational(to_interval(x)._mpi_[1])
    return Fraction(int(p), int(q))


def width(x):
    return upper(x) - lower(x)


def midpoint(x):
    return (lower(x) + upper(x)) / 2


# -----------------------
# Outward rounding to short rationals
# -----------------------
def _decimal_scale(q, digits):
    """Power-of-ten exponent giving `digits` significant digits for q != 0."""
    num, den = abs(q.numerator), q.denominator
    magnitude = len(str(num)) - len(str(den))
    return digits - magnitude


def round_down(x, digits=ROUND_DIGITS):
    """Largest short decimal rational <= every point of x."""
    lo = lower(x) if not isinstance(x, Fraction) else x
    if lo == 0:
        return Fraction(0)
    places = _decimal_scale(lo, digits)
    scale = Fraction(10) ** places
    return Fraction(math.floor(lo * scale)) / scale


def round_up(x, digits=ROUND_DIGITS):
    hi = upper(x) if not isinstance(x, Fraction) else x
    if hi == 0:
        return Fraction(0)
    places = _decimal_scale(hi, digits)
    scale = Fraction(10) ** places
    return Fraction(math.ceil(hi * scale)) / scale


def fraction_str(q):
    q = to_fraction(q)
    return f"{q.numerator}/{q.denominator}"


def decimal_str(q, places=30):
    """Decimal rendering of a Fraction, truncated toward zero after `places` digits."""
    q = to_fraction(q)
    sign = "-" if q < 0 else ""
    scaled = abs(q.numerator) * 10**places // q.denominator
    digits = str(scaled).rjust(places + 1, "0")
    head, tail = digits[:-places], digits[-places:].rstrip("0")
    return f"{sign}{head}.{tail}" if tail else f"{sign}{head}"


def interval_json(x, digits=30):
    """[lo, hi] decimal strings, rounded outward; complex enclosures give re/im pairs."""
    if isinstance(x, IV_COMPLEX):
        return {"re": interval_json(x.real, digits), "im": interval_json(x.imag, digits)}
    lo, hi = round_down(x, digits), round_up(x, digits)
    return [decimal_str(lo, digits + 10), decimal_str(hi, digits + 10)]


# -----------------------
# Certified predicates
# -----------------------
def certainly_lt(a, b):
    return (to_interval(a) < to_interval(b)) is True


def certainly_le(a, b):
    return (to_interval(a) <= to_interval(b)) is True


def certainly_gt(a, b):
    return (to_interval(a) > to_interval(b)) is True


def certainly_ge(a, b):
    return (to_interval(a) >= to_interval(b)) is True


def certainly_positive(x):
    return certainly_gt(x, 0)


def contains_zero(z):
    z = to_complex(z)
    return 0 in z.real and 0 in z.imag


def certainly_nonzero(z):
    return not contains_zero(z)


def contains_integer(z, k):
    z = to_complex(z)
    return k in z.real and 0 in z.imag


def overlaps(a, b):
    a, b = to_interval(a), to_interval(b)
    return not (certainly_lt(a, b) or certainly_gt(a, b))


def boxes_overlap(z, w):
    z, w = to_complex(z), to_complex(w)
    return overlaps(z.real, w.real) and overlaps(z.imag, w.imag)


# -----------------------
# Arithmetic helpers
# -----------------------
def imax(*xs):
    xs = [to_interval(x) for x in xs]
    lo = max(xs, key=lower)
    hi = max(xs, key=upper)
    return hull(lo.a, hi.b)


def imin(*xs):
    xs = [to_interval(x) for x in xs]
    lo = min(xs, key=lower)
    hi = min(xs, key=upper)
    return hull(lo.a, hi.b)


def ilog(x):
    x = to_interval(x)
    if not certainly_positive(x):
        raise NonPositiveValue(f"logarithm of a non-positive enclosure {x}")
    return iv.ln(x)


def log_max_one(modulus):
    """log max{|z|, 1} for a non-negative modulus enclosure."""
    if certainly_le(modulus, 1):
        return iv.mpf(0)
    if certainly_gt(modulus, 1):
        return iv.ln(modulus)
    return hull(0, iv.ln(modulus.b))


def log_fraction(q):
    return ilog(to_interval(q))


def power_geometric_sup(exponent, ratio, start):
    """Upper enclosure of sup_{x >= start} x**exponent * ratio**x for 0 < ratio < 1.

    The continuous maximum sits at x* = exponent / -log(ratio); past it the
    function is decreasing.
    """
    ratio = to_interval(ratio)
    start = max(start, 1)
    if exponent <= 0:
        return iv.mpf(start) ** exponent * ratio**start
    peak = iv.mpf(exponent) / -iv.ln(ratio)
    if certainly_le(peak, start):
        return iv.mpf(start) ** exponent * ratio**start
    # x**e * r**x at the stationary point equals (e / (-log r))**e * exp(-e)
    at_peak = peak**exponent * iv.exp(-iv.mpf(exponent))
    return imax(at_peak, iv.mpf(start) ** exponent * ratio**start)
