"""Algebraic numbers given by a primitive integer minimal polynomial and a root index.

The root index follows sympy's CRootOf ordering (real roots ascending, then
complex roots with conjugates adjacent), so (minpoly, index) identifies a
number exactly and is hashable. Enclosures are certified complex boxes
refined to 2**-bits and cached per precision level.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import sympy
from mpmath import iv
from sympy import CRootOf, Poly

from scripts.common.errors import NonPositiveValue, PillaiError, PrecisionExhausted
from scripts.common.intervals import (
    boxes_overlap,
    certainly_positive,
    fraction_str,
    hull,
    imax,
    log_max_one,
    lower,
    to_complex,
    to_fraction,
    upper,
    working_precision,
)
from scripts.config.settings import MAX_FIELD_DEGREE, PRECISION_BITS, precision_ladder

# -----------------------
# Logging setup
# -----------------------
logger = logging.getLogger(__name__)

X = sympy.Symbol("X")
Y = sympy.Symbol("Y")


def default_bits():
    return max(iv.prec, PRECISION_BITS)


# -----------------------
# Polynomial normalization
# -----------------------
def normalized_coeffs(poly):
    """Primitive integer coefficients (high to low) with positive leading term."""
    poly = Poly(poly, X) if not isinstance(poly, Poly) else poly
    _, prim = poly.primitive()
    if prim.LC() < 0:
        prim = -prim
    return tuple(int(c) for c in prim.all_coeffs())


@lru_cache(maxsize=1024)
def _is_irreducible(minpoly):
    return Poly(list(minpoly), X).is_irreducible


@lru_cache(maxsize=1024)
def _real_root_count(minpoly):
    return Poly(list(minpoly), X).count_roots()


@lru_cache(maxsize=8192)
def _enclosure(minpoly, index, bits):
    with working_precision(bits):
        if len(minpoly) == 2:
            return to_complex(Fraction(-minpoly[1], minpoly[0]))
        root = CRootOf(Poly(list(minpoly), X), index)
        eps = sympy.Rational(1, 2**bits)
        # sympy may rescale the polynomial and hand back coeff * CRootOf(...)
        coeff, inner = root.as_coeff_Mul()
        step = eps / abs(coeff)
        center = coeff * inner.eval_rational(dx=step, dy=step)
        re, im = center.as_real_imag()
        real_part = hull(re - eps, re + eps)
        if index < _real_root_count(minpoly):
            return iv.mpc(real_part, 0)
        return iv.mpc(real_part, hull(im - eps, im + eps))


# -----------------------
# Algebraic number
# -----------------------
@dataclass(frozen=True)
class AlgebraicNumber:
    minpoly: tuple
    index: int = 0

    def __post_init__(self):
        coeffs = tuple(int(c) for c in self.minpoly)
        object.__setattr__(self, "minpoly", coeffs)
        if len(coeffs) < 2 or coeffs[0] <= 0:
            raise ValueError(f"minimal polynomial needs positive leading term: {coeffs}")
        if not 0 <= self.index < len(coeffs) - 1:
            raise ValueError(f"root index {self.index} out of range for degree {len(coeffs) - 1}")
        if len(coeffs) - 1 > MAX_FIELD_DEGREE:
            raise PillaiError(f"degree {len(coeffs) - 1} exceeds ceiling {MAX_FIELD_DEGREE}", stage="algebraic")
        if len(coeffs) > 2 and not _is_irreducible(coeffs):
            raise ValueError(f"polynomial {coeffs} is reducible over the rationals")

    # -----------------------
    # Constructors
    # -----------------------
    @classmethod
    def from_rational(cls, value):
        q = to_fraction(value)
        return cls((q.denominator, -q.numerator), 0)

    @classmethod
    def from_poly(cls, poly, index):
        return cls(normalized_coeffs(poly), index)

    # -----------------------
    # Shape
    # -----------------------
    @property
    def degree(self):
        return len(self.minpoly) - 1

    @property
    def leading(self):
        return self.minpoly[0]

    @property
    def poly(self):
        return Poly(list(self.minpoly), X)

    @property
    def is_rational(self):
        return self.degree == 1

    @property
    def is_zero(self):
        return self.minpoly == (1, 0)

    @property
    def is_real(self):
        return self.index < _real_root_count(self.minpoly)

    def rational_value(self):
        if not self.is_rational:
            raise ValueError("not a rational number")
        return Fraction(-self.minpoly[1], self.minpoly[0])

    # -----------------------
    # Enclosures
    # -----------------------
    def enclosure(self, bits=None):
        return _enclosure(self.minpoly, self.index, bits or default_bits())

    def real_enclosure(self, bits=None):
        if not self.is_real:
            raise ValueError("number is not real")
        return self.enclosure(bits).real

    def modulus(self, bits=None):
        return abs(self.enclosure(bits))

    def conjugate_enclosures(self, bits=None):
        bits = bits or default_bits()
        return [_enclosure(self.minpoly, j, bits) for j in range(self.degree)]

    def sign(self):
        if self.is_zero:
            return 0
        for bits in precision_ladder(default_bits()):
            x = self.real_enclosure(bits)
            if certainly_positive(x):
                return 1
            if certainly_positive(-x):
                return -1
        raise PrecisionExhausted("sign of a real algebraic number not certified", stage="algebraic")

    # -----------------------
    # Arithmetic by resultants
    # -----------------------
    def negate(self):
        if self.is_rational:
            return AlgebraicNumber.from_rational(-self.rational_value())
        deg = self.degree
        flipped = [c * (-1) ** (deg - i) for i, c in enumerate(self.minpoly)]
        return locate_root(Poly(flipped, X), lambda bits: -self.enclosure(bits))

    def inverse(self):
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational:
            return AlgebraicNumber.from_rational(1 / self.rational_value())
        reversed_poly = Poly(list(reversed(self.minpoly)), X)
        return locate_root(reversed_poly, lambda bits: 1 / self.enclosure(bits))

    def add(self, other):
        other = as_algebraic(other)
        if self.is_rational and other.is_rational:
            return AlgebraicNumber.from_rational(self.rational_value() + other.rational_value())
        f = Poly(list(self.minpoly), Y).as_expr()
        g = Poly(list(other.minpoly), Y).as_expr().subs(Y, X - Y)
        res = Poly(sympy.resultant(f, g, Y), X)
        return locate_root(res, lambda bits: self.enclosure(bits) + other.enclosure(bits))

    def subtract(self, other):
        return self.add(as_algebraic(other).negate())

    def multiply(self, other):
        other = as_algebraic(other)
        if self.is_zero or other.is_zero:
            return AlgebraicNumber.from_rational(0)
        if self.is_rational and other.is_rational:
            return AlgebraicNumber.from_rational(self.rational_value() * other.rational_value())
        f = Poly(list(self.minpoly), Y).as_expr()
        dg = other.degree
        # Y**deg(g) * g(X / Y)
        g = sum(c * X ** (dg - i) * Y**i for i, c in enumerate(other.minpoly))
        res = Poly(sympy.resultant(f, g, Y), X)
        return locate_root(res, lambda bits: self.enclosure(bits) * other.enclosure(bits))

    def divide(self, other):
        return self.multiply(as_algebraic(other).inverse())

    def power(self, exponent):
        if exponent == 0:
            return AlgebraicNumber.from_rational(1)
        if exponent < 0:
            return self.inverse().power(-exponent)
        if exponent == 1:
            return self
        if self.is_rational:
            return AlgebraicNumber.from_rational(self.rational_value() ** exponent)
        f = Poly(list(self.minpoly), Y).as_expr()
        res = Poly(sympy.resultant(f, X - Y**exponent, Y), X)
        return locate_root(res, lambda bits: self.enclosure(bits) ** exponent)

    def absolute(self):
        """|x| for a real number x."""
        if not self.is_real:
            raise ValueError("absolute value is only taken of real numbers")
        return self.negate() if self.sign() < 0 else self

    # -----------------------
    # Serialization
    # -----------------------
    def to_dict(self, bits=None):
        box = self.enclosure(bits)
        return {
            "minpoly": list(self.minpoly),
            "region": [
                [fraction_str(lower(box.real)), fraction_str(upper(box.real))],
                [fraction_str(lower(box.imag)), fraction_str(upper(box.imag))],
            ],
        }

    def __repr__(self):
        return f"AlgebraicNumber(minpoly={list(self.minpoly)}, index={self.index})"


def as_algebraic(value):
    if isinstance(value, AlgebraicNumber):
        return value
    return AlgebraicNumber.from_rational(value)


def locate_root(poly, target):
    """Pick the irreducible factor and root of `poly` whose enclosure matches `target`.

    `target(bits)` returns a certified enclosure of a root of `poly`. Precision
    escalates until exactly one root of one factor meets the target box.
    """
    poly = poly if isinstance(poly, Poly) else Poly(poly, X)
    factors = [normalized_coeffs(f) for f, _ in poly.factor_list()[1]]
    candidates = [(f, j) for f in factors for j in range(len(f) - 1)]
    for bits in precision_ladder(default_bits()):
        with working_precision(bits):
            box = target(bits)
        hits = [(f, j) for f, j in candidates if boxes_overlap(_enclosure(f, j, bits), box)]
        if len(hits) == 1:
            f, j = hits[0]
            return AlgebraicNumber(f, j)
        if not hits:
            raise PillaiError("no root matches the target enclosure", stage="algebraic")
        candidates = hits
        logger.info(f"ℹ️ {len(hits)} roots still overlap at {bits} bits, refining")
    raise PrecisionExhausted("root location not certified below the precision ceiling", stage="algebraic")


# -----------------------
# Heights
# -----------------------
def weil_height(x, bits=None):
    """Absolute logarithmic Weil height h0 as a certified interval."""
    x = as_algebraic(x)
    bits = bits or default_bits()
    with working_precision(bits):
        if x.is_rational:
            q = x.rational_value()
            return iv.ln(iv.mpf(max(abs(q.numerator), q.denominator)))
        total = iv.ln(iv.mpf(x.leading))
        for z in x.conjugate_enclosures(bits):
            total += log_max_one(abs(z))
        return total / x.degree


def modified_height(x, d, bits=None):
    """(1/d) max{d h0(x), |log x|, 1} for a positive real x."""
    x = as_algebraic(x)
    bits = bits or default_bits()
    if not x.is_real or not certainly_positive(x.real_enclosure(bits)):
        raise NonPositiveValue(f"modified height needs a positive real number, got {x!r}", stage="heights")
    with working_precision(bits):
        h = weil_height(x, bits)
        log_x = abs(iv.ln(x.real_enclosure(bits)))
        return imax(d * h, log_x, iv.mpf(1)) / d


def linear_form_height(coefficients):
    """log max{|b_i|, e}, the bound used for h'(L)."""
    top = max(abs(int(b)) for b in coefficients)
    if top == 0:
        raise ValueError("linear form with all coefficients zero")
    if top <= 2:
        return iv.mpf(1)
    return iv.ln(iv.mpf(top))
