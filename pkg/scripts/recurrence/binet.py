"""Binet polynomials U_n = sum_i a_i(n) alpha_i**n.

Two routes: an interval solve of the confluent Vandermonde system, and an
exact rational solve over Newton power sums that yields each a_i as a
polynomial in its root.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction

import sympy

from scripts.algebraic.algebraic_numbers import X, Y, AlgebraicNumber, locate_root
from scripts.common.errors import PrecisionExhausted
from scripts.common.intervals import contains_integer, lower, to_complex, upper, width, working_precision
from scripts.config.settings import precision_ladder
from scripts.recurrence.recurrence_core import terms

# -----------------------
# Logging setup
# -----------------------
logger = logging.getLogger(__name__)


# -----------------------
# Interval route
# -----------------------
def _column_layout(roots):
    return [(i, l) for i, mult in enumerate(roots.multiplicities) for l in range(mult)]


def _solve_interval_system(matrix, rhs):
    """Gaussian elimination with partial pivoting on interval entries; None if a pivot may vanish."""
    size = len(rhs)
    a = [row[:] for row in matrix]
    b = rhs[:]
    for col in range(size):
        pivot = max(range(col, size), key=lambda r: lower(abs(a[r][col])))
        if 0 in abs(a[pivot][col]):
            return None
        a[col], a[pivot] = a[pivot], a[col]
        b[col], b[pivot] = b[pivot], b[col]
        for r in range(col + 1, size):
            factor = a[r][col] / a[col][col]
            for c in range(col, size):
                a[r][c] = a[r][c] - factor * a[col][c]
            b[r] = b[r] - factor * b[col]
    x = [None] * size
    for r in range(size - 1, -1, -1):
        acc = b[r]
        for c in range(r + 1, size):
            acc = acc - a[r][c] * x[c]
        x[r] = acc / a[r][r]
    return x


def evaluate_binet(coefficients, roots, n, bits):
    """Interval value of sum_i a_i(n) alpha_i**n."""
    total = to_complex(0)
    for i, poly in enumerate(coefficients):
        alpha = roots.roots[i].enclosure(bits)
        value = to_complex(0)
        for l, coef in enumerate(poly):
            value = value + coef * n**l
        total = total + value * alpha**n
    return total


def binet_coefficients(spec, roots, check_upto=None):
    """Interval coefficients a_{i,l} (low degree first) for every distinct root.

    The reconstruction U_n in sum a_i(n) alpha_i**n, with real width below 1,
    is certified for n = 0 .. 4k before returning.
    """
    k = spec.order
    layout = _column_layout(roots)
    if len(layout) != k:
        raise ValueError(f"root multiplicities sum to {len(layout)}, expected order {k}")
    check_upto = check_upto if check_upto is not None else 4 * k
    exact = terms(spec, check_upto)

    for bits in precision_ladder(roots.precision_bits):
        with working_precision(bits):
            powers = [roots.roots[i].enclosure(bits) for i, _ in layout]
            matrix = [[n**l * powers[c] ** n for c, (_, l) in enumerate(layout)] for n in range(k)]
            rhs = [to_complex(u) for u in exact[:k]]
            solution = _solve_interval_system(matrix, rhs)
            if solution is None:
                logger.warning(f"⚠️ Vandermonde pivot not certified at {bits} bits")
                continue
            coefficients = [[] for _ in roots.roots]
            for (i, _), value in zip(layout, solution):
                coefficients[i].append(value)
            coefficients = tuple(tuple(c) for c in coefficients)
            if all(_reconstructs(coefficients, roots, n, u, bits) for n, u in enumerate(exact)):
                logger.info(f"✅ Binet coefficients of {spec.label} certified at {bits} bits")
                return coefficients
            logger.warning(f"⚠️ Binet reconstruction too wide at {bits} bits, escalating")
    raise PrecisionExhausted(f"Binet system of {spec.label} not certified", stage="binet")


def _reconstructs(coefficients, roots, n, u, bits):
    value = evaluate_binet(coefficients, roots, n, bits)
    return contains_integer(value, u) and width(value.real) < 1


# -----------------------
# Exact route
# -----------------------
@dataclass(frozen=True)
class ExactBinet:
    """Per irreducible factor f: rational polynomials R_l with a_{i,l} = R_l(alpha_i) on roots of f."""

    factors: tuple
    multiplicities: tuple
    polynomials: tuple

    def coefficient_poly(self, minpoly, l):
        return self.polynomials[self.factors.index(minpoly)][l]


def _power_sums(minpoly, count):
    """Newton power sums p_0 .. p_{count-1} of the roots of a monic integer polynomial."""
    deg = len(minpoly) - 1
    e = [(-1) ** j * minpoly[j] for j in range(deg + 1)]
    sums = [Fraction(deg)]
    for s in range(1, count):
        acc = Fraction(0)
        for j in range(1, min(s - 1, deg) + 1):
            acc += (-1) ** (j - 1) * e[j] * sums[s - j]
        if s <= deg:
            acc += (-1) ** (s - 1) * s * e[s]
        sums.append(acc)
    return sums


def exact_binet(spec, roots):
    factors, mults = [], []
    for r, mult in zip(roots.roots, roots.multiplicities):
        if r.minpoly not in factors:
            if r.leading != 1:
                raise ValueError("characteristic factors must be monic")
            factors.append(r.minpoly)
            mults.append(mult)
    k = spec.order
    layout = [(fi, l, j) for fi, f in enumerate(factors) for l in range(mults[fi]) for j in range(len(f) - 1)]
    sums = [_power_sums(f, 2 * k + len(f)) for f in factors]
    matrix = sympy.Matrix(k, k, lambda n, c: _entry(sums, layout[c], n))
    rhs = sympy.Matrix(terms(spec, k - 1))
    solution = matrix.LUsolve(rhs)
    polynomials = []
    for fi, f in enumerate(factors):
        per_l = []
        for l in range(mults[fi]):
            coeffs = [Fraction(int(solution[c].p), int(solution[c].q))
                      for c, (gi, ll, _) in enumerate(layout) if gi == fi and ll == l]
            per_l.append(tuple(coeffs))
        polynomials.append(tuple(per_l))
    return ExactBinet(tuple(factors), tuple(mults), tuple(polynomials))


def _entry(sums, column, n):
    fi, l, j = column
    scale = 1 if l == 0 else n**l
    value = sums[fi][j + n]
    return sympy.Rational(value.numerator, value.denominator) * scale


def evaluate_rational_poly(coeffs, z):
    total = to_complex(0)
    for j, c in enumerate(coeffs):
        total = total + to_complex(c) * z**j
    return total


def binet_number(exact, root, l):
    """a_{i,l} as an AlgebraicNumber, with its minimal polynomial from a resultant."""
    coeffs = exact.coefficient_poly(root.minpoly, l)
    if all(c == 0 for c in coeffs):
        return AlgebraicNumber.from_rational(0)
    if all(c == 0 for c in coeffs[1:]):
        return AlgebraicNumber.from_rational(coeffs[0])
    den = math.lcm(*(c.denominator for c in coeffs))
    numerator = sum(int(c * den) * Y**j for j, c in enumerate(coeffs))
    f = sympy.Poly(list(root.minpoly), Y).as_expr()
    res = sympy.resultant(f, den * X - numerator, Y)
    return locate_root(sympy.Poly(res, X), lambda bits: evaluate_rational_poly(coeffs, root.enclosure(bits)))


def dominant_coefficients(coefficients):
    """Real parts of the dominant root's coefficients (they are real for a real root)."""
    return tuple(c.real for c in coefficients[0])


def coefficient_envelope(coefficients):
    """Sum of upper absolute bounds over all non-dominant coefficients."""
    return sum((upper(abs(c)) for poly in coefficients[1:] for c in poly), Fraction(0))
