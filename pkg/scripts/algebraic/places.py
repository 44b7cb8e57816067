"""Places of K = Q(x, y) and the constant C0 with h0(x^n / y^m) >= C0 max(n, m).

Over Q the place set is every prime dividing a numerator or denominator plus
the infinite place, with exact log-valuations. Otherwise only archimedean
rows are formed, from the embeddings of a primitive element, and the place
count |S| is bounded above by adding d places for every prime dividing a
leading or constant coefficient.
"""
import logging
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import sympy
from mpmath import iv
from sympy import Poly

from scripts.algebraic.algebraic_numbers import X, Y, AlgebraicNumber, as_algebraic, locate_root
from scripts.common.errors import PrecisionExhausted, UnsupportedPlaceStructure
from scripts.common.intervals import (
    boxes_overlap,
    certainly_gt,
    certainly_positive,
    imax,
    interval_json,
    lower,
    round_down,
    working_precision,
)
from scripts.config.settings import PRECISION_BITS, precision_ladder

# -----------------------
# Logging setup
# -----------------------
logger = logging.getLogger(__name__)

INFINITE = "inf"


# -----------------------
# Rational places
# -----------------------
def rational_place_logs(x):
    """log||x||_v for every place of Q in the support, as integer combinations {p: k} of log p."""
    q = as_algebraic(x).rational_value()
    if q == 0:
        raise ValueError("zero has no finite place logarithms")
    vector = Counter()
    for p, e in sympy.factorint(abs(q.numerator)).items():
        vector[int(p)] += int(e)
    for p, e in sympy.factorint(q.denominator).items():
        vector[int(p)] -= int(e)
    logs = {INFINITE: dict(vector)}
    for p, e in sorted(vector.items()):
        logs[p] = {p: -e}
    return logs


def combination_expr(combination):
    return sum((k * sympy.log(p) for p, k in combination.items()), sympy.Integer(0))


def combination_interval(combination):
    total = iv.mpf(0)
    for p, k in combination.items():
        total += k * iv.ln(iv.mpf(p))
    return total


@dataclass(frozen=True)
class NumberField:
    """K = Q(theta) with theta = x + shift * y; embeddings[j] = (a, b) maps theta_j to x_a + shift * y_b."""

    x: AlgebraicNumber
    y: AlgebraicNumber
    generator: AlgebraicNumber
    shift: int
    embeddings: tuple
    real_count: int

    @property
    def degree(self):
        return self.generator.degree

    @property
    def archimedean(self):
        """One embedding index per archimedean place: real ones, then one of each conjugate pair."""
        bits = PRECISION_BITS
        chosen = list(range(self.real_count))
        for j in range(self.real_count, self.degree):
            if certainly_positive(self.generator.conjugate_enclosures(bits)[j].imag):
                chosen.append(j)
        return tuple(chosen)

    def local_degree(self, j):
        return 1 if j < self.real_count else 2


def compositum(x, y):
    """Primitive element x + k y of Q(x, y), with k the least positive shift giving a square-free resultant."""
    x, y = as_algebraic(x), as_algebraic(y)
    fx = Poly(list(x.minpoly), Y).as_expr()
    ey = y.degree
    for shift in range(1, 64):
        g = sum(c * (X - Y) ** (ey - i) * shift**i for i, c in enumerate(y.minpoly))
        res = Poly(sympy.resultant(fx, g, Y), X)
        if not res.is_sqf:
            continue
        generator = locate_root(res, lambda bits: x.enclosure(bits) + shift * y.enclosure(bits))
        embeddings = _match_embeddings(x, y, generator, shift)
        real_count = Poly(list(generator.minpoly), X).count_roots()
        logger.info(f"ℹ️ Compositum of degree {generator.degree} generated by x + {shift}y")
        return NumberField(x, y, generator, shift, embeddings, real_count)
    raise PrecisionExhausted("no square-free primitive element found", stage="places")


def _match_embeddings(x, y, generator, shift):
    for bits in precision_ladder(PRECISION_BITS):
        with working_precision(bits):
            xs, ys = x.conjugate_enclosures(bits), y.conjugate_enclosures(bits)
            pairs = []
            for theta in generator.conjugate_enclosures(bits):
                hits = [(a, b) for a, xa in enumerate(xs) for b, yb in enumerate(ys)
                        if boxes_overlap(theta, xa + shift * yb)]
                if len(hits) != 1:
                    break
                pairs.append(hits[0])
            else:
                return tuple(pairs)
        logger.warning(f"⚠️ Embeddings not separated at {bits} bits, escalating")
    raise PrecisionExhausted("embeddings of the compositum not separated", stage="places")


# -----------------------
# Place system
# -----------------------
@dataclass(frozen=True)
class PlaceSystem:
    field_poly: tuple
    degree: int
    places: tuple
    rows: tuple
    pair: tuple
    det: object
    tilde1: object
    tilde2: object
    support_size: int
    c0: Fraction
    c0_exact: object = None
    extra: dict = field(default_factory=dict)

    @property
    def matrix(self):
        return (self.rows[self.pair[0]], self.rows[self.pair[1]])

    def to_dict(self):
        return {
            "field_poly": list(self.field_poly),
            "degree": self.degree,
            "places": [str(p) for p in self.places],
            "pair": [str(self.places[i]) for i in self.pair],
            "M": [[interval_json(e) for e in row] for row in self.matrix],
            "det": interval_json(self.det),
            "C0_tilde_1": interval_json(self.tilde1),
            "C0_tilde_2": interval_json(self.tilde2),
            "support_size": self.support_size,
            "C0": f"{self.c0.numerator}/{self.c0.denominator}",
            "C0_exact": str(self.c0_exact) if self.c0_exact is not None else None,
        }


def _best_pair(rows):
    best, best_det = None, None
    for i, j in combinations(range(len(rows)), 2):
        (x1, y1), (x2, y2) = rows[i], rows[j]
        det = abs(x1 * y2 - y1 * x2)
        if not certainly_positive(det):
            continue
        # ties keep the earlier pair
        if best is None or certainly_gt(det, best_det):
            best, best_det = (i, j), det
    return best, best_det


def _tilde_constants(rows, pair, det):
    (x1, y1), (x2, y2) = rows[pair[0]], rows[pair[1]]
    tilde1 = det / (2 * imax(abs(y1), abs(y2)))
    tilde2 = det / (2 * imax(abs(x1), abs(x2)))
    return tilde1, tilde2


def _rational_system(x, y):
    logs_x, logs_y = rational_place_logs(x), rational_place_logs(y)
    primes = sorted({p for p in logs_x if p != INFINITE} | {p for p in logs_y if p != INFINITE})
    places = tuple(primes) + (INFINITE,)
    exact_rows = [(logs_x.get(v, {}), logs_y.get(v, {})) for v in places]
    rows = tuple((combination_interval(a), combination_interval(b)) for a, b in exact_rows)
    pair, det = _best_pair(rows)
    if pair is None:
        raise UnsupportedPlaceStructure("all place rows are proportional", stage="places")
    tilde1, tilde2 = _tilde_constants(rows, pair, det)
    size = len(places)

    (ex1, ey1), (ex2, ey2) = [tuple(combination_expr(c) for c in exact_rows[i]) for i in pair]
    det_expr = sympy.Abs(ex1 * ey2 - ey1 * ex2)
    t1 = det_expr / (2 * sympy.Max(sympy.Abs(ey1), sympy.Abs(ey2)))
    t2 = det_expr / (2 * sympy.Max(sympy.Abs(ex1), sympy.Abs(ex2)))
    exact = sympy.simplify(sympy.Min(t1, t2) / size)
    return PlaceSystem(
        field_poly=(1, 0),
        degree=1,
        places=places,
        rows=rows,
        pair=pair,
        det=det,
        tilde1=tilde1,
        tilde2=tilde2,
        support_size=size,
        c0=round_down(min(lower(tilde1), lower(tilde2)) / size),
        c0_exact=exact,
    )


def _non_unit_primes(x, y):
    primes = set()
    for number in (x, y):
        for coefficient in (number.minpoly[0], number.minpoly[-1]):
            primes |= {int(p) for p in sympy.primefactors(abs(coefficient))}
    return primes


def _archimedean_system(x, y, field_data, bits):
    d = field_data.degree
    with working_precision(bits):
        xs, ys = x.conjugate_enclosures(bits), y.conjugate_enclosures(bits)
        places, rows = [], []
        for j in field_data.archimedean:
            a, b = field_data.embeddings[j]
            weight = iv.mpf(field_data.local_degree(j)) / d
            rows.append((weight * iv.ln(abs(xs[a])), weight * iv.ln(abs(ys[b]))))
            places.append(f"{INFINITE}:{j}")
        pair, det = _best_pair(rows)
    return tuple(places), tuple(rows), pair, det


def compute_C0(x, y, field_data=None):
    """Place system for the pair (x, y) with C0 = min(tilde C1, tilde C2) / |S|."""
    x, y = as_algebraic(x), as_algebraic(y)
    logger.info(f"🚀 Computing C0 for {x!r}, {y!r}")
    if x.is_rational and y.is_rational:
        system = _rational_system(x, y)
        logger.info(f"✅ C0 = {system.c0_exact} over Q")
        return system

    field_data = field_data or compositum(x, y)
    for bits in precision_ladder(PRECISION_BITS):
        places, rows, pair, det = _archimedean_system(x, y, field_data, bits)
        if pair is not None:
            break
        logger.warning(f"⚠️ No certified nonsingular pair of archimedean rows at {bits} bits")
    else:
        raise UnsupportedPlaceStructure(
            "archimedean rows are proportional; finite places of a number field are not supported",
            stage="places",
        )
    with working_precision(bits):
        tilde1, tilde2 = _tilde_constants(rows, pair, det)
    size = len(places) + field_data.degree * len(_non_unit_primes(x, y))
    c0 = round_down(min(lower(tilde1), lower(tilde2)) / size)
    logger.info(f"✅ C0 >= {float(c0):.6g} with |S| <= {size} over a field of degree {field_data.degree}")
    return PlaceSystem(
        field_poly=field_data.generator.minpoly,
        degree=field_data.degree,
        places=places,
        rows=rows,
        pair=pair,
        det=det,
        tilde1=tilde1,
        tilde2=tilde2,
        support_size=size,
        c0=c0,
        extra={"shift": field_data.shift},
    )


# -----------------------
# Heights as sums over places
# -----------------------
def place_height(x, bits=None):
    """h0(x) = sum_v log+ ||x||_v, for rationals and for algebraic units."""
    x = as_algebraic(x)
    bits = bits or PRECISION_BITS
    with working_precision(bits):
        if x.is_rational:
            return sum(
                (imax(combination_interval(c), 0) for c in rational_place_logs(x).values()),
                iv.mpf(0),
            )
        if abs(x.minpoly[0]) != 1 or abs(x.minpoly[-1]) != 1:
            raise UnsupportedPlaceStructure("place height of a non-unit needs finite places", stage="places")
        total = iv.mpf(0)
        for z in x.conjugate_enclosures(bits):
            total += imax(iv.ln(abs(z)), 0)
        return total / x.degree


def unit_ratio_height(field_data, n, m, bits=None):
    """h0(x^n / y^m) from the embeddings of K when x and y are units."""
    bits = bits or PRECISION_BITS
    with working_precision(bits):
        xs = field_data.x.conjugate_enclosures(bits)
        ys = field_data.y.conjugate_enclosures(bits)
        total = iv.mpf(0)
        for a, b in field_data.embeddings:
            total += imax(n * iv.ln(abs(xs[a])) - m * iv.ln(abs(ys[b])), 0)
        return total / field_data.degree
