import logging
import math
from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from mpmath import iv
from sympy import Poly

from scripts.algebraic.algebraic_numbers import X, AlgebraicNumber, locate_root, normalized_coeffs
from scripts.common.errors import NoDominantRoot
from scripts.common.intervals import certainly_gt, certainly_lt, lower, upper, working_precision
from scripts.common.verdict import Verdict
from scripts.config.settings import PRECISION_BITS, precision_ladder

# -----------------------
# Logging setup
# -----------------------
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RootSystem:
    """Distinct characteristic roots, largest modulus first when `dominant` is set."""

    poly: tuple
    roots: tuple
    multiplicities: tuple
    dominant: bool
    precision_bits: int

    @property
    def dominant_root(self):
        if not self.dominant:
            raise NoDominantRoot("root system has no certified dominant root", NoDominantRoot.UNRESOLVED)
        return self.roots[0]

    @property
    def count(self):
        return len(self.roots)

    def moduli(self, bits=None):
        return [r.modulus(bits or self.precision_bits) for r in self.roots]

    def to_dict(self):
        return {
            "poly": list(self.poly),
            "roots": [r.to_dict(self.precision_bits) for r in self.roots],
            "multiplicities": list(self.multiplicities),
            "dominant": self.dominant,
        }


def _bits_for(target_precision):
    if target_precision is None:
        return PRECISION_BITS
    q = Fraction(target_precision)
    if q <= 0:
        raise ValueError("target precision must be positive")
    return max(PRECISION_BITS, math.ceil(math.log2(q.denominator / q.numerator)) + 1)


def _distinct_roots(poly):
    roots, mults = [], []
    _, square_free = poly.sqf_list()
    for part, mult in square_free:
        for factor, _ in part.factor_list()[1]:
            coeffs = normalized_coeffs(factor)
            for j in range(len(coeffs) - 1):
                roots.append(AlgebraicNumber(coeffs, j))
                mults.append(mult)
    return roots, mults


def _conjugate(z):
    # ivmpc.conjugate() is broken in mpmath 1.3 (mpf_neg on an interval)
    return iv.mpc(z.real, -z.imag)


@lru_cache(maxsize=256)
def _squared_modulus(r):
    """|r|^2 as an exact real algebraic number."""
    if r.is_real:
        return r.multiply(r)
    conj = locate_root(r.poly, lambda bits: _conjugate(r.enclosure(bits)))
    return r.multiply(conj)


def _same_modulus_exactly(r, s):
    return _squared_modulus(r) == _squared_modulus(s)


def _order_by_modulus(roots, mults, bits):
    paired = sorted(
        zip(roots, mults),
        key=lambda rm: (-upper(rm[0].modulus(bits)), rm[0].minpoly, rm[0].index),
    )
    return [r for r, _ in paired], [m for _, m in paired]


# -----------------------
# Root analysis
# -----------------------
def analyze_roots(poly, target_precision=None, require_dominant=True):
    """Isolate the distinct roots of an integer polynomial and certify a dominant one.

    Raises NoDominantRoot when two roots of maximal modulus have provably equal
    modulus, when separation fails at the precision ceiling, or when the
    dominant root does not exceed 1 in modulus.
    """
    poly = poly if isinstance(poly, Poly) else Poly(poly, X)
    if poly.eval(0) == 0:
        raise ValueError("characteristic polynomial must have a nonzero constant term")
    roots, mults = _distinct_roots(poly)
    start = _bits_for(target_precision)
    logger.info(f"🚀 Isolating {len(roots)} distinct roots of {poly.as_expr()}")

    for bits in precision_ladder(start):
        with working_precision(bits):
            ordered, ordered_mults = _order_by_modulus(roots, mults, bits)
            system = RootSystem(normalized_coeffs(poly), tuple(ordered), tuple(ordered_mults), False, bits)
            if len(ordered) == 1:
                return _certify_expanding(replace(system, dominant=True), bits, require_dominant)
            moduli = [r.modulus(bits) for r in ordered]
            top_lower = max(lower(m) for m in moduli)
            contenders = [i for i, m in enumerate(moduli) if upper(m) >= top_lower]
            if len(contenders) == 1:
                return _certify_expanding(replace(system, dominant=True), bits, require_dominant)
            lead = ordered[contenders[0]]
            twins = [ordered[i] for i in contenders[1:] if _same_modulus_exactly(lead, ordered[i])]
            if twins and len(twins) == len(contenders) - 1:
                if not require_dominant:
                    return system
                raise NoDominantRoot(
                    "two distinct roots share the maximal modulus",
                    NoDominantRoot.EQUAL_MODULUS,
                    witness=[lead.to_dict(bits), twins[0].to_dict(bits)],
                )
        logger.warning(f"⚠️ Root moduli not separated at {bits} bits, escalating precision")

    if not require_dominant:
        return system
    raise NoDominantRoot("maximal modulus not separated below the precision ceiling", NoDominantRoot.UNRESOLVED)


def _certify_expanding(system, bits, require_dominant):
    alpha = system.roots[0]
    if not alpha.is_real:
        # a strictly maximal modulus in a conjugate-closed set is real
        raise NoDominantRoot("dominant root is not real", NoDominantRoot.EQUAL_MODULUS)
    if require_dominant and not certainly_gt(alpha.modulus(bits), 1):
        raise NoDominantRoot("dominant root does not exceed 1 in modulus", NoDominantRoot.NOT_EXPANDING)
    logger.info(f"✅ Dominant root certified at {bits} bits: minpoly {list(alpha.minpoly)}")
    return system


# -----------------------
# Non-degeneracy
# -----------------------
def nondegeneracy_check(roots):
    """Pass iff no ratio of two distinct roots is a root of unity."""
    items = roots.roots
    bits = roots.precision_bits
    for i in range(len(items)):
        for j in range(i + 1, len(items)):
            mi, mj = items[i].modulus(bits), items[j].modulus(bits)
            if certainly_lt(mi, mj) or certainly_gt(mi, mj):
                continue
            ratio = items[i].divide(items[j])
            # a primitive N-th root of unity has degree phi(N) >= sqrt(N / 2)
            ceiling = 2 * ratio.degree**2 + 2
            for order in range(1, ceiling + 1):
                cyclic = Poly(X**order - 1, X)
                if cyclic.rem(ratio.poly).is_zero:
                    logger.warning(f"⚠️ Root ratio {i}/{j} is a root of unity of order {order}")
                    return Verdict(
                        False,
                        detail=f"ratio of roots {i} and {j} is a root of unity of order {order}",
                        witness=(i, j, order),
                        extra={"ratio": ratio.to_dict(bits)},
                    )
    return Verdict(True, detail="no root ratio is a root of unity")
