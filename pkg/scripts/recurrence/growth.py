import logging
import math
from dataclasses import dataclass, replace
from fractions import Fraction

from mpmath import iv

from scripts.algebraic.algebraic_numbers import weil_height
from scripts.common.errors import HypothesisFailure, PrecisionExhausted
from scripts.common.intervals import (
    certainly_gt,
    certainly_le,
    certainly_lt,
    certainly_positive,
    fraction_str,
    imax,
    interval_json,
    lower,
    midpoint,
    power_geometric_sup,
    round_down,
    round_up,
    to_interval,
    upper,
    working_precision,
)
from scripts.config.settings import (
    CHECK_CEILING,
    GROWTH_EPSILON,
    PRECISION_BITS,
    THRESHOLD_CEILING,
    precision_ladder,
)
from scripts.recurrence.binet import (
    binet_coefficients,
    binet_number,
    coefficient_envelope,
    dominant_coefficients,
    exact_binet,
)
from scripts.recurrence.recurrence_core import char_poly, minimal_spec, terms
from scripts.recurrence.roots import analyze_roots, nondegeneracy_check

# -----------------------
# Logging setup
# -----------------------
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Envelope:
    """|U_n - a(n) alpha^n| <= scale * alpha_prime^n, from sum_{i>=2} |a_i(n)| |alpha_i|^n."""

    degree: int
    coefficient_sum: Fraction
    alpha_prime: Fraction
    scale: Fraction


@dataclass(frozen=True)
class Growth:
    """C1 n^s |alpha|^n <= |U_n| <= C2 n^s |alpha|^n for n >= start, plus the gap constants C5, C6."""

    lower: Fraction
    upper: Fraction
    start: int
    gap_upper: Fraction
    gap_lower: Fraction


@dataclass(frozen=True)
class SequenceAnalysis:
    spec: object
    minimal: object
    roots: object
    coefficients: tuple
    exact: object
    leading: tuple
    sigma: int
    envelope: Envelope
    growth: Growth
    monotone_from: int
    coefficient_from: int
    precision_bits: int

    @property
    def label(self):
        return self.spec.label

    @property
    def alpha(self):
        return self.roots.dominant_root

    def modulus(self, bits=None):
        return self.alpha.modulus(bits or self.precision_bits)

    def second_modulus(self, bits=None):
        if self.roots.count == 1:
            return None
        return imax(*[r.modulus(bits or self.precision_bits) for r in self.roots.roots[1:]])

    @property
    def a_coefficients(self):
        return dominant_coefficients(self.coefficients)

    def negated(self):
        """Analysis of -U: every Binet coefficient changes sign, all growth data is unchanged."""
        return replace(
            self,
            spec=self.spec.negated(),
            minimal=self.minimal.negated(),
            coefficients=tuple(tuple(-c for c in poly) for poly in self.coefficients),
            leading=tuple(c.negate() for c in self.leading),
        )

    def to_dict(self):
        bits = self.precision_bits
        with working_precision(bits):
            return {
                "label": self.label,
                "order": self.spec.order,
                "minimal_order": self.minimal.order,
                "roots": self.roots.to_dict(),
                "dominant_root": interval_json(self.alpha.real_enclosure(bits)),
                "dominant_height": interval_json(weil_height(self.alpha, bits)),
                "sigma": self.sigma,
                "binet": [[interval_json(c) for c in poly] for poly in self.coefficients],
                "A": self.envelope.degree,
                "a_double_prime": fraction_str(self.envelope.coefficient_sum),
                "alpha_prime": fraction_str(self.envelope.alpha_prime),
                "a_prime": fraction_str(self.envelope.scale),
                "C1": fraction_str(self.growth.lower),
                "C2": fraction_str(self.growth.upper),
                "N2": self.growth.start,
                "C5": fraction_str(self.growth.gap_upper),
                "C6": fraction_str(self.growth.gap_lower),
                "N0": self.monotone_from,
                "N1": self.coefficient_from,
            }


# -----------------------
# Envelope
# -----------------------
def _rational_between(low, high, guess):
    for digits in (6, 12, 20, 40):
        q = Fraction(midpoint(guess)).limit_denominator(10**digits)
        if certainly_lt(low, q) and certainly_lt(q, high):
            return q
    raise PrecisionExhausted("no rational separates the envelope bounds", stage="envelope")


def envelope_constants(roots, coefficients):
    """(A, a'', alpha', a') for the error term of the dominant Binet summand."""
    bits = roots.precision_bits
    with working_precision(bits):
        modulus = roots.dominant_root.modulus(bits)
        if roots.count == 1:
            prime = _rational_between(iv.mpf(1), modulus, iv.sqrt(modulus))
            return Envelope(0, Fraction(0), prime, Fraction(0))
        degree = max(len(poly) - 1 for poly in coefficients[1:])
        coefficient_sum = round_up(coefficient_envelope(coefficients))
        floor = imax(*[r.modulus(bits) for r in roots.roots[1:]], iv.mpf(1))
        prime = _rational_between(floor, modulus, iv.sqrt(modulus * floor))
        ratio = floor / to_interval(prime)
        # n = 0 contributes max(n, 1)^A r^0 = 1
        peak = imax(iv.mpf(1), power_geometric_sup(degree, ratio, 1))
        scale = round_up(to_interval(coefficient_sum) * peak)
    logger.info(f"ℹ️ Envelope: A={degree}, a''={float(coefficient_sum):.6g}, alpha'={float(prime):.6g}, a'={float(scale):.6g}")
    return Envelope(degree, coefficient_sum, prime, scale)


def _dominant_term(alpha, leading, n, bits):
    total = iv.mpf(0)
    for l, c in enumerate(leading):
        total += c.enclosure(bits).real * n**l
    return total * alpha.enclosure(bits).real ** n


def verify_envelope(spec, analysis_parts, upto=CHECK_CEILING):
    """Check |U_n - a(n) alpha^n| <= a' alpha'^n for 0 <= n <= upto.

    a(n) alpha^n is evaluated from the exact leading coefficients; the working
    precision climbs the ladder whenever alpha^n outgrows it.
    """
    roots, _, leading, envelope = analysis_parts
    alpha = roots.dominant_root
    values = terms(spec, upto)
    exact = alpha.is_rational and all(c.is_rational for c in leading)
    ladder = list(precision_ladder(roots.precision_bits))
    level = 0
    for n, u in enumerate(values):
        while True:
            bits = ladder[level]
            with working_precision(bits):
                bound = to_interval(envelope.scale) * to_interval(envelope.alpha_prime) ** n
                if exact:
                    main = sum(c.rational_value() * n**l for l, c in enumerate(leading)) * alpha.rational_value() ** n
                    error = to_interval(abs(Fraction(u) - main))
                else:
                    error = abs(to_interval(u) - _dominant_term(alpha, leading, n, bits))
                if certainly_le(error, bound):
                    break
                if exact or level + 1 == len(ladder):
                    raise PrecisionExhausted(f"envelope of {spec.label} not certified at n={n}", stage="envelope")
            level += 1
            logger.info(f"ℹ️ Envelope check of {spec.label} needs {ladder[level]} bits from n={n}")
    return True


# -----------------------
# Growth sandwich
# -----------------------
def _sandwich(lead, sigma, start, error_scale, decay, envelope_degree):
    top = abs(lead[sigma])
    tail = iv.mpf(0)
    for l in range(sigma):
        tail += abs(lead[l]) / iv.mpf(start) ** (sigma - l)
    error = iv.mpf(0)
    if decay is not None:
        error = to_interval(error_scale) * power_geometric_sup(envelope_degree - sigma, decay, start)
    return top - tail - error, top + tail + error


def growth_constants(spec, roots, coefficients, envelope, check_ceiling=CHECK_CEILING):
    bits = roots.precision_bits
    lead = dominant_coefficients(coefficients)
    sigma = len(lead) - 1
    with working_precision(bits):
        modulus = roots.dominant_root.modulus(bits)
        if not certainly_positive(abs(lead[sigma])):
            raise HypothesisFailure("leading Binet coefficient not certified nonzero", stage="growth")
        decay = None
        if roots.count > 1:
            decay = imax(*[r.modulus(bits) for r in roots.roots[1:]]) / modulus
        widen_down = to_interval(1 - GROWTH_EPSILON)
        widen_up = to_interval(1 + GROWTH_EPSILON)
        for start in range(1, THRESHOLD_CEILING + 1):
            low, high = _sandwich(lead, sigma, start, envelope.coefficient_sum, decay, envelope.degree)
            if not certainly_positive(low):
                continue
            c1, c2 = round_down(widen_down * low), round_up(widen_up * high)
            if c1 > 0 and certainly_lt(to_interval(c2) / to_interval(c1), modulus):
                break
        else:
            raise HypothesisFailure(
                f"growth ratio C2/C1 < |alpha| not certified below n={THRESHOLD_CEILING}", stage="growth"
            )
        gap_upper = round_up(to_interval(c2) * (1 + 1 / modulus))
        gap_lower = round_down(to_interval(c1) - to_interval(c2) / modulus)
        if gap_lower <= 0:
            raise HypothesisFailure("C6 is not positive", stage="growth")

        values = terms(spec, check_ceiling)
        for n in range(start, check_ceiling + 1):
            scale = iv.mpf(n) ** sigma * modulus**n
            u = to_interval(abs(values[n]))
            if certainly_le(to_interval(c1) * scale, u) and certainly_le(u, to_interval(c2) * scale):
                continue
            if certainly_gt(to_interval(c1) * scale, u) or certainly_gt(u, to_interval(c2) * scale):
                raise HypothesisFailure(f"growth sandwich of {spec.label} fails at n={n}", stage="growth")
            raise PrecisionExhausted(f"growth sandwich of {spec.label} undecided at n={n}", stage="growth")

    logger.info(f"✅ {spec.label}: C1={float(c1):.6g}, C2={float(c2):.6g}, N2={start}")
    return Growth(c1, c2, start, gap_upper, gap_lower)


# -----------------------
# Thresholds
# -----------------------
def monotonicity_threshold(spec, growth=None, ceiling=CHECK_CEILING):
    """Smallest N0 with |U_{n+1}| > |U_n| > 0 for all n >= N0.

    Without growth data this is an exact screen over n < ceiling. With it,
    the sandwich proves monotonicity from N2 on and only smaller n are
    enumerated.
    """
    values = terms(spec, ceiling + 1)

    def increasing(n):
        return abs(values[n + 1]) > abs(values[n]) > 0

    if growth is None:
        last_bad = max((n for n in range(ceiling) if not increasing(n)), default=-1)
        if last_bad + 1 > ceiling // 2:
            logger.error(f"❌ {spec.label}: monotonicity threshold not found below {ceiling}")
            raise HypothesisFailure("monotonicity threshold not found", stage="monotonicity")
        return last_bad + 1

    last_bad = max((n for n in range(growth.start) if not increasing(n)), default=-1)
    threshold = last_bad + 1
    if any(not increasing(n) for n in range(threshold, ceiling)):
        raise HypothesisFailure("monotonicity fails beyond the growth threshold", stage="monotonicity")
    return threshold


def _cauchy_bound(coeffs):
    if len(coeffs) < 2:
        return Fraction(0)
    return 1 + max(upper(abs(c)) for c in coeffs[:-1]) / lower(abs(coeffs[-1]))


def coefficient_threshold(coefficients, ceiling=10**6):
    """Smallest N1 >= 1 with |a(n)| > max_{n' < n} |a(n')| for every n >= N1.

    `coefficients` lists a_0 .. a_s (low degree first) as integers, fractions or intervals.
    """
    coeffs = [to_interval(c) for c in coefficients]
    if len(coeffs) == 1:
        return 1
    if not certainly_positive(abs(coeffs[-1])):
        raise HypothesisFailure("leading coefficient not certified nonzero", stage="coefficients")
    derivative = [l * coeffs[l] for l in range(1, len(coeffs))]
    settle = math.ceil(max(_cauchy_bound(coeffs), _cauchy_bound(derivative))) + 1

    def value(n):
        total = iv.mpf(0)
        for l, c in enumerate(coeffs):
            total += c * n**l
        return abs(total)

    running = value(0)
    last_bad = 0
    for n in range(1, ceiling):
        current = value(n)
        record = certainly_gt(current, running)
        if not record:
            last_bad = n
        elif n >= settle:
            return last_bad + 1
        running = imax(running, current)
    raise HypothesisFailure("coefficient threshold not found", stage="coefficients")


# -----------------------
# Full analysis
# -----------------------
def analyze_sequence(spec, bits=None, check_ceiling=CHECK_CEILING):
    """Run every hypothesis check on one recurrence and collect its asymptotic data."""
    bits = bits or PRECISION_BITS
    logger.info(f"🚀 Analyzing sequence '{spec.label}' at {bits} bits")
    with working_precision(bits):
        monotonicity_threshold(spec, ceiling=check_ceiling)
        minimal = minimal_spec(spec)
        roots = analyze_roots(char_poly(minimal), Fraction(1, 2**bits))
        verdict = nondegeneracy_check(roots)
        if not verdict.passed:
            raise HypothesisFailure(verdict.detail, stage="non-degeneracy", witness=verdict.witness)
        coefficients = binet_coefficients(minimal, roots)
        exact = exact_binet(minimal, roots)
        alpha = roots.dominant_root
        leading = tuple(binet_number(exact, alpha, l) for l in range(roots.multiplicities[0]))
        sigma = len(coefficients[0]) - 1
        envelope = envelope_constants(roots, coefficients)
        verify_envelope(spec, (roots, coefficients, leading, envelope), check_ceiling)
        growth = growth_constants(spec, roots, coefficients, envelope, check_ceiling)
        n0 = monotonicity_threshold(spec, growth, check_ceiling)
        n1 = coefficient_threshold(dominant_coefficients(coefficients))
    logger.info(f"✅ '{spec.label}' analyzed: sigma={sigma}, N0={n0}, N1={n1}, N2={growth.start}")
    return SequenceAnalysis(
        spec=spec,
        minimal=minimal,
        roots=roots,
        coefficients=coefficients,
        exact=exact,
        leading=leading,
        sigma=sigma,
        envelope=envelope,
        growth=growth,
        monotone_from=n0,
        coefficient_from=n1,
        precision_bits=roots.precision_bits,
    )
