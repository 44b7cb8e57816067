"""Explicit upper bound for m in U_n - V_m = U_n1 - V_m1.

The chain compares the two growth rates, then closes three linear forms in
three logarithms (Case 0, Cases 1 and 2, Case 3) with the Baker-Wustholz
bound. Each stage also turns a vanishing form into an integer exit bound
through C0. Every constant is recorded in a Trace with its formula.
"""
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import iv

from scripts.algebraic.algebraic_numbers import modified_height, weil_height
from scripts.algebraic.independence import mult_independent
from scripts.algebraic.places import compositum, compute_C0
from scripts.algebraic.poly_height import poly_ratio_height_bound
from scripts.bounds.bound_report import BoundReport, ChainResult, Trace
from scripts.bounds.log_inequality import exit_bound, least_true, solve_log_inequality
from scripts.common.errors import EqualDominantModuli, HypothesisFailure
from scripts.common.intervals import (
    certainly_ge,
    certainly_gt,
    certainly_le,
    certainly_lt,
    imax,
    imin,
    round_down,
    round_up,
    to_interval,
    upper,
    working_precision,
)
from scripts.config.settings import FALLBACK_FLOOR, PRECISION_BITS
from scripts.linear_forms.baker_wustholz import bw_constant
from scripts.recurrence.recurrence_core import terms

# -----------------------
# Logging setup
# -----------------------
logger = logging.getLogger(__name__)

DIRECT = "n>n1"
INTERCHANGED = "n<n1"


def I(x):
    return to_interval(x)


def ln(x):
    return iv.ln(to_interval(x))


# -----------------------
# Per-sequence coefficient data
# -----------------------
@dataclass(frozen=True)
class CoefficientProfile:
    """Bounds on |a(n)| / n^s for n >= start: [low, total], and L = max(|log low|, log total)."""

    start: int
    low: Fraction
    total: Fraction
    spread: object


def coefficient_profile(analysis, start, bits):
    lead = analysis.a_coefficients
    s = analysis.sigma
    with working_precision(bits):
        total = round_up(sum((abs(c) for c in lead), iv.mpf(0)))
        tail = iv.mpf(0)
        for l in range(s):
            tail += abs(lead[l]) / iv.mpf(start) ** (s - l)
        low = round_down(abs(lead[s]) - tail)
        if low <= 0:
            raise HypothesisFailure(f"|a(n)| / n^s of {analysis.label} not bounded below from n={start}", stage="growth")
        spread = imax(abs(ln(low)), ln(total))
    return CoefficientProfile(start, low, total, spread)


@dataclass
class ChainContext:
    U: object
    V: object
    c0: Fraction
    degree: int
    bits: int
    trace: Trace = field(default_factory=Trace)
    exits: dict = field(default_factory=dict)
    thresholds: dict = field(default_factory=dict)
    heights: dict = field(default_factory=dict)
    a: CoefficientProfile = None
    b: CoefficientProfile = None

    @property
    def modulus_u(self):
        return self.U.modulus(self.bits)

    @property
    def modulus_v(self):
        return self.V.modulus(self.bits)

    @property
    def log_gap_u(self):
        """log(|alpha| / alpha')."""
        return ln(self.modulus_u / I(self.U.envelope.alpha_prime))

    @property
    def log_gap_v(self):
        return ln(self.modulus_v / I(self.V.envelope.alpha_prime))


# -----------------------
# Orientation
# -----------------------
def orient(U, V, bits=None):
    """Order the pair so that |alpha| > |beta|; returns (U, V, swapped)."""
    bits = bits or max(U.precision_bits, V.precision_bits)
    with working_precision(bits):
        mu, mv = U.modulus(bits), V.modulus(bits)
        if certainly_gt(mu, mv):
            return U, V, False
        if certainly_lt(mu, mv):
            logger.info(f"ℹ️ Swapping {U.label} and {V.label} so the larger dominant root comes first")
            return V, U, True
    raise EqualDominantModuli(f"dominant roots of {U.label} and {V.label} have equal modulus")


# -----------------------
# Cross-sequence growth
# -----------------------
def cross_constants(ctx):
    """C9, M3, N3, N4, M4 for the oriented pair in `ctx`."""
    U, V, t = ctx.U, ctx.V, ctx.trace
    sigma, tau = U.sigma, V.sigma
    c5, c6 = U.growth.gap_upper, U.growth.gap_lower
    c7, c8 = V.growth.gap_upper, V.growth.gap_lower
    with working_precision(ctx.bits):
        t.record("C1", U.growth.lower, "growth lower constant of U", (), "growth sandwich of U")
        t.record("C2", U.growth.upper, "growth upper constant of U", (), "growth sandwich of U")
        t.record("C3", V.growth.lower, "growth lower constant of V", (), "growth sandwich of V")
        t.record("C4", V.growth.upper, "growth upper constant of V", (), "growth sandwich of V")
        t.record("C5", c5, "C2 (1 + 1/|alpha|)", (2,), "difference bound for U")
        t.record("C6", c6, "C1 - C2/|alpha|", (1, 2), "difference bound for U")
        t.record("C7", c7, "C4 (1 + 1/|beta|)", (4,), "difference bound for V")
        t.record("C8", c8, "C3 - C4/|beta|", (3, 4), "difference bound for V")

        log_u, log_v = ln(ctx.modulus_u), ln(ctx.modulus_v)
        c9 = t.record(
            "C9",
            round_up(imax(iv.mpf(0), ln(I(c7) / I(c6)) / log_u)),
            "max(0, log(C7/C6) / log|alpha|)",
            (6, 7),
            "index comparison",
        )
        m3 = solve_log_inequality(1 - log_v / log_u, tau / log_u, 1, c9, ctx.bits)
        t.record("M3", m3, "least m with m > m log|beta|/log|alpha| + tau log m/log|alpha| + C9", (9,), "index comparison")

        target = I(c8) * iv.mpf(m3) ** tau * ctx.modulus_v**m3
        n3 = least_true(
            lambda n: not certainly_lt(I(c5) * iv.mpf(n) ** sigma * ctx.modulus_u**n, target), 1
        )
        t.record("N3", n3, "least n with C5 n^sigma |alpha|^n >= C8 M3^tau |beta|^M3", (5, 8), "index comparison")

    n4 = max(U.monotone_from, U.coefficient_from, U.growth.start, n3, 2)
    m4 = max(V.monotone_from, V.coefficient_from, V.growth.start, m3, 2)
    t.record("N4", n4, "max(N0, N1, N2, N3, 2)", (), "thresholds")
    t.record("M4", m4, "max(M0, M1, M2, M3, 2)", (), "thresholds")
    ctx.thresholds.update({"C9": c9, "M3": m3, "N3": n3, "N4": n4, "M4": m4})
    logger.info(f"✅ Cross constants: C9={float(c9):.6g}, M3={m3}, N3={n3}, N4={n4}, M4={m4}")
    return c9, m3, n3, n4, m4


def _prepare(ctx):
    U, V, t = ctx.U, ctx.V, ctx.trace
    ctx.a = coefficient_profile(U, ctx.thresholds["N4"], ctx.bits)
    ctx.b = coefficient_profile(V, ctx.thresholds["M4"], ctx.bits)
    t.record("a_low", ctx.a.low, "inf |a(n)|/n^sigma for n >= N4", (), "coefficient bounds")
    t.record("a_total", ctx.a.total, "sum |a_l|", (), "coefficient bounds")
    t.record("b_low", ctx.b.low, "inf |b(m)|/m^tau for m >= M4", (), "coefficient bounds")
    t.record("b_total", ctx.b.total, "sum |b_l|", (), "coefficient bounds")

    d = ctx.degree
    with working_precision(ctx.bits):
        h = ctx.heights
        h["alpha"] = modified_height(U.alpha.absolute(), d, ctx.bits)
        h["beta"] = modified_height(V.alpha.absolute(), d, ctx.bits)
        h["h0_alpha"] = weil_height(U.alpha, ctx.bits)
        h["h0_beta"] = weil_height(V.alpha, ctx.bits)
        h["bw"] = bw_constant(3, d, ctx.bits)
        h["ab"] = poly_ratio_height_bound(U.leading, V.leading, ctx.bits)
        h["aa"] = poly_ratio_height_bound(U.leading, U.leading, ctx.bits)
        h["bb"] = poly_ratio_height_bound(V.leading, V.leading, ctx.bits)
    t.record("h'(alpha)", h["alpha"], "(1/d) max(d h0(|alpha|), log|alpha|, 1)", (), "modified heights")
    t.record("h'(beta)", h["beta"], "(1/d) max(d h0(|beta|), log|beta|, 1)", (), "modified heights")
    t.record("C(3,d)", h["bw"], "18 4! 3^4 (32d)^5 log(6d)", (), "linear form constant")
    t.record("Ctilde", h["ab"], "height constant of a(n)/b(m)", (), "polynomial ratio heights")
    t.record("Ctilde_aa", h["aa"], "height constant of a(n1)/a(n)", (), "polynomial ratio heights")
    t.record("Ctilde_bb", h["bb"], "height constant of b(m1)/b(m)", (), "polynomial ratio heights")


def _floor_clause(values, power, m3):
    worst = imax(*[ln(I(v) / I(FALLBACK_FLOOR)) for v in values])
    return worst / ln(m3) ** power


# -----------------------
# Case 0
# -----------------------
def case0(ctx, c0):
    """C11..C18 and the exit for a vanishing Case-0 form; returns C18."""
    U, V, t, h = ctx.U, ctx.V, ctx.trace, ctx.heights
    c6, c7 = U.growth.gap_lower, V.growth.gap_upper
    d, sigma, tau = ctx.degree, U.sigma, V.sigma
    logger.info("🚀 Case 0")
    with working_precision(ctx.bits):
        ln2, ln3 = ln(2), ln(3)
        denom = I(c6) * I(ctx.b.low)
        c11 = t.record("C11", round_up(I(c7) * I(ctx.a.total) / denom), "C7 a_total / (C6 b_low)", (6, 7),
                       "case-0 ratio bound for a(n1) alpha^n1")
        c12 = t.record("C12", round_up(I(c7) * I(U.envelope.scale) / denom), "C7 a' / (C6 b_low)", (6, 7),
                       "case-0 envelope of U at n1")
        c13 = t.record("C13", c12, "C7 a' / (C6 b_low)", (6, 7), "case-0 envelope of U at n")
        c14 = t.record("C14", round_up(I(V.envelope.scale) / I(ctx.b.low)), "b' / b_low", (), "case-0 envelope of V at m1")
        c15 = t.record("C15", c14, "b' / b_low", (), "case-0 envelope of V at m")
        c16 = t.record("C16", 2 * (c11 + c12 + c13), "2 (C11 + C12 + C13)", (11, 12, 13), "case-0 ratio bound")
        c17 = t.record("C17", 2 * (1 + c14 + c15), "2 (1 + C14 + C15)", (14, 15), "case-0 ratio bound")

        spread = (ctx.a.spread + ctx.b.spread) / ln2 + sigma + tau
        eta_height = imax(d * I(h["ab"]), spread, 1 / ln2) / d
        t.record("Ctilde'", round_up(eta_height), "max(d Ctilde, (L_a + L_b)/log 2 + sigma + tau, 1/log 2) / d",
                 (), "case-0 height of the coefficient ratio")
        core = h["bw"] * eta_height * h["alpha"] * h["beta"] + (ln2 + imax(0, ln(c16), ln(c17))) / ln3**2
        floor = _floor_clause((c16, c17), 2, ctx.thresholds["M3"])
        c18 = t.record("C18", round_up(imax(core, floor)),
                       "max(C(3,d) Ctilde' h'(alpha) h'(beta) + (log 2 + log+ max(C16, C17)) / (log 3)^2, "
                       "max log(C16/0.648), log(C17/0.648) / (log M3)^2)",
                       (16, 17), "case-0 gap bound")

    ctx.exits["case0"] = exit_bound(c0, h["ab"], 1, 0, ctx.bits)
    logger.info(f"✅ C18 = {float(c18):.6g}, vanishing-form exit m <= {ctx.exits['case0']}")
    return c18


# -----------------------
# Cases 1 and 2
# -----------------------
def case12(ctx, c18):
    """C19..C35 and the exits for vanishing Case-1 and Case-2 forms; returns C35."""
    U, V, t, h = ctx.U, ctx.V, ctx.trace, ctx.heights
    c5, c6 = U.growth.gap_upper, U.growth.gap_lower
    c7, c8 = V.growth.gap_upper, V.growth.gap_lower
    d, sigma, tau = ctx.degree, U.sigma, V.sigma
    c0 = ctx.trace["C0"]
    logger.info("🚀 Cases 1 and 2")
    with working_precision(ctx.bits):
        ln2, ln3 = ln(2), ln(3)
        gap_u, gap_v = ctx.log_gap_u, ctx.log_gap_v
        denom = I(c6) * I(ctx.b.low)
        c19 = t.record("C19", round_up(I(c7) * I(U.envelope.scale) / denom), "C7 a' / (C6 b_low)", (6, 7),
                       "case-1 envelope of U at n")
        c20 = t.record("C20", c19, "C7 a' / (C6 b_low)", (6, 7), "case-1 envelope of U at n1")
        c21 = t.record("C21", round_up(I(V.envelope.scale) / I(ctx.b.low)), "b' / b_low", (), "case-1 envelope of V at m")
        c22 = t.record("C22", c21, "b' / b_low", (), "case-1 envelope of V at m1")
        c23 = t.record("C23", 1 + c19 + c20 + c21 + c22, "1 + C19 + C20 + C21 + C22", (19, 20, 21, 22),
                       "case-1 ratio bound")
        c24 = t.record("C24", round_up(I(U.envelope.scale) / I(ctx.a.low)), "a' / a_low", (), "case-2 envelope of U at n")
        c25 = t.record("C25", c24, "a' / a_low", (), "case-2 envelope of U at n1")
        c26 = t.record("C26", round_up(I(V.envelope.scale) * I(c5) / (I(ctx.a.low) * I(c8))), "b' C5 / (a_low C8)",
                       (5, 8), "case-2 envelope of V at m")
        c27 = t.record("C27", c26, "b' C5 / (a_low C8)", (5, 8), "case-2 envelope of V at m1")
        c28 = t.record("C28", 1 + c24 + c25 + c26 + c27, "1 + C24 + C25 + C26 + C27", (24, 25, 26, 27),
                       "case-2 ratio bound")

        c29 = t.record(
            "C29",
            round_up(I(c18) * h["h0_alpha"] / gap_u + (I(h["ab"]) + I(h["aa"])) / ln3 + ln2 / ln3**2),
            "C18 h0(alpha)/log(|alpha|/alpha') + (Ctilde + Ctilde_aa)/log 3 + log 2/(log 3)^2",
            (18,), "case-1 height of the composite coefficient",
        )
        shared = (ctx.a.spread + ctx.b.spread + ln2) / ln3**2 + iv.mpf(sigma + tau) / ln3
        spread_u = shared + abs(ln(ctx.modulus_u - 1)) / ln3**2 + ln(ctx.modulus_u) * I(c18) / gap_u
        c30 = t.record("C30", round_up(imax(d * I(c29), spread_u, 1 / ln3**2) / d),
                       "max(d C29, D1, 1/(log 3)^2) / d", (29, 18), "case-1 modified height")
        c31 = t.record(
            "C31",
            round_up(I(c18) * h["h0_beta"] / gap_v + (I(h["ab"]) + I(h["bb"])) / ln3 + ln2 / ln3**2),
            "C18 h0(beta)/log(|beta|/beta') + (Ctilde + Ctilde_bb)/log 3 + log 2/(log 3)^2",
            (18,), "case-2 height of the composite coefficient",
        )
        spread_v = shared + abs(ln(ctx.modulus_v - 1)) / ln3**2 + ln(ctx.modulus_v) * I(c18) / gap_v
        c32 = t.record("C32", round_up(imax(d * I(c31), spread_v, 1 / ln3**2) / d),
                       "max(d C31, D2, 1/(log 3)^2) / d", (31, 18), "case-2 modified height")

        base = h["bw"] * h["alpha"] * h["beta"]
        c33 = t.record("C33",
                       round_up(imax(base * I(c30) + (ln2 + imax(0, ln(c23))) / ln3**3, I(c18) / ln3)),
                       "max(C(3,d) C30 h'(alpha) h'(beta) + (log 2 + log+ C23)/(log 3)^3, C18/log 3)",
                       (30, 23, 18), "case-1 gap bound")
        c34 = t.record("C34",
                       round_up(imax(base * I(c32) + (ln2 + imax(0, ln(c28))) / ln3**3, I(c18) / ln3)),
                       "max(C(3,d) C32 h'(alpha) h'(beta) + (log 2 + log+ C28)/(log 3)^3, C18/log 3)",
                       (32, 28, 18), "case-2 gap bound")
        floor = _floor_clause((c28, c23), 3, ctx.thresholds["M3"])
        c35 = t.record("C35", round_up(imax(I(max(c33, c34)), floor)),
                       "max(C33, C34, max log(C28/0.648), log(C23/0.648) / (log M3)^3)",
                       (33, 34, 28, 23), "case-1/2 gap bound")
        exit2_slope = I(c31) + I(c0) * I(c18) / gap_v

    ctx.exits["case1"] = exit_bound(c0, c29, 2, 0, ctx.bits)
    ctx.exits["case2"] = exit_bound(c0, round_up(exit2_slope), 2, 0, ctx.bits)
    logger.info(f"✅ C35 = {float(c35):.6g}, exits m <= {ctx.exits['case1']}, {ctx.exits['case2']}")
    return c35


# -----------------------
# Case 3
# -----------------------
def case3(ctx, c35):
    """gamma, Gamma, C36..C45 and the exit for a vanishing Case-3 form; returns C45."""
    U, V, t, h = ctx.U, ctx.V, ctx.trace, ctx.heights
    d, sigma, tau = ctx.degree, U.sigma, V.sigma
    c0, c9 = ctx.trace["C0"], ctx.thresholds["C9"]
    logger.info("🚀 Case 3")
    with working_precision(ctx.bits):
        ln2, ln3 = ln(2), ln(3)
        mu, mv = ctx.modulus_u, ctx.modulus_v
        gap_u, gap_v = ctx.log_gap_u, ctx.log_gap_v
        alpha_prime, beta_prime = I(U.envelope.alpha_prime), I(V.envelope.alpha_prime)

        gamma = t.record("gamma", iv.exp(ln(mv) * ln(alpha_prime) / ln(mu)), "|beta|^(log alpha' / log|alpha|)",
                         (), "case-3 rate")
        big_gamma = t.record("Gamma", imin(mv / beta_prime, mv / gamma), "min(|beta|/beta', |beta|/gamma)",
                             (), "case-3 rate")
        if not (certainly_gt(big_gamma, 1) and certainly_gt(mv, gamma) and certainly_gt(gamma, 1)):
            raise HypothesisFailure("Gamma > 1 not certified", stage="case 3")

        shrink = I(ctx.b.low) * (1 - 1 / mv)
        c36 = t.record("C36", round_up(iv.exp(I(c9) * ln(alpha_prime))), "alpha'^C9", (9,), "case-3 index transfer")
        c37 = t.record("C37", round_up(I(c36) * I(U.envelope.scale) / shrink), "C36 a' / (b_low (1 - 1/|beta|))",
                       (36,), "case-3 envelope of U")
        c38 = t.record("C38", round_up(I(V.envelope.scale) / shrink), "b' / (b_low (1 - 1/|beta|))", (),
                       "case-3 envelope of V at m")
        c39 = t.record("C39", c38, "b' / (b_low (1 - 1/|beta|))", (), "case-3 envelope of V at m1")
        c40 = t.record("C40", 2 * c37 + c38 + c39, "2 C37 + C38 + C39", (37, 38, 39), "case-3 ratio bound")

        c41 = t.record(
            "C41",
            round_up(I(c35) * (h["h0_alpha"] / gap_u + h["h0_beta"] / gap_v)
                     + (I(h["ab"]) + I(h["aa"]) + I(h["bb"])) / ln3**2 + 2 * ln2 / ln3**3),
            "C35 (h0(alpha)/log(|alpha|/alpha') + h0(beta)/log(|beta|/beta')) "
            "+ (Ctilde + Ctilde_aa + Ctilde_bb)/(log 3)^2 + 2 log 2/(log 3)^3",
            (35,), "case-3 height of the composite coefficient",
        )
        spread = ((ctx.a.spread + ctx.b.spread + abs(ln(mu - 1)) + abs(ln(mv - 1)) + 2 * ln2) / ln3**3
                  + iv.mpf(sigma + tau) / ln3**2
                  + I(c35) * (ln(mu) / gap_u + ln(mv) / gap_v))
        c42 = t.record("C42", round_up(imax(d * I(c41), spread, 1 / ln3**3) / d),
                       "max(d C41, D3, 1/(log 3)^3) / d", (41, 35), "case-3 modified height")
        c43 = t.record("C43", round_up(I(c41) + I(c0) * I(c35) / gap_v), "C41 + C0 C35 / log(|beta|/beta')",
                       (41, 0, 35), "case-3 vanishing form")
        c44 = t.record("C44", round_up(h["bw"] * I(c42) * h["alpha"] * h["beta"]), "C(3,d) C42 h'(alpha) h'(beta)",
                       (42,), "case-3 linear form bound")

        log_gamma = ln(big_gamma)
        if c40 == 0:
            # the ratio bound forces the form to vanish, which the exit covers
            crossing = fallback = 2
        else:
            crossing = solve_log_inequality(log_gamma, c44, 4, ln2 + ln(c40), ctx.bits)
            fallback = math.floor(upper(ln(I(c40) / I(FALLBACK_FLOOR)) / log_gamma)) + 1
    c45 = t.record("C45", max(crossing, fallback, ctx.thresholds["M4"]),
                   "max(least m with m log Gamma > C44 (log m)^4 + log 2 + log C40, "
                   "log(C40/0.648)/log Gamma, M4)",
                   (44, 40), "final bound")
    ctx.exits["case3"] = exit_bound(c0, c43, 3, 0, ctx.bits)
    logger.info(f"✅ C45 = {c45}, vanishing-form exit m <= {ctx.exits['case3']}")
    return c45


def small_index_exit(ctx):
    """Largest m possible when n <= N4, from C8 m^tau |beta|^m <= 2 max_{n <= N4} |U_n|."""
    U, V = ctx.U, ctx.V
    n4 = ctx.thresholds["N4"]
    ceiling = 2 * max(abs(u) for u in terms(U.spec, n4))
    c8, tau = V.growth.gap_lower, V.sigma
    with working_precision(ctx.bits):
        mv = ctx.modulus_v
        least = least_true(
            lambda m: certainly_gt(I(c8) * iv.mpf(m) ** tau * mv**m, ceiling), V.growth.start + 1
        )
    return least - 1


# -----------------------
# Orchestration
# -----------------------
def _run_branch(U, V, places, degree, bits, branch):
    ctx = ChainContext(U=U, V=V, c0=places.c0, degree=degree, bits=bits)
    ctx.trace.record("C0", places.c0, "min(Ctilde1, Ctilde2) / |S|", (), "height of alpha^n / beta^m")
    cross_constants(ctx)
    _prepare(ctx)
    c18 = case0(ctx, places.c0)
    c35 = case12(ctx, c18)
    c45 = case3(ctx, c35)
    ctx.exits["small_n"] = small_index_exit(ctx)
    bound = max(c45 - 1, ctx.thresholds["M4"], *ctx.exits.values())
    logger.info(f"✅ Branch {branch}: m <= {bound}")
    return ChainResult(branch, ctx.trace, dict(ctx.exits), bound, context=ctx)


def derive_all(U, V, bits=None):
    """Bound every solution of U_n - V_m = U_n1 - V_m1 with m > m1.

    Both signs of n - n1 are covered; the second branch runs the chain on -V.
    """
    bits = bits or max(PRECISION_BITS, U.precision_bits, V.precision_bits)
    logger.info(f"🚀 Deriving the bound for ({U.label}, {V.label})")
    verdict = mult_independent(U.alpha, V.alpha)
    if not verdict.passed:
        logger.error(f"❌ Dominant roots are multiplicatively dependent: {verdict.detail}")
        raise HypothesisFailure(
            f"dominant roots are multiplicatively dependent: {verdict.detail}",
            stage="independence",
            witness=list(verdict.witness),
        )
    U, V, swapped = orient(U, V, bits)
    field_data = compositum(U.alpha, V.alpha)
    places = compute_C0(U.alpha, V.alpha, field_data)

    report = BoundReport(U=U, V=V, swapped=swapped, places=places, independence=verdict)
    report.passes.append(_run_branch(U, V, places, field_data.degree, bits, DIRECT))
    report.passes.append(_run_branch(U, V.negated(), places, field_data.degree, bits, INTERCHANGED))
    logger.info(f"✅ Bound for ({U.label}, {V.label}): m <= {report.bound}")
    return report


# -----------------------
# Audits
# -----------------------
def _orient_solution(report, first, second):
    """Map two representations (n, m), (n1, m1) in the caller's order to the oriented pair."""
    (n, m), (n1, m1) = first, second
    if report.swapped:
        n, m, n1, m1 = m, n, m1, n1
    if m < m1:
        n, m, n1, m1 = n1, m1, n, m
    return n, m, n1, m1


def audit_tuple(report, n, m, n1, m1, branch=DIRECT):
    """Re-check the traced inequalities at (n, m, n1, m1) with exact terms; n1 < n and m1 < m.

    Inequalities that only hold for solutions are checked under their
    premise and count as passed otherwise: C6 n^s |alpha|^n <= C7 m^t |beta|^m
    for the index comparison and Cases 0, 1 and 3, C8 m^t |beta|^m <= C5 n^s |alpha|^n
    for Case 2.
    """
    result = report.branch(branch)
    ctx, t = result.context, result.trace
    U, V = ctx.U, ctx.V
    s, tau = U.sigma, V.sigma
    checks = {}
    with working_precision(ctx.bits):
        mu, mv = ctx.modulus_u, ctx.modulus_v
        u = terms(U.spec, n)
        v = terms(V.spec, m)

        def scale_u(k):
            return iv.mpf(k) ** s * mu**k

        def scale_v(k):
            return iv.mpf(k) ** tau * mv**k

        def between(lo, x, hi):
            return certainly_le(lo, x) and certainly_le(x, hi)

        checks["growth_U"] = all(
            between(I(U.growth.lower) * scale_u(k), I(abs(u[k])), I(U.growth.upper) * scale_u(k)) for k in (n, n1)
        )
        checks["growth_V"] = all(
            between(I(V.growth.lower) * scale_v(k), I(abs(v[k])), I(V.growth.upper) * scale_v(k)) for k in (m, m1)
        )
        checks["difference_U"] = between(I(t["C6"]) * scale_u(n), I(abs(u[n] - u[n1])), I(t["C5"]) * scale_u(n))
        checks["difference_V"] = between(I(t["C8"]) * scale_v(m), I(abs(v[m] - v[m1])), I(t["C7"]) * scale_v(m))

        def a_poly(k):
            return abs(sum((c * k**l for l, c in enumerate(U.a_coefficients)), iv.mpf(0)))

        def b_value(k):
            return sum((c * k**l for l, c in enumerate(V.a_coefficients)), iv.mpf(0))

        def b_poly(k):
            return abs(b_value(k))

        checks["coefficients"] = (
            all(between(I(ctx.a.low), a_poly(k) / iv.mpf(k) ** s, I(ctx.a.total)) for k in (n, n1))
            and all(certainly_ge(b_poly(k) / iv.mpf(k) ** tau, I(ctx.b.low)) for k in (m, m1))
            and (s == 0 or certainly_lt(a_poly(n1), a_poly(n)))
            and (tau == 0 or certainly_lt(b_poly(m1), b_poly(m)))
        )

        premise = certainly_le(I(t["C6"]) * scale_u(n), I(t["C7"]) * scale_v(m))
        reverse = certainly_le(I(t["C8"]) * scale_v(m), I(t["C5"]) * scale_u(n))
        a_prime, b_prime = I(U.envelope.alpha_prime), I(V.envelope.alpha_prime)
        scale_a, scale_b = I(U.envelope.scale), I(V.envelope.scale)
        x_rate = 1 / (mu / a_prime) ** (n - n1)
        y_rate = 1 / (mv / b_prime) ** (m - m1)
        for key in ("index_comparison", "case0_terms", "case1_terms", "case2_terms", "case3_terms", "case3_transfer"):
            checks[key] = True

        if premise:
            log_u, log_v = ln(mu), ln(mv)
            rhs = m * log_v / log_u + tau * ln(m) / log_u + I(t["C9"])
            checks["index_comparison"] = certainly_le(n, rhs)
            base = b_poly(m) * mv**m
            checks["case0_terms"] = all((
                certainly_le(a_poly(n1) * mu**n1 / base, I(t["C11"]) * x_rate),
                certainly_le(scale_a * a_prime**n1 / base, I(t["C12"]) * x_rate),
                certainly_le(scale_a * a_prime**n / base, I(t["C13"]) * x_rate),
                certainly_le(b_poly(m1) * mv**m1 / base, y_rate),
                certainly_le(scale_b * b_prime**m1 / base, I(t["C14"]) * y_rate),
                certainly_le(scale_b * b_prime**m / base, I(t["C15"]) * y_rate),
            ))

            terms1 = (
                b_poly(m1) * mv**m1 / base,
                scale_a * a_prime**n / base,
                scale_a * a_prime**n1 / base,
                scale_b * b_prime**m / base,
                scale_b * b_prime**m1 / base,
            )
            case1 = [
                certainly_le(terms1[0], y_rate),
                certainly_le(terms1[1], I(t["C19"]) * (a_prime / mu) ** n),
                certainly_le(terms1[2], I(t["C20"]) * x_rate),
                certainly_le(terms1[3], I(t["C21"]) * (b_prime / mv) ** m),
                certainly_le(terms1[4], I(t["C22"]) / mv ** (m - m1)),
            ]
            if certainly_le(x_rate, y_rate):
                case1.append(certainly_le(sum(terms1, iv.mpf(0)), I(t["C23"]) * y_rate))
            checks["case1_terms"] = all(case1)

            gamma, big_gamma = t["gamma"], t["Gamma"]
            checks["case3_transfer"] = certainly_le(a_prime**n, I(t["C36"]) * iv.mpf(m) ** tau * gamma**m)
            beta = V.alpha.real_enclosure(ctx.bits)
            # |b(m) beta^m - b(m1) beta^m1| = |b(m)| |beta|^m1 |beta^(m - m1) - b(m1)/b(m)|
            gap = abs(b_value(m) * beta**m - b_value(m1) * beta**m1)
            terms3 = (
                scale_a * a_prime**n / gap,
                scale_a * a_prime**n1 / gap,
                scale_b * b_prime**m / gap,
                scale_b * b_prime**m1 / gap,
            )
            checks["case3_terms"] = all((
                certainly_ge(gap, I(ctx.b.low) * iv.mpf(m) ** tau * mv**m * (1 - 1 / mv)),
                certainly_le(terms3[0], I(t["C37"]) * (gamma / mv) ** m),
                certainly_le(terms3[1], I(t["C37"]) * (gamma / mv) ** m),
                certainly_le(terms3[2], I(t["C38"]) * (b_prime / mv) ** m),
                certainly_le(terms3[3], I(t["C39"]) * (b_prime / mv) ** m),
                certainly_le(sum(terms3, iv.mpf(0)), I(t["C40"]) / big_gamma**m),
            ))

        if reverse:
            base = a_poly(n) * mu**n
            terms2 = (
                a_poly(n1) * mu**n1 / base,
                scale_a * a_prime**n / base,
                scale_a * a_prime**n1 / base,
                scale_b * b_prime**m / base,
                scale_b * b_prime**m1 / base,
            )
            case2 = [
                certainly_le(terms2[0], x_rate),
                certainly_le(terms2[1], I(t["C24"]) * (a_prime / mu) ** n),
                certainly_le(terms2[2], I(t["C25"]) / mu ** (n - n1)),
                certainly_le(terms2[3], I(t["C26"]) * (b_prime / mv) ** m),
                certainly_le(terms2[4], I(t["C27"]) / mv ** (m - m1)),
            ]
            if certainly_le(y_rate, x_rate):
                case2.append(certainly_le(sum(terms2, iv.mpf(0)), I(t["C28"]) * x_rate))
            checks["case2_terms"] = all(case2)
    return checks


def lemma_checks(report, first, second):
    """Evaluate the Case-0 and Case-1/2 gap lemmas at an actual solution.

    `first` and `second` are the representations (n, m) and (n1, m1) of one c
    in the caller's sequence order.
    """
    n, m, n1, m1 = _orient_solution(report, first, second)
    if m == m1:
        return None
    branch = DIRECT if n >= n1 else INTERCHANGED
    result = report.branch(branch)
    ctx, t = result.context, result.trace
    with working_precision(ctx.bits):
        left = abs(n - n1) * ctx.log_gap_u
        right = (m - m1) * ctx.log_gap_v
        log_m = ln(m)
        return {
            "tuple": (n, m, n1, m1),
            "branch": branch,
            "case0": certainly_lt(imin(left, right), I(t["C18"]) * log_m**2),
            "case12": certainly_lt(imax(left, right), I(t["C35"]) * log_m**3),
        }
