"""Lower bounds for linear forms in logarithms (Baker-Wustholz).

For Lambda = b_1 log eta_1 + ... + b_k log eta_k != 0 with eta_i in a field
of degree d,

    log |Lambda| >= -C(k, d) h'(eta_1) ... h'(eta_k) log B,

where C(k, d) = 18 (k+1)! k^(k+1) (32 d)^(k+2) log(2 k d) and B = max(|b_i|, e).
"""
import logging
import math
from dataclasses import dataclass

from mpmath import iv

from scripts.algebraic.algebraic_numbers import as_algebraic, linear_form_height, modified_height
from scripts.common.errors import NonPositiveValue
from scripts.common.intervals import certainly_positive, to_interval, working_precision
from scripts.config.settings import PRECISION_BITS

# -----------------------
# Logging setup
# -----------------------
logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LinearFormInstance:
    field_degree: int
    entries: tuple
    coefficients: tuple
    heights: tuple = None

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(as_algebraic(e) for e in self.entries))
        object.__setattr__(self, "coefficients", tuple(int(b) for b in self.coefficients))
        if not self.entries or len(self.entries) != len(self.coefficients):
            raise ValueError("need one integer coefficient per entry")
        if self.field_degree < 1:
            raise ValueError("field degree must be positive")
        if not any(self.coefficients):
            raise ValueError("linear form with all coefficients zero")
        for eta in self.entries:
            if eta.is_rational and eta.rational_value() == 1:
                raise ValueError("entry 1 contributes log 1 = 0")
            if not eta.is_real or not certainly_positive(eta.real_enclosure(PRECISION_BITS)):
                raise NonPositiveValue(f"entry {eta!r} is not a positive real", stage="linear form")

    @property
    def k(self):
        return len(self.entries)

    def modified_heights(self, bits=None):
        if self.heights is not None:
            return tuple(to_interval(h) for h in self.heights)
        return tuple(modified_height(eta, self.field_degree, bits) for eta in self.entries)

    def value(self, bits=None):
        """Certified enclosure of Lambda."""
        bits = bits or PRECISION_BITS
        with working_precision(bits):
            total = iv.mpf(0)
            for b, eta in zip(self.coefficients, self.entries):
                total += b * iv.ln(eta.real_enclosure(bits))
            return total

    def to_dict(self):
        return {
            "k": self.k,
            "d": self.field_degree,
            "entries": [e.to_dict() for e in self.entries],
            "coefficients": list(self.coefficients),
        }


def bw_factor(k, d):
    """Exact integer 18 (k+1)! k^(k+1) (32 d)^(k+2)."""
    if k < 1 or d < 1:
        raise ValueError("k and d must be positive")
    return 18 * math.factorial(k + 1) * k ** (k + 1) * (32 * d) ** (k + 2)


def bw_constant(k, d, bits=None):
    with working_precision(bits or PRECISION_BITS):
        return iv.mpf(bw_factor(k, d)) * iv.ln(iv.mpf(2 * k * d))


def lambda_lower_bound(inst, bits=None):
    """Lower enclosure of log|Lambda|; the caller guarantees Lambda != 0."""
    bits = bits or PRECISION_BITS
    with working_precision(bits):
        product = iv.mpf(1)
        for h in inst.modified_heights(bits):
            product *= h
        bound = -bw_constant(inst.k, inst.field_degree, bits) * product * linear_form_height(inst.coefficients)
    logger.debug(f"log|Lambda| >= {bound} for k={inst.k}, d={inst.field_degree}")
    return bound


def phi_lower_bound(inst, bits=None):
    """log|e^Lambda - 1| >= log|Lambda| - log 2 whenever |Lambda| <= 1/2."""
    bits = bits or PRECISION_BITS
    with working_precision(bits):
        return lambda_lower_bound(inst, bits) - iv.ln(iv.mpf(2))
