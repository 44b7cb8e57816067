import json
import logging
from dataclasses import dataclass
from pathlib import Path

import sympy
from sympy import Poly

from scripts.common.errors import SpecParseError
from scripts.config.settings import MAX_ORDER

# -----------------------
# Logging setup
# -----------------------
logger = logging.getLogger(__name__)

X = sympy.Symbol("X")
Z = sympy.Symbol("z")


# -----------------------
# Recurrence spec
# -----------------------
@dataclass(frozen=True)
class RecurrenceSpec:
    """U_{n+k} = c_1 U_{n+k-1} + ... + c_k U_n with integer data."""

    label: str
    coefficients: tuple
    initial: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) for c in self.coefficients))
        object.__setattr__(self, "initial", tuple(int(u) for u in self.initial))
        if not self.coefficients:
            raise ValueError("recurrence needs at least one coefficient")
        if len(self.initial) != len(self.coefficients):
            raise ValueError(
                f"order {len(self.coefficients)} needs {len(self.coefficients)} initial terms, got {len(self.initial)}"
            )
        if self.coefficients[-1] == 0:
            raise ValueError("last coefficient c_k must be nonzero")
        if not any(self.initial):
            raise ValueError("initial terms must not all be zero")
        if self.order > MAX_ORDER:
            raise ValueError(f"order {self.order} exceeds the configured ceiling {MAX_ORDER}")

    @property
    def order(self):
        return len(self.coefficients)

    def negated(self):
        return RecurrenceSpec(f"-{self.label}", self.coefficients, tuple(-u for u in self.initial))

    def to_dict(self):
        return {"label": self.label, "coefficients": list(self.coefficients), "initial": list(self.initial)}


# -----------------------
# Terms
# -----------------------
def terms(spec, upto):
    """Exact terms U_0 .. U_upto."""
    k = spec.order
    values = list(spec.initial[: upto + 1])
    for n in range(k, upto + 1):
        values.append(sum(c * values[n - i] for i, c in enumerate(spec.coefficients, start=1)))
    return values


def term(spec, n):
    if n < 0:
        raise ValueError("term index must be non-negative")
    if n < spec.order:
        return spec.initial[n]
    window = list(spec.initial)
    for _ in range(n - spec.order + 1):
        nxt = sum(c * window[-i] for i, c in enumerate(spec.coefficients, start=1))
        window = window[1:] + [nxt]
    return window[-1]


def char_poly(spec):
    """X^k - c_1 X^{k-1} - ... - c_k."""
    return Poly([1] + [-c for c in spec.coefficients], X)


# -----------------------
# Minimal recurrence
# -----------------------
def minimal_spec(spec):
    """Shortest recurrence generating the same sequence.

    The generating function is P(z)/Q(z) with Q(z) = 1 - sum c_i z^i; dividing
    out gcd(P, Q) leaves the minimal denominator.
    """
    k = spec.order
    q_coeffs = [1] + [-c for c in spec.coefficients]
    p_coeffs = [
        spec.initial[j] - sum(spec.coefficients[i - 1] * spec.initial[j - i] for i in range(1, j + 1))
        for j in range(k)
    ]
    q = Poly(list(reversed(q_coeffs)), Z)
    p = Poly(list(reversed(p_coeffs)), Z)
    g = p.gcd(q)
    if g.degree() == 0:
        return spec
    if g.eval(0) < 0:
        g = -g
    reduced = q.exquo(g)
    order = reduced.degree()
    coefficients = tuple(-int(reduced.coeff_monomial(Z**i)) for i in range(1, order + 1))
    logger.info(f"ℹ️ {spec.label}: recurrence reduced from order {k} to {order}")
    return RecurrenceSpec(spec.label, coefficients, tuple(terms(spec, order - 1)))


# -----------------------
# Spec files
# -----------------------
def spec_from_dict(data, path="<memory>"):
    try:
        return RecurrenceSpec(str(data["label"]), tuple(data["coefficients"]), tuple(data["initial"]))
    except KeyError as e:
        raise SpecParseError(path, 1, 1, f"missing field {e}")
    except (TypeError, ValueError) as e:
        raise SpecParseError(path, 1, 1, str(e))


def load_spec(path):
    """Read a JSON spec file; I/O errors propagate, syntax errors carry line and column."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        logger.error(f"❌ Could not parse {path}: {e}")
        raise SpecParseError(str(path), e.lineno, e.colno, e.msg)
    if not isinstance(data, dict):
        raise SpecParseError(str(path), 1, 1, "top level must be an object")
    spec = spec_from_dict(data, str(path))
    logger.info(f"✅ Loaded recurrence '{spec.label}' of order {spec.order} from {path}")
    return spec
