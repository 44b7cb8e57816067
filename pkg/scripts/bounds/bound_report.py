import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import iv

from scripts.common.intervals import fraction_str, interval_json

# -----------------------
# Logging setup
# -----------------------
logger = logging.getLogger(__name__)

LAST_INDEX = 45
ABSENT_INDICES = (10,)


@dataclass(frozen=True)
class TraceEntry:
    name: str
    value: object
    formula: str
    depends_on: tuple = ()
    anchor: str = ""
    index: int = None

    def value_json(self):
        if self.value is None:
            return None
        if isinstance(self.value, bool):
            return self.value
        if isinstance(self.value, int):
            return str(self.value)
        if isinstance(self.value, Fraction):
            return fraction_str(self.value)
        if isinstance(self.value, (iv.mpf, iv.mpc)):
            return interval_json(self.value)
        return str(self.value)

    def to_dict(self):
        data = {
            "value": self.value_json(),
            "formula": self.formula,
            "depends_on": list(self.depends_on),
            "anchor": self.anchor,
        }
        if self.index is not None:
            data = {"index": self.index, **data}
        else:
            data = {"name": self.name, **data}
        return data


class Trace:
    """Ordered derivation record: numbered constants C0..C45 plus named quantities."""

    def __init__(self):
        self._entries = {}

    def record(self, name, value, formula, depends_on=(), anchor=""):
        index = int(name[1:]) if name.startswith("C") and name[1:].isdigit() else None
        if index in ABSENT_INDICES:
            raise ValueError(f"{name} has no role in the derivation")
        self._entries[name] = TraceEntry(name, value, formula, tuple(depends_on), anchor, index)
        logger.debug(f"{name} = {self._entries[name].value_json()}  [{formula}]")
        return value

    def __getitem__(self, name):
        return self._entries[name].value

    def __contains__(self, name):
        return name in self._entries

    def entries(self):
        return list(self._entries.values())

    def constants(self):
        """Every index 0..45 in order; indices with no role are marked absent."""
        rows = []
        for index in range(LAST_INDEX + 1):
            name = f"C{index}"
            if index in ABSENT_INDICES:
                rows.append({"index": index, "value": None, "formula": "absent", "depends_on": [], "anchor": "absent"})
            elif name in self._entries:
                rows.append(self._entries[name].to_dict())
        return rows

    def named(self):
        return [e.to_dict() for e in self._entries.values() if e.index is None]


@dataclass
class ChainResult:
    """One run of the chain for a fixed sign of n - n1."""

    branch: str
    trace: Trace
    exits: dict
    bound: int
    context: object = field(default=None, repr=False, compare=False)

    def to_dict(self):
        return {
            "branch": self.branch,
            "bound": str(self.bound),
            "exits": {k: str(v) for k, v in self.exits.items()},
            "constants": self.trace.constants(),
            "quantities": self.trace.named(),
        }


@dataclass
class BoundReport:
    """Outcome of derive_all; `U` and `V` are the oriented analyses, |alpha| > |beta|."""

    U: object
    V: object
    swapped: bool
    places: object
    independence: object
    passes: list = field(default_factory=list)

    @property
    def bound(self):
        return max(p.bound for p in self.passes)

    @property
    def exits(self):
        merged = {}
        for p in self.passes:
            for key, value in p.exits.items():
                merged[f"{p.branch}:{key}"] = value
        return merged

    @property
    def orientation(self):
        return "swapped" if self.swapped else "direct"

    def branch(self, name):
        return next(p for p in self.passes if p.branch == name)

    def to_dict(self):
        return {
            "U": self.U.label,
            "V": self.V.label,
            "bound": str(self.bound),
            "orientation": self.orientation,
            "exits": {k: str(v) for k, v in self.exits.items()},
            "independence": self.independence.to_dict(),
            "places": self.places.to_dict(),
            "passes": [p.to_dict() for p in self.passes],
        }

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent)
