"""Exact enumeration of c = U_n - V_m over a box of indices."""
import heapq
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import groupby
from multiprocessing import Pool
from pathlib import Path

import pandas as pd
from tqdm import tqdm

from scripts.common.errors import BoxTooLarge
from scripts.config.settings import BOX_CELL_CEILING, DEFAULT_LOW
from scripts.recurrence.recurrence_core import term, terms

# -----------------------
# Logging setup
# -----------------------
logger = logging.getLogger(__name__)

STRIPES_PER_WORKER = 4


# -----------------------
# Search box
# -----------------------
def parse_range(text):
    """'LO:HI' -> (LO, HI); either side may be omitted to keep the default low."""
    if ":" not in text:
        raise ValueError(f"range must look like LO:HI, got {text!r}")
    lo, hi = text.split(":", 1)
    return (int(lo) if lo else DEFAULT_LOW), int(hi)


@dataclass(frozen=True)
class SearchBox:
    n_lo: int
    n_hi: int
    m_lo: int
    m_hi: int

    def __post_init__(self):
        if self.n_lo < 0 or self.m_lo < 0:
            raise ValueError("search box indices must be non-negative")

    @classmethod
    def from_ranges(cls, n_range, m_range):
        (n_lo, n_hi), (m_lo, m_hi) = parse_range(n_range), parse_range(m_range)
        return cls(n_lo, n_hi, m_lo, m_hi)

    @property
    def is_empty(self):
        return self.n_lo > self.n_hi or self.m_lo > self.m_hi

    @property
    def cells(self):
        if self.is_empty:
            return 0
        return (self.n_hi - self.n_lo + 1) * (self.m_hi - self.m_lo + 1)

    def n_values(self):
        return range(self.n_lo, self.n_hi + 1)

    def m_values(self):
        return range(self.m_lo, self.m_hi + 1)

    def contains(self, other):
        return (self.n_lo <= other.n_lo and other.n_hi <= self.n_hi
                and self.m_lo <= other.m_lo and other.m_hi <= self.m_hi)

    def to_dict(self):
        return {"n": [self.n_lo, self.n_hi], "m": [self.m_lo, self.m_hi]}


# -----------------------
# Representation table
# -----------------------
@dataclass(frozen=True)
class RepresentationTable:
    entries: dict
    box: SearchBox
    labels: tuple = ("U", "V")

    def __len__(self):
        return len(self.entries)

    def __eq__(self, other):
        if not isinstance(other, RepresentationTable):
            return NotImplemented
        return self.entries == other.entries and self.box == other.box

    def pairs(self, c):
        return self.entries.get(c, ())

    def rows(self):
        """(c, n, m) sorted by c, then n, then m."""
        return [(c, n, m) for c in sorted(self.entries) for n, m in self.entries[c]]

    def to_frame(self):
        return pd.DataFrame(self.rows(), columns=["c", "n", "m"])

    def to_csv(self, path):
        self.to_frame().to_csv(path, index=False)
        logger.info(f"✅ Wrote {len(self.rows())} representations to {path}")

    def summary(self):
        multi = multi_represented(self)
        return {
            "U": self.labels[0],
            "V": self.labels[1],
            "box": self.box.to_dict(),
            "values": len(self.entries),
            "representations": sum(len(p) for p in self.entries.values()),
            "multi_represented": [str(c) for c in multi],
            "multi_count": len(multi),
            "pairs": {str(c): [list(p) for p in self.entries[c]] for c in multi},
        }


def _stripe_worker(task):
    """Representations for one stripe of n; big integers stay exact."""
    u_stripe, v_terms = task
    found = defaultdict(list)
    for n, u in u_stripe:
        for m, v in v_terms:
            found[u - v].append((n, m))
    return dict(found)


def _stripes(items, count):
    size = max(1, -(-len(items) // count))
    return [items[i:i + size] for i in range(0, len(items), size)]


def _check_box(box, ceiling):
    if box.cells > ceiling:
        raise BoxTooLarge(f"box has {box.cells} cells, ceiling is {ceiling}", stage="search")


def enumerate_representations(U, V, box, threads=1, ceiling=None, progress=False):
    """Table of every (n, m) in the box keyed by c = U_n - V_m.

    With threads > 1 the n-range is cut into stripes handled by a process
    pool; stripes come back in order so the merged table is identical to the
    serial one.
    """
    ceiling = ceiling or BOX_CELL_CEILING
    _check_box(box, ceiling)
    labels = (U.label, V.label)
    if box.is_empty:
        return RepresentationTable({}, box, labels)
    logger.info(f"🚀 Enumerating {U.label} - {V.label} over {box.cells} cells")

    u_all = terms(U, box.n_hi)
    v_all = terms(V, box.m_hi)
    u_items = [(n, u_all[n]) for n in box.n_values()]
    v_items = [(m, v_all[m]) for m in box.m_values()]
    stripes = _stripes(u_items, max(1, threads) * STRIPES_PER_WORKER)
    tasks = [(stripe, v_items) for stripe in stripes]

    merged = defaultdict(list)
    with tqdm(total=len(tasks), desc="Enumerating stripes", unit=" stripe", disable=not progress) as bar:
        if threads > 1:
            with Pool(processes=threads) as pool:
                results = pool.imap(_stripe_worker, tasks)
                for found in results:
                    for c, pairs in found.items():
                        merged[c].extend(pairs)
                    bar.update(1)
        else:
            for task in tasks:
                for c, pairs in _stripe_worker(task).items():
                    merged[c].extend(pairs)
                bar.update(1)

    entries = {c: tuple(sorted(set(pairs))) for c, pairs in merged.items()}
    logger.info(f"✅ {len(entries)} distinct values of c found")
    return RepresentationTable(entries, box, labels)


def merge_join_table(U, V, box):
    """Same table as enumerate_representations, by a k-way merge of sorted runs."""
    labels = (U.label, V.label)
    if box.is_empty:
        return RepresentationTable({}, box, labels)
    u_all = terms(U, box.n_hi)
    v_all = terms(V, box.m_hi)
    runs = [sorted((u_all[n] - v_all[m], n, m) for m in box.m_values()) for n in box.n_values()]
    entries = {}
    for c, group in groupby(heapq.merge(*runs), key=lambda row: row[0]):
        entries[c] = tuple((n, m) for _, n, m in group)
    return RepresentationTable(entries, box, labels)


def multi_represented(table):
    """Sorted list of every c with at least two representations."""
    return sorted(c for c, pairs in table.entries.items() if len(pairs) >= 2)


def solution_tuples(table):
    """(c, (n, m), (n1, m1)) for every two representations of one c, with m > m1."""
    tuples = []
    for c in multi_represented(table):
        pairs = table.entries[c]
        for i, first in enumerate(pairs):
            for second in pairs[i + 1:]:
                if first[1] == second[1]:
                    continue
                high, low = (first, second) if first[1] > second[1] else (second, first)
                tuples.append((c, high, low))
    return tuples


def audit_table(table, U, V):
    """Recompute every stored representation from scratch; returns the offending rows."""
    return [(c, n, m) for c, n, m in table.rows() if term(U, n) - term(V, m) != c]


# -----------------------
# Expected sets
# -----------------------
@dataclass(frozen=True)
class VerifyReport:
    missing: tuple
    extra: tuple
    found: tuple = field(default=())

    @property
    def passed(self):
        return not self.missing and not self.extra

    def to_dict(self):
        return {
            "passed": self.passed,
            "missing": [str(c) for c in self.missing],
            "extra": [str(c) for c in self.extra],
            "found": [str(c) for c in self.found],
        }


def verify_against(found, expected):
    found, expected = set(found), set(expected)
    report = VerifyReport(tuple(sorted(expected - found)), tuple(sorted(found - expected)), tuple(sorted(found)))
    if report.passed:
        logger.info(f"✅ All {len(expected)} expected values found, nothing extra")
    else:
        logger.warning(f"⚠️ Missing {list(report.missing)}, extra {list(report.extra)}")
    return report


def load_expected(path):
    """One integer per line; blank lines and '#' comments are skipped."""
    values = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            values.add(int(line))
    return values
