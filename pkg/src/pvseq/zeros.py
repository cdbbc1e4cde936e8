"""Zero sets of exact sequences and their arithmetic-progression structure.

A zero set is only known on a finite window, so a decomposition is a
conjecture about the tail, fitted on the last ``window`` indices and then
extended backwards as far as the data agree with it.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable

from .algebra import format_rat
from .apset import APSet, ap_canonicalize
from .recurrence import LinSystem
from .sequences import DEFAULT_HORIZON, ExactSeq, FundMatrix, fundamental_matrix, sequence_product

DEFAULT_WINDOW = 400
DEFAULT_MAX_PERIOD = 60

EXACT_FINITE = "exact-finite"
CONJECTURED = "conjectured"
INCONCLUSIVE = "inconclusive"


class WindowTooSmall(ValueError):
    pass


def zero_set(f: ExactSeq) -> set[int]:
    return {i for i, v in f.items() if v == 0}


@dataclass(frozen=True)
class Decomposition:
    apset: APSet
    status: str
    window: tuple[int, int]
    periods_checked: int

    @property
    def period(self) -> int:
        """Minimal period of the fitted tail (1 for finite sets)."""
        return self.apset.modulus if self.status == CONJECTURED else 1

    def to_json(self, witnesses=()) -> dict:
        return {
            "zero_set_window": list(self.window),
            "apset": self.apset.to_json(),
            "status": self.status,
            "periods_checked": self.periods_checked,
            "witnesses": list(witnesses),
        }


def _fits(zeros: set[int], lo: int, hi: int, l: int) -> frozenset[int] | None:
    state: dict[int, bool] = {}
    for i in range(lo, hi + 1):
        r = i % l
        z = i in zeros
        prev = state.setdefault(r, z)
        if prev != z:
            return None
    return frozenset(r for r, z in state.items() if z)


def decompose_zero_set(f: ExactSeq, max_period: int = DEFAULT_MAX_PERIOD,
                       window: int = DEFAULT_WINDOW) -> Decomposition:
    """Fit the smallest period ``l <= max_period`` to the zero pattern on
    ``[H - window, H]`` and extend it backwards while it keeps matching.

    The returned set agrees with the zero set of ``f`` on all of
    ``[f.start, H]``; only its behaviour past ``H`` is conjectural.
    """
    s, H = f.window
    if window < 2 * max_period:
        raise WindowTooSmall(f"window {window} must be at least twice max_period {max_period}")
    if H - s < 4 * window:
        raise WindowTooSmall(f"sequence window [{s}, {H}] shorter than 4 * {window}")
    zeros = zero_set(f)
    lo = H - window
    if not any(lo <= i for i in zeros):
        return Decomposition(APSet.finite(zeros), EXACT_FINITE, (s, H), max_period)
    for l in range(1, max_period + 1):
        residues = _fits(zeros, lo, H, l)
        if residues is None:
            continue
        n0 = lo
        while n0 - 1 >= s and (((n0 - 1) in zeros) == (((n0 - 1) % l) in residues)):
            n0 -= 1
        sporadic = frozenset(i for i in zeros if i < n0)
        apset = ap_canonicalize(APSet(n0, l, residues, sporadic))
        return Decomposition(apset, CONJECTURED, (s, H), max_period)
    return Decomposition(APSet.finite(zeros), INCONCLUSIVE, (s, H), max_period)


def verify_period_bound(decompositions: Iterable[APSet], l: int) -> bool:
    """Every set is a finite union of progressions of period ``l``."""
    return all(l % ap_canonicalize(s).modulus == 0 for s in decompositions)


@dataclass(frozen=True)
class Witness:
    label: str
    decomposition: Decomposition

    def to_json(self) -> dict:
        return {"element": self.label, "period": self.decomposition.period,
                **self.decomposition.to_json()}


@dataclass
class PeriodBound:
    period: int
    witnesses: list[Witness]
    candidates: list[Witness] = field(default_factory=list)

    def to_json(self) -> dict:
        return {"period_lower_bound": self.period,
                "witnesses": [w.to_json() for w in self.witnesses],
                "candidates_checked": len(self.candidates)}


def _offset_label(name: str, c: Fraction) -> str:
    if c == 0:
        return name
    return f"{name} - {format_rat(c)}" if c > 0 else f"{name} + {format_rat(-c)}"


def candidate_elements(Y: FundMatrix, degree_bound: int) -> list[ExactSeq]:
    """Entries of ``Y``, ``det Y`` and monomials in the entries up to the
    given total degree."""
    n = Y.n
    entries = [Y.entry(r, c) for r in range(n) for c in range(n)]
    out = list(entries) + [Y.det()]
    for deg in range(2, degree_bound + 1):
        for combo in combinations_with_replacement(range(len(entries)), deg):
            prod = sequence_product(entries[k] for k in combo)
            label = "*".join(entries[k].provenance for k in combo)
            out.append(ExactSeq(prod.start, prod.values, label))
    return out


def pv_period_lower_bound(A: LinSystem, degree_bound: int = 1, horizon: int = DEFAULT_HORIZON,
                          window: int = DEFAULT_WINDOW, max_period: int = DEFAULT_MAX_PERIOD,
                          max_offsets: int = 8) -> PeriodBound:
    """Empirical lower bound on the period of the Picard-Vessiot ring.

    Each candidate ``g`` is analysed as is and shifted by constants ``c``
    that ``g`` takes repeatedly on the verification window, since ``g - c``
    lies in the same ring. The lcm of the fitted tail periods divides the
    true period.
    """
    if degree_bound < 1:
        raise ValueError("degree_bound must be at least 1")
    Y = fundamental_matrix(A, horizon)
    analysed: list[Witness] = []
    lo = Y.horizon - window
    for g in candidate_elements(Y, degree_bound):
        counts = Counter(v for i, v in g.items() if i >= lo)
        offsets = [Fraction(0)] + [
            v for v, k in counts.most_common(max_offsets) if k >= 2 and v != 0
        ]
        for c in offsets:
            h = g if c == 0 else g.map(lambda v, c=c: v - c)
            dec = decompose_zero_set(h, max_period, window)
            analysed.append(Witness(_offset_label(g.provenance, c), dec))
    period = 1
    for w in analysed:
        if w.decomposition.status == CONJECTURED:
            period = period * w.decomposition.period // math.gcd(period, w.decomposition.period)
    witnesses = [w for w in analysed if w.decomposition.status == CONJECTURED and w.decomposition.period > 1]
    return PeriodBound(period, witnesses, analysed)
