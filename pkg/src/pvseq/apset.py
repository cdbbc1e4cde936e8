"""Eventually periodic subsets of the naturals.

An :class:`APSet` is stored as ``(threshold, modulus, residues, sporadic)``:
``i`` is a member iff ``i < threshold and i in sporadic`` or
``i >= threshold and i % modulus in residues``. Every finite union of
arithmetic progressions ``j + N*l`` has exactly one canonical
representation (minimal modulus, then minimal threshold), so equality of
sets is equality of the dataclass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable


@dataclass(frozen=True)
class APSet:
    threshold: int = 0
    modulus: int = 1
    residues: frozenset[int] = frozenset()
    sporadic: frozenset[int] = frozenset()

    def __post_init__(self):
        if self.modulus < 1:
            raise ValueError("modulus must be positive")
        if self.threshold < 0:
            raise ValueError("threshold must be a natural number")
        object.__setattr__(self, "residues", frozenset(self.residues))
        object.__setattr__(self, "sporadic", frozenset(self.sporadic))
        if any(not 0 <= r < self.modulus for r in self.residues):
            raise ValueError("residues must lie in [0, modulus)")
        if any(not 0 <= s < self.threshold for s in self.sporadic):
            raise ValueError("sporadic points must lie in [0, threshold)")

    # -- constructors ------------------------------------------------------

    @classmethod
    def empty(cls) -> "APSet":
        return cls()

    @classmethod
    def naturals(cls) -> "APSet":
        return cls(0, 1, frozenset({0}))

    @classmethod
    def progression(cls, start: int, step: int) -> "APSet":
        """``start + N*step``; ``step == 0`` gives the singleton ``{start}``."""
        if step == 0:
            return cls.finite([start])
        return ap_canonicalize(
            cls(start, step, frozenset({start % step}), frozenset())
        )

    @classmethod
    def finite(cls, points: Iterable[int]) -> "APSet":
        pts = frozenset(points)
        if any(p < 0 for p in pts):
            raise ValueError("APSet members are natural numbers")
        if not pts:
            return cls.empty()
        return ap_canonicalize(cls(max(pts) + 1, 1, frozenset(), pts))

    @classmethod
    def from_tail(cls, modulus: int, residues: Iterable[int], threshold: int = 0,
                  sporadic: Iterable[int] = ()) -> "APSet":
        return ap_canonicalize(
            cls(threshold, modulus, frozenset(r % modulus for r in residues), frozenset(sporadic))
        )

    # -- queries -----------------------------------------------------------

    def __contains__(self, i: int) -> bool:
        return ap_member(self, i)

    def is_finite(self) -> bool:
        return not self.residues

    def tail(self) -> tuple[int, frozenset[int]]:
        """The periodic part ``(modulus, residues)`` of the canonical form."""
        c = ap_canonicalize(self)
        return c.modulus, c.residues

    def exceptions(self) -> frozenset[int]:
        """Points below the threshold where membership deviates from the
        periodic rule (the sporadic additions and omissions)."""
        return frozenset(
            i for i in range(self.threshold)
            if (i in self.sporadic) != (i % self.modulus in self.residues)
        )

    def members(self, stop: int, start: int = 0) -> list[int]:
        return [i for i in range(start, stop + 1) if ap_member(self, i)]

    def __and__(self, other):
        return ap_intersect(self, other)

    def __or__(self, other):
        return ap_union(self, other)

    def __invert__(self):
        return ap_complement(self)

    def __sub__(self, other):
        return ap_intersect(self, ap_complement(other))

    def to_json(self) -> dict:
        return {
            "threshold": self.threshold,
            "modulus": self.modulus,
            "residues": sorted(self.residues),
            "sporadic": sorted(self.sporadic),
        }

    @classmethod
    def from_json(cls, data: dict) -> "APSet":
        return ap_canonicalize(cls(
            int(data["threshold"]), int(data["modulus"]),
            frozenset(int(r) for r in data["residues"]),
            frozenset(int(s) for s in data["sporadic"]),
        ))

    def __str__(self):
        parts = []
        if self.sporadic:
            parts.append("{" + ", ".join(map(str, sorted(self.sporadic))) + "}")
        for r in sorted(self.residues):
            start = r
            while start < self.threshold:
                start += self.modulus
            parts.append(f"{start}+{self.modulus}N" if self.modulus > 1 else f"{start}+N")
        return " | ".join(parts) if parts else "{}"


def ap_member(s: APSet, i: int) -> bool:
    if i < 0:
        return False
    if i < s.threshold:
        return i in s.sporadic
    return (i % s.modulus) in s.residues


def _minimal_period(modulus: int, residues: frozenset[int]) -> tuple[int, frozenset[int]]:
    for d in range(1, modulus + 1):
        if modulus % d:
            continue
        reduced = frozenset(r % d for r in residues)
        if all((r % d in reduced) == (r in residues) for r in range(modulus)):
            return d, reduced
    return modulus, residues


def ap_canonicalize(raw: APSet) -> APSet:
    """Minimal modulus, then minimal threshold; idempotent."""
    l, res = _minimal_period(raw.modulus, raw.residues)
    n0 = raw.threshold
    sporadic = set(raw.sporadic)
    while n0 > 0 and (((n0 - 1) in sporadic) == (((n0 - 1) % l) in res)):
        n0 -= 1
        sporadic.discard(n0)
    if not res and not sporadic:
        n0 = 0
    return APSet(n0, l, res, frozenset(sporadic))


def _combine(s1: APSet, s2: APSet, op) -> APSet:
    l = s1.modulus * s2.modulus // math.gcd(s1.modulus, s2.modulus)
    n0 = max(s1.threshold, s2.threshold)
    # sample the tail one full period past the threshold
    residues = frozenset(
        i % l for i in range(n0, n0 + l) if op(ap_member(s1, i), ap_member(s2, i))
    )
    sporadic = frozenset(
        i for i in range(n0) if op(ap_member(s1, i), ap_member(s2, i))
    )
    return ap_canonicalize(APSet(n0, l, residues, sporadic))


def ap_intersect(s1: APSet, s2: APSet) -> APSet:
    return _combine(s1, s2, lambda a, b: a and b)


def ap_union(s1: APSet, s2: APSet) -> APSet:
    return _combine(s1, s2, lambda a, b: a or b)


def ap_complement(s: APSet) -> APSet:
    res = frozenset(range(s.modulus)) - s.residues
    spor = frozenset(range(s.threshold)) - s.sporadic
    return ap_canonicalize(APSet(s.threshold, s.modulus, res, spor))


def ap_equal_mod_finite(s1: APSet, s2: APSet) -> bool:
    """True iff the symmetric difference is finite."""
    return s1.tail() == s2.tail()


def ap_from_points(points: Iterable[int], modulus: int, residues: Iterable[int],
                   threshold: int) -> APSet:
    """Canonical set agreeing with ``points`` below ``threshold`` and with the
    given periodic tail from ``threshold`` on."""
    pts = frozenset(p for p in points if p < threshold)
    return ap_canonicalize(
        APSet(threshold, modulus, frozenset(r % modulus for r in residues), pts)
    )
