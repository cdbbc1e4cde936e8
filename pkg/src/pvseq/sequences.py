"""Finite windows of exact sequences and fundamental solution matrices.

Sequences are only ever known on a window ``[start, horizon]``. Any
statement of the form "f equals g" made here means they agree on the
overlap of their windows, which is the finite stand-in for agreement
of all but finitely many terms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import PoleError, as_rat, format_rat, poly_integer_roots
from .apset import APSet, ap_member
from .linalg import Matrix, identity, mat_det, mat_inv, mat_mul, mat_vec, to_matrix
from .recurrence import Equation, LinSystem, SingularSystem, companion_matrix

DEFAULT_HORIZON = 2000


class EmptyOverlap(ValueError):
    pass


class NotConstant(ArithmeticError):
    pass


class NotASolution(ValueError):
    pass


@dataclass(frozen=True)
class ExactSeq:
    start: int
    values: tuple[Fraction, ...]
    provenance: str = field(default="", compare=False)

    def __post_init__(self):
        if self.start < 0:
            raise ValueError("sequences are indexed by natural numbers")
        object.__setattr__(self, "values", tuple(as_rat(v) for v in self.values))

    @property
    def horizon(self) -> int:
        return self.start + len(self.values) - 1

    @property
    def window(self) -> tuple[int, int]:
        return self.start, self.horizon

    def __getitem__(self, i: int) -> Fraction:
        if not self.start <= i <= self.horizon:
            raise IndexError(f"index {i} outside [{self.start}, {self.horizon}]")
        return self.values[i - self.start]

    def __len__(self):
        return len(self.values)

    def items(self):
        return zip(range(self.start, self.horizon + 1), self.values)

    def restrict(self, lo: int, hi: int) -> "ExactSeq":
        lo, hi = max(lo, self.start), min(hi, self.horizon)
        return ExactSeq(lo, self.values[lo - self.start:hi - self.start + 1], self.provenance)

    def agrees_with(self, other: "ExactSeq") -> bool:
        lo, hi = overlap(self, other)
        return all(self[i] == other[i] for i in range(lo, hi + 1))

    def __add__(self, other):
        return seq_arith(self, other, "add")

    def __mul__(self, other):
        return seq_arith(self, other, "mul")

    def __sub__(self, other):
        return seq_arith(self, other, "sub")

    def __neg__(self):
        return ExactSeq(self.start, tuple(-v for v in self.values), f"-({self.provenance})")

    def map(self, fn, provenance="") -> "ExactSeq":
        return ExactSeq(self.start, tuple(fn(v) for v in self.values), provenance)

    def to_json(self) -> dict:
        return {"start": self.start, "values": [format_rat(v) for v in self.values]}

    @classmethod
    def from_json(cls, data: dict) -> "ExactSeq":
        return cls(int(data["start"]), tuple(Fraction(v) for v in data["values"]))


def overlap(f: ExactSeq, g: ExactSeq) -> tuple[int, int]:
    lo, hi = max(f.start, g.start), min(f.horizon, g.horizon)
    if lo > hi:
        raise EmptyOverlap(f"windows {f.window} and {g.window} do not overlap")
    return lo, hi


def seq_arith(f: ExactSeq, g: ExactSeq, op: str) -> ExactSeq:
    lo, hi = overlap(f, g)
    a = f.values[lo - f.start:hi - f.start + 1]
    b = g.values[lo - g.start:hi - g.start + 1]
    if op == "add":
        vals = tuple(x + y for x, y in zip(a, b))
    elif op == "sub":
        vals = tuple(x - y for x, y in zip(a, b))
    elif op == "mul":
        vals = tuple(x * y for x, y in zip(a, b))
    else:
        raise ValueError(f"unknown operation {op!r}")
    return ExactSeq(lo, vals, f"{op}({f.provenance}, {g.provenance})")


def seq_shift(f: ExactSeq, t: int = 1) -> ExactSeq:
    """``sigma^t f``: the value at ``i`` becomes the old value at ``i + t``."""
    if t < 0:
        raise ValueError("only left shifts (t >= 0) are defined on sequences")
    new_start = f.start - t
    vals = f.values
    if new_start < 0:
        vals = vals[-new_start:]
        new_start = 0
    if not vals:
        raise EmptyOverlap("shift leaves no values in the window")
    return ExactSeq(new_start, vals, f"shift{t}({f.provenance})")


def constant_seq(c, start: int, horizon: int) -> ExactSeq:
    c = as_rat(c)
    return ExactSeq(start, (c,) * (horizon - start + 1), f"const({c})")


def indicator_sequence(s: APSet, start: int = 0, horizon: int = DEFAULT_HORIZON) -> ExactSeq:
    one, zero = Fraction(1), Fraction(0)
    vals = tuple(one if ap_member(s, i) else zero for i in range(start, horizon + 1))
    return ExactSeq(start, vals, f"indicator({s})")


def start_index(A: LinSystem) -> int:
    """Least ``i0`` past every pole of ``A`` and every zero of ``det A``."""
    det = A.det()
    if det.is_zero():
        raise SingularSystem("det(A) vanishes identically")
    bad: set[int] = set()
    for row in A.A:
        for h in row:
            if not h.den.is_constant():
                bad |= poly_integer_roots(h.den)
    for p in (det.num, det.den):
        if not p.is_constant():
            bad |= poly_integer_roots(p)
    bad = {b for b in bad if b >= 0}
    return max(bad) + 1 if bad else 0


@dataclass(frozen=True)
class FundMatrix:
    """``Y(i)`` on ``[i0, horizon]`` with ``Y(i+1) = A(i) Y(i)``."""

    system: LinSystem
    i0: int
    Y: tuple[Matrix, ...]

    @property
    def horizon(self) -> int:
        return self.i0 + len(self.Y) - 1

    @property
    def n(self) -> int:
        return self.system.n

    def __getitem__(self, i: int) -> Matrix:
        if not self.i0 <= i <= self.horizon:
            raise IndexError(f"index {i} outside [{self.i0}, {self.horizon}]")
        return self.Y[i - self.i0]

    def entry(self, r: int, c: int) -> ExactSeq:
        """The entry sequence ``Y_{rc}`` (0-based)."""
        return ExactSeq(self.i0, tuple(m[r][c] for m in self.Y), f"Y[{r + 1}][{c + 1}]")

    def column(self, c: int) -> list[ExactSeq]:
        return [self.entry(r, c) for r in range(self.n)]

    def det(self) -> ExactSeq:
        return ExactSeq(self.i0, tuple(mat_det(m) for m in self.Y), "detY")


def fundamental_matrix(A: LinSystem, horizon: int = DEFAULT_HORIZON, seed=None,
                       i0: int | None = None) -> FundMatrix:
    least = start_index(A)
    if i0 is None:
        i0 = least
    elif i0 < least:
        raise SingularSystem(f"i0 = {i0} is before the start index {least}")
    if horizon < i0:
        raise ValueError(f"horizon {horizon} is before the start index {i0}")
    Y = identity(A.n) if seed is None else to_matrix(seed)
    if mat_det(Y) == 0:
        raise ValueError("seed matrix must be invertible")
    mats = [Y]
    for i in range(i0, horizon):
        Y = mat_mul(A.at(i), Y)
        mats.append(Y)
    return FundMatrix(A, i0, tuple(mats))


def solve_equation(E: Equation, init: Sequence, start: int = 0,
                   horizon: int = DEFAULT_HORIZON) -> ExactSeq:
    """Run the recursion forward from ``n`` initial values at ``start``."""
    n = E.order
    if len(init) != n:
        raise ValueError(f"need {n} initial values, got {len(init)}")
    if horizon < start + n - 1:
        raise ValueError("horizon too small for the initial values")
    vals = [as_rat(v) for v in init]
    coeffs = E.coeffs
    for i in range(start, horizon - n + 1):
        try:
            hs = [h(i) for h in coeffs]
        except PoleError as exc:
            raise PoleError(exc.point, f"coefficient pole at i = {exc.point}") from None
        k = i - start
        acc = Fraction(0)
        for j, h in enumerate(hs):
            if h:
                acc += h * vals[k + j]
        vals.append(-acc)
    return ExactSeq(start, tuple(vals), f"solution of {E}")


def constant_transition(Y1: FundMatrix, Y2: FundMatrix) -> Matrix:
    """``C`` with ``Y2(i) = Y1(i) C`` for every index both matrices cover."""
    if Y1.system != Y2.system:
        raise ValueError("fundamental matrices belong to different systems")
    lo, hi = max(Y1.i0, Y2.i0), min(Y1.horizon, Y2.horizon)
    if lo > hi:
        raise EmptyOverlap("fundamental matrices do not overlap")
    C = mat_mul(mat_inv(Y1[lo]), Y2[lo])
    for i in range(lo + 1, hi + 1):
        if mat_mul(Y1[i], C) != Y2[i]:
            raise NotConstant(f"transition changes at index {i}")
    return C


def solution_coordinates(f: ExactSeq, Y: FundMatrix) -> tuple[Fraction, ...]:
    """``v`` with ``(f(i), ..., f(i+n-1)) = Y(i) v`` on the whole overlap."""
    n = Y.n
    lo = max(f.start, Y.i0)
    hi = min(f.horizon - n + 1, Y.horizon)
    if lo > hi:
        raise EmptyOverlap("sequence and fundamental matrix do not overlap")
    stacked = tuple(f[lo + k] for k in range(n))
    v = mat_vec(mat_inv(Y[lo]), stacked)
    for i in range(lo + 1, hi + 1):
        if mat_vec(Y[i], v) != tuple(f[i + k] for k in range(n)):
            raise NotASolution(f"coordinates fail at index {i}")
    return v


def companion_solutions(E: Equation, horizon: int = DEFAULT_HORIZON, seed=None) -> list[ExactSeq]:
    """First-row entries of a companion fundamental matrix: a basis of
    solutions of ``E`` on ``[i0, horizon]``."""
    Y = fundamental_matrix(companion_matrix(E), horizon, seed)
    return [Y.entry(0, c) for c in range(E.order)]


def sequence_product(seqs: Iterable[ExactSeq]) -> ExactSeq:
    seqs = list(seqs)
    acc = seqs[0]
    for s in seqs[1:]:
        acc = seq_arith(acc, s, "mul")
    return acc
