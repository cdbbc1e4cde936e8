"""Scalar linear difference equations, their companion systems, and
recurrence guessing.

An equation of order ``n`` is stored through its coefficients
``h_0, ..., h_{n-1}`` in Q(z)::

    f(i+n) + h_{n-1}(i) f(i+n-1) + ... + h_0(i) f(i) = 0
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Poly, RatFunc, as_rat, ratfunc_det, ratfunc_shift
from .linalg import nullspace


class InvalidEquation(ValueError):
    pass


class SingularSystem(ArithmeticError):
    pass


class InsufficientData(ValueError):
    pass


@dataclass(frozen=True)
class Equation:
    coeffs: tuple[RatFunc, ...]

    def __post_init__(self):
        coeffs = tuple(RatFunc.coerce(h) for h in self.coeffs)
        object.__setattr__(self, "coeffs", coeffs)
        if not coeffs:
            raise InvalidEquation("an equation needs order >= 1")
        if coeffs[0].is_zero():
            raise InvalidEquation("h_0 must be non-zero; reduce the order first")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    @classmethod
    def parse(cls, coeffs: Sequence[str]) -> "Equation":
        return cls(tuple(RatFunc.parse(c) for c in coeffs))

    def polynomial_relation(self) -> list[Poly]:
        """Coefficients ``c_0..c_n`` in Q[z] of ``sum_j c_j(i) f(i+j) = 0``,
        with ``c_n`` the monic lcm of the denominators."""
        lcm = Poly.const(1)
        for h in self.coeffs:
            g = lcm.gcd(h.den)
            lcm = (lcm * h.den) // g
        lcm = lcm.monic()
        return [h.num * (lcm // h.den) for h in self.coeffs] + [lcm]

    def residual(self, values: Sequence[Fraction], start: int, i: int) -> Fraction:
        """``sum_j c_j(i) f(i+j)`` using the polynomial form (never a pole)."""
        rel = self.polynomial_relation()
        return sum((c.eval_int(i) * values[i + j - start] for j, c in enumerate(rel)), Fraction(0))

    def satisfied_by(self, values: Sequence[Fraction], start: int = 0) -> bool:
        rel = self.polynomial_relation()
        n = self.order
        for i in range(start, start + len(values) - n):
            acc = Fraction(0)
            for j, c in enumerate(rel):
                if c:
                    acc += c.eval_int(i) * values[i + j - start]
            if acc:
                return False
        return True

    def to_json(self) -> dict:
        return {"order": self.order, "coeffs": [str(h) for h in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Equation":
        eq = cls.parse(data["coeffs"])
        if "order" in data and int(data["order"]) != eq.order:
            raise InvalidEquation(
                f"order {data['order']} does not match {eq.order} coefficients"
            )
        return eq

    def __str__(self):
        n = self.order
        out = f"s^{n}(y)" if n > 1 else "s(y)"
        for j in range(n - 1, -1, -1):
            h = self.coeffs[j]
            if h.is_zero():
                continue
            op = "y" if j == 0 else ("s(y)" if j == 1 else f"s^{j}(y)")
            if h == RatFunc(1):
                out += f" + {op}"
            elif h == RatFunc(-1):
                out += f" - {op}"
            else:
                out += f" + ({h})*{op}"
        return out


MatK = tuple[tuple[RatFunc, ...], ...]


def to_matk(rows) -> MatK:
    mat = tuple(tuple(RatFunc.coerce(x) for x in row) for row in rows)
    n = len(mat)
    if n == 0 or any(len(r) != n for r in mat):
        raise ValueError("system matrix must be square and non-empty")
    return mat


@dataclass(frozen=True)
class LinSystem:
    """First-order system ``s(y) = A y`` with ``det A != 0`` in Q(z)."""

    A: MatK

    def __post_init__(self):
        object.__setattr__(self, "A", to_matk(self.A))
        if self.det().is_zero():
            raise SingularSystem("det(A) vanishes identically")

    @property
    def n(self) -> int:
        return len(self.A)

    def det(self) -> RatFunc:
        return ratfunc_det(self.A)

    def at(self, i: int):
        """``A(i)`` as a rational matrix (raises PoleError at a pole)."""
        return tuple(tuple(h(i) for h in row) for row in self.A)

    def shift(self, t: int) -> "LinSystem":
        return LinSystem(tuple(tuple(ratfunc_shift(h, t) for h in row) for row in self.A))

    def to_json(self) -> dict:
        return {"n": self.n, "entries": [[str(h) for h in row] for row in self.A]}

    @classmethod
    def from_json(cls, data: dict) -> "LinSystem":
        entries = [[RatFunc.coerce(x) for x in row] for row in data["entries"]]
        if "n" in data and int(data["n"]) != len(entries):
            raise ValueError(f"n = {data['n']} does not match {len(entries)} rows")
        return cls(tuple(tuple(row) for row in entries))


def companion_matrix(E: Equation) -> LinSystem:
    n = E.order
    rows = []
    for r in range(n - 1):
        rows.append(tuple(RatFunc(1 if c == r + 1 else 0) for c in range(n)))
    rows.append(tuple(-h for h in E.coeffs))
    return LinSystem(tuple(rows))


def is_bell_case_equation(E: Equation) -> bool:
    """Polynomial ``h_1..h_{n-1}`` and a non-zero constant ``h_0``."""
    h0 = E.coeffs[0]
    return (
        h0.is_constant() and not h0.is_zero()
        and all(h.is_polynomial() for h in E.coeffs[1:])
    )


def is_bell_case_system(A: LinSystem | MatK) -> bool:
    """Polynomial entries and a non-zero constant determinant."""
    mat = A.A if isinstance(A, LinSystem) else to_matk(A)
    if not all(h.is_polynomial() for row in mat for h in row):
        return False
    det = ratfunc_det(mat)
    return det.is_constant() and not det.is_zero()


def holdout_size(max_order: int, max_degree: int) -> int:
    return max(10, 2 * (max_order + max_degree))


def _relation_rows(values, start, order, degree, first, last):
    # unknown layout: column j*(degree+1) + k is the z^k coefficient of c_j
    rows = []
    for i in range(first, last + 1):
        powers = [Fraction(i) ** k for k in range(degree + 1)]
        row = []
        for j in range(order + 1):
            f = values[i + j - start]
            row.extend(p * f for p in powers)
        rows.append(row)
    return rows


def guess_recurrence(values: Sequence, max_order: int, max_degree: int,
                     start: int = 0) -> Equation | None:
    """Smallest-order, then smallest-degree linear recurrence with
    polynomial coefficients fitted to ``values`` (indexed from ``start``).

    The relation is fitted on a leading window and must also hold on a
    disjoint held-out window of :func:`holdout_size` trailing terms.
    Returns ``None`` if nothing within the bounds fits.
    """
    vals = [as_rat(v) for v in values]
    margin = holdout_size(max_order, max_degree)
    needed = (max_order + 1) * (max_degree + 1) + max_order + margin
    if len(vals) < needed:
        raise InsufficientData(f"need at least {needed} values, got {len(vals)}")
    last_index = start + len(vals) - 1
    fit_last_value = last_index - margin
    for order in range(1, max_order + 1):
        for degree in range(max_degree + 1):
            first, last = start, fit_last_value - order
            if last < first:
                continue
            rows = _relation_rows(vals, start, order, degree, first, last)
            basis = nullspace(rows)
            if len(basis) > 1:
                basis.append([sum((k + 1) * v[c] for k, v in enumerate(basis))
                              for c in range(len(basis[0]))])
            candidates = []
            for vec in basis:
                polys = [Poly(vec[j * (degree + 1):(j + 1) * (degree + 1)]) for j in range(order + 1)]
                if polys[0].is_zero() or polys[-1].is_zero():
                    continue
                lead = RatFunc(polys[-1])
                eq = Equation(tuple(RatFunc(p) / lead for p in polys[:-1]))
                if not eq.satisfied_by(vals, start):
                    continue
                degs = tuple(len(p.coeffs) - 1 for p in polys)
                candidates.append((degs, eq))
            if candidates:
                return min(candidates, key=lambda c: c[0])[1]
    return None
