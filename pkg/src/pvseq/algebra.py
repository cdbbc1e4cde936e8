"""Exact univariate algebra over the rationals.

Rationals are :class:`fractions.Fraction`; :class:`Poly` is a dense
polynomial in ``z`` and :class:`RatFunc` a reduced fraction of two of them
with a monic denominator, so equality is structural.

    >>> h = RatFunc.parse("(z-4)/(z-5)")
    >>> h.shift(5)
    RatFunc('(z + 1)/z')
    >>> h(4)
    Fraction(0, 1)
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rat = Fraction
Scalar = Union[int, Fraction]


class PoleError(ArithmeticError):
    """A rational function was evaluated at one of its poles."""

    def __init__(self, point, message=None):
        self.point = point
        super().__init__(message or f"pole at z = {point}")


class ZeroPolynomial(ValueError):
    pass


def as_rat(x) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rat(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class Poly:
    """Dense polynomial in ``z``; ``coeffs[k]`` is the coefficient of ``z^k``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Scalar] = ()):
        c = [as_rat(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def const(cls, a: Scalar) -> "Poly":
        return cls((a,))

    @classmethod
    def z(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def from_roots(cls, roots: Iterable[Scalar], lead: Scalar = 1) -> "Poly":
        p = cls.const(lead)
        for r in roots:
            p = p * cls((-as_rat(r), 1))
        return p

    # -- basic properties -------------------------------------------------

    @property
    def degree(self) -> float | int:
        """Degree, with ``-inf`` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        return Poly(a / lc for a in self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("Poly", self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
            return Poly.const(x)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly([x + y for x, y in zip(a, b)] + list(a[len(b):]))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-a for a in self.coeffs)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            raise ValueError("polynomial exponents must be non-negative integers")
        result, base = Poly.const(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        lc = other.coeffs[-1]
        if len(rem) - 1 < db:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1, db - 1, -1):
            c = rem[k] / lc
            quot[k - db] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[k - db + j] -= c * b
        return Poly(quot), Poly(rem[:db])

    def __floordiv__(self, other):
        return self.divmod(self._coerce(other))[0]

    def __mod__(self, other):
        return self.divmod(self._coerce(other))[1]

    def gcd(self, other: "Poly") -> "Poly":
        """Monic gcd (zero only when both inputs are zero)."""
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    # -- evaluation and substitution ---------------------------------------

    def __call__(self, x: Scalar) -> Fraction:
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def eval_int(self, i: int) -> Fraction:
        """Horner evaluation at an integer, using one common denominator."""
        if not self.coeffs:
            return Fraction(0)
        den = 1
        for a in self.coeffs:
            den = den * a.denominator // math.gcd(den, a.denominator)
        acc = 0
        for a in reversed(self.coeffs):
            acc = acc * i + a.numerator * (den // a.denominator)
        return Fraction(acc, den)

    def compose_linear(self, t: Scalar) -> "Poly":
        """Return ``p(z + t)``."""
        t = as_rat(t)
        if t == 0 or self.is_constant():
            return self
        shift = Poly((t, 1))
        acc = Poly()
        for a in reversed(self.coeffs):
            acc = acc * shift + a
        return acc

    def primitive(self) -> tuple[Fraction, list[int]]:
        """Split into ``content * integer primitive part`` (positive content)."""
        if not self.coeffs:
            return Fraction(0), []
        den = 1
        for a in self.coeffs:
            den = den * a.denominator // math.gcd(den, a.denominator)
        ints = [int(a * den) for a in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        return Fraction(g, den), [v // g for v in ints]

    def integer_roots(self) -> set[int]:
        return poly_integer_roots(self)

    # -- display -----------------------------------------------------------

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            a = self.coeffs[k]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = -a if a < 0 else a
            if k == 0:
                body = _fmt_coeff(mag)
            else:
                mono = "z" if k == 1 else f"z^{k}"
                body = mono if mag == 1 else f"{_fmt_coeff(mag)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Poly('{self}')"


def _fmt_coeff(a: Fraction) -> str:
    return str(a.numerator) if a.denominator == 1 else f"({a.numerator}/{a.denominator})"


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def poly_integer_roots(p: Poly) -> set[int]:
    """Integer roots of ``p`` via the rational-root divisor test."""
    if p.is_zero():
        raise ZeroPolynomial("the zero polynomial has every integer as a root")
    _, ints = p.primitive()
    roots: set[int] = set()
    k = 0
    while ints[k] == 0:
        k += 1
    if k:
        roots.add(0)
    ints = ints[k:]
    if len(ints) == 1:
        return roots
    # Cauchy bound caps the divisor scan
    bound = 1 + max(abs(c) for c in ints[:-1]) // abs(ints[-1]) + 1

    def value(r):
        acc = 0
        for c in reversed(ints):
            acc = acc * r + c
        return acc

    for d in _divisors(ints[0]):
        if d > bound:
            break
        for r in (d, -d):
            if value(r) == 0:
                roots.add(r)
    return roots


class RatFunc:
    """Element of Q(z) in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly | Scalar = 0, den: Poly | Scalar = 1):
        num = num if isinstance(num, Poly) else Poly.const(num)
        den = den if isinstance(den, Poly) else Poly.const(den)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if num.is_zero():
            num, den = Poly(), Poly.const(1)
        elif not den.is_constant():
            g = num.gcd(den)
            if not g.is_constant():
                num, den = num // g, den // g
        lc = den.lead
        if lc != 1:
            num = Poly(a / lc for a in num.coeffs)
            den = Poly(a / lc for a in den.coeffs)
        self.num = num
        self.den = den

    @classmethod
    def z(cls) -> "RatFunc":
        return cls(Poly.z())

    @classmethod
    def parse(cls, text: str) -> "RatFunc":
        from .parsing import parse_ratfunc

        return parse_ratfunc(text)

    @classmethod
    def coerce(cls, x) -> "RatFunc":
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, Poly):
            return cls(x)
        if isinstance(x, str):
            return cls.parse(x)
        return cls(as_rat(x))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_constant()

    def is_constant(self) -> bool:
        return self.den.is_constant() and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return self.num.lead if self.num else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num == other.num and self.den == other.den
        if isinstance(other, (int, Fraction, Poly)) and not isinstance(other, bool):
            return self == RatFunc.coerce(other)
        return NotImplemented

    def __hash__(self):
        return hash(("RatFunc", self.num.coeffs, self.den.coeffs))

    def __bool__(self):
        return not self.is_zero()

    @staticmethod
    def _other(x):
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, (int, Fraction, Poly)) and not isinstance(x, bool):
            return RatFunc.coerce(x)
        return NotImplemented

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc.coerce(other) / self

    def __pow__(self, e: int):
        if not isinstance(e, int):
            raise TypeError("exponent must be an integer")
        if e < 0:
            return RatFunc(1) / (self ** -e)
        return RatFunc(self.num ** e, self.den ** e)

    def __call__(self, i: Scalar) -> Fraction:
        return ratfunc_eval(self, i)

    def shift(self, t: int) -> "RatFunc":
        return ratfunc_shift(self, t)

    def poles(self) -> set[int]:
        """Integer poles (integer roots of the denominator)."""
        return set() if self.den.is_constant() else poly_integer_roots(self.den)

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        num = str(self.num)
        if " " in num:
            num = f"({num})"
        den = str(self.den)
        if den != "z":
            den = f"({den})"
        return f"{num}/{den}"

    def __repr__(self):
        return f"RatFunc('{self}')"


def ratfunc_eval(h: RatFunc, i: Scalar) -> Fraction:
    """Value of ``h`` at ``z = i``; raises :class:`PoleError` at a pole."""
    if isinstance(i, int):
        d = h.den.eval_int(i)
        if d == 0:
            raise PoleError(i)
        return h.num.eval_int(i) / d
    d = h.den(i)
    if d == 0:
        raise PoleError(i)
    return h.num(i) / d


def ratfunc_shift(h: RatFunc, t: int) -> RatFunc:
    """``h(z + t)``; ``t = 1`` is the difference operator on Q(z)."""
    if t == 0:
        return h
    return RatFunc(h.num.compose_linear(t), h.den.compose_linear(t))


def ratfunc_det(rows: Sequence[Sequence[RatFunc]]) -> RatFunc:
    """Determinant over Q(z) by Gaussian elimination."""
    m = [[RatFunc.coerce(x) for x in row] for row in rows]
    n = len(m)
    det = RatFunc(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if not m[r][c].is_zero()), None)
        if piv is None:
            return RatFunc(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        p = m[c][c]
        det = det * p
        for r in range(c + 1, n):
            if m[r][c].is_zero():
                continue
            f = m[r][c] / p
            m[r] = [m[r][k] - f * m[c][k] for k in range(n)]
    return det
