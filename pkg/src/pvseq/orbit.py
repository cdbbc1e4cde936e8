"""Orbits of ``(b, B) -> (b + 1, A(b) B)`` on the affine line times GL_n.

Regular functions are polynomials in the matrix entries ``Z[i][j]`` with
coefficients in Q(z), divided by a power of ``det Z``. Evaluating one along
an orbit gives an exact sequence whose value at position ``b + k`` is the
function at the k-th orbit point.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .algebra import PoleError, RatFunc, as_rat, format_rat, ratfunc_shift
from .linalg import Matrix, mat_det, mat_mul, to_matrix
from .parsing import ExprParser, ParseError
from .recurrence import LinSystem
from .sequences import ExactSeq

Monomial = tuple[int, ...]


class UndefinedError(ArithmeticError):
    """The self-map is not defined at this point."""


class UndefinedOrbit(UndefinedError):
    def __init__(self, index: int, reason: str):
        self.index = index
        super().__init__(f"orbit undefined at position {index}: {reason}")


@dataclass(frozen=True)
class OrbitState:
    b: int
    B: Matrix
    det: Fraction | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        B = to_matrix(self.B)
        object.__setattr__(self, "B", B)
        if self.det is None:
            object.__setattr__(self, "det", mat_det(B))
        if self.det == 0:
            raise ValueError("B must be invertible")

    @property
    def n(self) -> int:
        return len(self.B)

    def to_json(self) -> dict:
        return {"b": self.b, "B": [[format_rat(x) for x in row] for row in self.B]}

    @classmethod
    def from_json(cls, data: dict) -> "OrbitState":
        return cls(int(data["b"]), to_matrix([[Fraction(x) for x in row] for row in data["B"]]))

    @classmethod
    def identity_at(cls, b: int, n: int) -> "OrbitState":
        return cls(b, tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))


def _det_terms(n: int) -> dict[Monomial, RatFunc]:
    terms: dict[Monomial, RatFunc] = {}
    for perm in itertools.permutations(range(n)):
        exps = [0] * (n * n)
        for r, c in enumerate(perm):
            exps[r * n + c] += 1
        inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
        terms[tuple(exps)] = RatFunc(-1 if inversions % 2 else 1)
    return terms


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _poly_mul(p: Mapping[Monomial, RatFunc], q: Mapping[Monomial, RatFunc]) -> dict[Monomial, RatFunc]:
    out: dict[Monomial, RatFunc] = {}
    for ma, ca in p.items():
        for mb, cb in q.items():
            m = _mono_mul(ma, mb)
            v = out.get(m)
            out[m] = ca * cb if v is None else v + ca * cb
    return {m: c for m, c in out.items() if not c.is_zero()}


def _poly_add(p, q, sign=1) -> dict[Monomial, RatFunc]:
    out = dict(p)
    for m, c in q.items():
        v = out.get(m)
        c = c if sign == 1 else -c
        out[m] = c if v is None else v + c
    return {m: c for m, c in out.items() if not c.is_zero()}


def _exact_divide(p: dict, d: dict) -> dict | None:
    """Quotient ``p / d`` if ``d`` divides ``p`` exactly (lex order), else None."""
    if not d:
        raise ZeroDivisionError("division by the zero polynomial")
    lead_d = max(d)
    q: dict[Monomial, RatFunc] = {}
    rem = dict(p)
    while rem:
        lead = max(rem)
        diff = tuple(a - b for a, b in zip(lead, lead_d))
        if any(e < 0 for e in diff):
            return None
        c = rem[lead] / d[lead_d]
        q[diff] = c
        rem = _poly_add(rem, _poly_mul({diff: c}, d), sign=-1)
    return q


class RegularFunction:
    """``poly(z, Z) / det(Z)^det_power`` with ``poly`` in Q(z)[Z_ij].

    Construction canonicalizes: zero coefficients are dropped and factors
    of ``det Z`` are cancelled against the denominator when they divide
    the numerator exactly.
    """

    __slots__ = ("n", "terms", "det_power")

    def __init__(self, n: int, terms: Mapping[Monomial, RatFunc] | None = None, det_power: int = 0):
        if det_power < 0:
            raise ValueError("det_power must be a natural number")
        self.n = n
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != n * n:
                raise ValueError(f"monomial {m} has wrong length for n = {n}")
            c = RatFunc.coerce(c)
            if not c.is_zero():
                clean[m] = c
        if not clean:
            det_power = 0
        detz = _det_terms(n)
        while det_power > 0:
            q = _exact_divide(clean, detz)
            if q is None:
                break
            clean = q
            det_power -= 1
        self.terms: dict[Monomial, RatFunc] = clean
        self.det_power = det_power

    # -- constructors ------------------------------------------------------

    @classmethod
    def const(cls, n: int, c) -> "RegularFunction":
        return cls(n, {(0,) * (n * n): RatFunc.coerce(c)})

    @classmethod
    def z(cls, n: int) -> "RegularFunction":
        return cls.const(n, RatFunc.z())

    @classmethod
    def var(cls, n: int, i: int, j: int) -> "RegularFunction":
        """``Z[i][j]`` with 1-based indices."""
        if not (1 <= i <= n and 1 <= j <= n):
            raise IndexError(f"Z[{i}][{j}] out of range for n = {n}")
        exps = [0] * (n * n)
        exps[(i - 1) * n + (j - 1)] = 1
        return cls(n, {tuple(exps): RatFunc(1)})

    @classmethod
    def det(cls, n: int) -> "RegularFunction":
        return cls(n, _det_terms(n))

    @classmethod
    def parse(cls, text: str, n: int | None = None, det_power: int = 0) -> "RegularFunction":
        return parse_regular(text, n, det_power)

    # -- structure ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        """No dependence on ``Z`` (a rational function of ``z`` only)."""
        return self.det_power == 0 and all(not any(m) for m in self.terms)

    def scalar(self) -> RatFunc:
        if not self.is_scalar():
            raise ValueError("not a scalar")
        return self.terms.get((0,) * (self.n * self.n), RatFunc(0))

    @property
    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def __eq__(self, other):
        if not isinstance(other, RegularFunction):
            return NotImplemented
        return self.n == other.n and self.det_power == other.det_power and self.terms == other.terms

    def __hash__(self):
        return hash((self.n, self.det_power, frozenset(self.terms.items())))

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other) -> "RegularFunction":
        if isinstance(other, RegularFunction):
            if other.n != self.n:
                raise ValueError("regular functions on different dimensions")
            return other
        return RegularFunction.const(self.n, other)

    def _lift(self, m: int) -> dict:
        """Numerator over ``det(Z)^m`` for ``m >= det_power``."""
        extra = m - self.det_power
        if extra == 0:
            return self.terms
        d = _det_terms(self.n)
        out = self.terms
        for _ in range(extra):
            out = _poly_mul(out, d)
        return out

    def __add__(self, other):
        other = self._coerce(other)
        m = max(self.det_power, other.det_power)
        return RegularFunction(self.n, _poly_add(self._lift(m), other._lift(m)), m)

    __radd__ = __add__

    def __neg__(self):
        return RegularFunction(self.n, {k: -c for k, c in self.terms.items()}, self.det_power)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return RegularFunction(self.n, _poly_mul(self.terms, other.terms),
                               self.det_power + other.det_power)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if not other.is_scalar():
            raise ValueError("can only divide by elements of Q(z)")
        s = other.scalar()
        if s.is_zero():
            raise ZeroDivisionError("division by zero")
        inv = RatFunc(1) / s
        return RegularFunction(self.n, {k: c * inv for k, c in self.terms.items()}, self.det_power)

    def __pow__(self, e: int):
        if e < 0:
            if self == RegularFunction.det(self.n):
                return RegularFunction(self.n, {(0,) * (self.n * self.n): RatFunc(1)}, -e)
            raise ValueError("negative exponents are only allowed on detZ")
        out = RegularFunction.const(self.n, 1)
        for _ in range(e):
            out = out * self
        return out

    # -- substitution ------------------------------------------------------

    def shift_z(self, t: int) -> "RegularFunction":
        """Coefficients ``c(z) -> c(z + t)``; the matrix variables are untouched."""
        return RegularFunction(self.n, {k: ratfunc_shift(c, t) for k, c in self.terms.items()},
                               self.det_power)

    def __call__(self, x: OrbitState) -> Fraction:
        return evaluate_regular(self, x)

    def __str__(self):
        return format_regular(self)

    def __repr__(self):
        return f"RegularFunction({str(self)!r})"

    def to_json(self) -> dict:
        num = RegularFunction(self.n, self.terms)
        return {"poly": format_regular(num), "detPower": self.det_power}

    @classmethod
    def from_json(cls, data, n: int | None = None) -> "RegularFunction":
        if isinstance(data, str):
            return parse_regular(data, n)
        return parse_regular(data["poly"], n, int(data.get("detPower", 0)))


def _fmt_monomial(m: Monomial, n: int) -> str:
    parts = []
    for idx, e in enumerate(m):
        if e:
            name = f"Z[{idx // n + 1}][{idx % n + 1}]"
            parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def format_regular(f: RegularFunction) -> str:
    if not f.terms:
        body = "0"
    else:
        pieces = []
        for m in sorted(f.terms, reverse=True):
            c = f.terms[m]
            mono = _fmt_monomial(m, f.n)
            sign = "+"
            if c.is_constant() and c.constant_value() < 0:
                sign, c = "-", -c
            if c.is_constant():
                v = format_rat(c.constant_value())
                if not mono:
                    text = v
                elif v == "1":
                    text = mono
                else:
                    text = f"({v})*{mono}" if "/" in v else f"{v}*{mono}"
            else:
                text = f"({c})*{mono}" if mono else f"({c})"
            pieces.append((sign, text))
        body = ("-" if pieces[0][0] == "-" else "") + pieces[0][1]
        for sign, text in pieces[1:]:
            body += f" {sign} {text}"
    if f.det_power:
        return f"({body})*detZ^-{f.det_power}"
    return body


_ZIJ = re.compile(r"Z\[\s*(\d+)\s*\]\[\s*(\d+)\s*\]")


def parse_regular(text: str, n: int | None = None, det_power: int = 0) -> RegularFunction:
    """Parse ``z``, ``Z[i][j]`` (1-based), ``detZ`` and ``detZ^-m`` expressions.

    ``n`` defaults to the largest index mentioned.
    """
    if n is None:
        idx = [int(a) for m in _ZIJ.finditer(text) for a in m.groups()]
        if not idx:
            raise ParseError("cannot infer the matrix size; pass n", text, 0)
        n = max(idx)

    def atom(tok):
        if tok.kind == "zij":
            i, j = map(int, _ZIJ.fullmatch(tok.value).groups())
            try:
                return RegularFunction.var(n, i, j)
            except IndexError as exc:
                raise ParseError(str(exc), text, tok.pos) from None
        if tok.value == "z":
            return RegularFunction.z(n)
        if tok.value == "detZ":
            return RegularFunction.det(n)
        raise ParseError(f"unknown symbol {tok.value!r}", text, tok.pos)

    def divide(a, b):
        return a / b

    value = ExprParser(text, atom, lambda k: RegularFunction.const(n, k), divide,
                       lambda a, e: a ** e).parse()
    if det_power:
        value = value * RegularFunction(n, {(0,) * (n * n): RatFunc(1)}, det_power)
    return value


@dataclass(frozen=True)
class Subvariety:
    """Common zero locus of finitely many regular functions."""

    generators: tuple[RegularFunction, ...]

    def __post_init__(self):
        gens = tuple(self.generators)
        if not gens:
            raise ValueError("a subvariety needs at least one generator")
        object.__setattr__(self, "generators", gens)

    def shift_z(self, t: int) -> "Subvariety":
        return Subvariety(tuple(g.shift_z(t) for g in self.generators))

    def to_json(self) -> dict:
        return {"generators": [g.to_json() for g in self.generators]}

    @classmethod
    def from_json(cls, data: dict, n: int | None = None) -> "Subvariety":
        return cls(tuple(RegularFunction.from_json(g, n) for g in data["generators"]))


# -- the self-map ----------------------------------------------------------

def _step_matrix(A: LinSystem, b: int) -> Matrix:
    try:
        Ab = A.at(b)
    except PoleError:
        raise UndefinedError(f"A has a pole at z = {b}") from None
    if mat_det(Ab) == 0:
        raise UndefinedError(f"det A vanishes at z = {b}")
    return Ab


def _trusted_state(b: int, B: Matrix, det: Fraction) -> OrbitState:
    # B = A(b-1) B' with both factors invertible; det is carried along
    state = object.__new__(OrbitState)
    object.__setattr__(state, "b", b)
    object.__setattr__(state, "B", B)
    object.__setattr__(state, "det", det)
    return state


def orbit_step(A: LinSystem, x: OrbitState) -> OrbitState:
    Ab = _step_matrix(A, x.b)
    return _trusted_state(x.b + 1, mat_mul(Ab, x.B), mat_det(Ab) * x.det)


def orbit_defined_prefix(A: LinSystem, x: OrbitState, H: int) -> int:
    """Largest ``m <= H`` such that ``x, s(x), ..., s^m(x)`` all lie in the
    domain of the map; ``-1`` when ``x`` itself does not."""
    state = x
    for m in range(H + 1):
        try:
            Ab = _step_matrix(A, state.b)
        except UndefinedError:
            return m - 1
        if m == H:
            return H
        state = _trusted_state(state.b + 1, mat_mul(Ab, state.B), mat_det(Ab) * state.det)
    return H


def orbit_trace(A: LinSystem, x: OrbitState, H: int) -> list[OrbitState]:
    """Orbit points at positions ``x.b, ..., H``."""
    if x.b < 0:
        raise ValueError("orbit positions must be natural numbers")
    states = [x]
    B, det = x.B, x.det
    for pos in range(x.b, H):
        try:
            Ab = _step_matrix(A, pos)
        except UndefinedError as exc:
            raise UndefinedOrbit(pos, str(exc)) from None
        B = mat_mul(Ab, B)
        det = det * mat_det(Ab)
        states.append(_trusted_state(pos + 1, B, det))
    return states


def evaluate_regular(f: RegularFunction, x: OrbitState) -> Fraction:
    n = f.n
    if x.n != n:
        raise ValueError("dimension mismatch")
    flat = [e for row in x.B for e in row]
    if all(v.denominator == 1 for v in flat):
        # integer points (the Bell case): skip the gcds Fraction would do on every product
        flat = [v.numerator for v in flat]
    powers: dict[tuple[int, int], Fraction | int] = {}
    total = Fraction(0)
    for m, c in f.terms.items():
        try:
            coeff = c(x.b)
        except PoleError:
            raise PoleError(x.b, f"coefficient {c} has a pole at z = {x.b}") from None
        prod = 1
        for k, e in enumerate(m):
            if e:
                p = powers.get((k, e))
                if p is None:
                    p = powers[(k, e)] = flat[k] ** e
                prod *= p
        total += coeff * prod
    if f.det_power:
        total /= x.det ** f.det_power
    return total


def evaluate_along_orbit(f: RegularFunction, A: LinSystem, x: OrbitState, H: int,
                         trace: Sequence[OrbitState] | None = None) -> ExactSeq:
    """The window ``[b, H]`` of the sequence ``i -> f(s^(i-b)(x))``."""
    states = trace if trace is not None else orbit_trace(A, x, H)
    return ExactSeq(x.b, tuple(evaluate_regular(f, s) for s in states), f"psi({f})")


def sigma_action(f: RegularFunction, A: LinSystem) -> RegularFunction:
    """``f(z + 1, A(z) Z)`` as a regular function."""
    n = f.n
    if A.n != n:
        raise ValueError("dimension mismatch")
    # image of Z[r][c] is sum_k A[r][k] Z[k][c]
    images = []
    for r in range(n):
        for c in range(n):
            lin = {}
            for k in range(n):
                a = A.A[r][k]
                if not a.is_zero():
                    exps = [0] * (n * n)
                    exps[k * n + c] = 1
                    lin[tuple(exps)] = a
            images.append(lin)
    one = {(0,) * (n * n): RatFunc(1)}
    cache: dict[tuple[int, int], dict] = {}

    def power(v: int, e: int) -> dict:
        if e == 0:
            return one
        key = (v, e)
        if key not in cache:
            cache[key] = _poly_mul(power(v, e - 1), images[v])
        return cache[key]

    out: dict[Monomial, RatFunc] = {}
    for m, c in f.terms.items():
        term = {(0,) * (n * n): ratfunc_shift(c, 1)}
        for v, e in enumerate(m):
            if e:
                term = _poly_mul(term, power(v, e))
        out = _poly_add(out, term)
    if f.det_power:
        scale = RatFunc(1) / (A.det() ** f.det_power)
        out = {k: c * scale for k, c in out.items()}
    return RegularFunction(n, out, f.det_power)


def orbit_membership_set(A: LinSystem, x: OrbitState, Y: Subvariety, H: int,
                         trace: Sequence[OrbitState] | None = None) -> set[int]:
    """Positions ``i`` in ``[b, H]`` where every generator of ``Y`` vanishes
    at ``s^(i-b)(x)``."""
    states = trace if trace is not None else orbit_trace(A, x, H)
    hits = set()
    for s in states:
        if all(evaluate_regular(g, s) == 0 for g in Y.generators):
            hits.add(s.b)
    return hits


def rebase(A: LinSystem, b: int) -> LinSystem:
    """``A(z + b)``: moves an orbit starting at ``b`` to start at 0."""
    return A.shift(b)


def rebase_problem(A: LinSystem, x: OrbitState, Y: Subvariety):
    """The rebased triple ``(A(z+b), (0, B), Y(z+b))``."""
    return rebase(A, x.b), OrbitState(0, x.B), Y.shift_z(x.b)
