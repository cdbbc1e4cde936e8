"""Small exact matrix routines.

Matrices of rationals are tuples of row tuples of :class:`Fraction`.
The nullspace solver works over the integers with Bareiss fraction-free
elimination, which keeps intermediate entries bounded by minors of the
input instead of accumulating huge denominators.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

Matrix = tuple[tuple[Fraction, ...], ...]


class SingularMatrix(ArithmeticError):
    pass


def to_matrix(rows) -> Matrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def identity(n: int) -> Matrix:
    one, zero = Fraction(1), Fraction(0)
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    cols = list(zip(*b))
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in cols) for row in a)


def mat_vec(a: Matrix, v: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(sum((x * y for x, y in zip(row, v)), Fraction(0)) for row in a)


def mat_det(a: Matrix) -> Fraction:
    """Determinant by Gaussian elimination over Q."""
    m = [list(row) for row in a]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        p = m[c][c]
        det *= p
        for r in range(c + 1, n):
            f = m[r][c]
            if f:
                f /= p
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return det


def mat_inv(a: Matrix) -> Matrix:
    """Inverse by Gauss-Jordan; raises :class:`SingularMatrix`."""
    n = len(a)
    m = [list(row) + list(e) for row, e in zip(a, identity(n))]
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            raise SingularMatrix("matrix is not invertible")
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return tuple(tuple(row[n:]) for row in m)


def solve(a: Matrix, b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return mat_vec(mat_inv(a), b)


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        ints = [x.numerator * (den // x.denominator) for x in row]
        g = 0
        for v in ints:
            g = math.gcd(g, v)
        out.append([v // g for v in ints] if g > 1 else ints)
    return out


def bareiss_echelon(rows: Sequence[Sequence[int]]) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form; returns (rows, pivot columns).

    Every division in the elimination step is exact.
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        piv = next((k for k in range(r, nrows) if m[k][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        for k in range(r + 1, nrows):
            mk = m[k]
            f = mk[c]
            mk_new = [(p * mk[j] - f * m[r][j]) // prev for j in range(ncols)]
            m[k] = mk_new
        prev = p
        pivots.append(c)
        r += 1
    return m[:r], pivots


def nullspace(rows: Sequence[Sequence[Fraction | int]], ncols: int | None = None) -> list[list[int]]:
    """Basis of the right kernel as primitive integer vectors.

    One basis vector per free column, in increasing order of that column.
    """
    if not rows:
        if ncols is None:
            raise ValueError("ncols is required for an empty system")
        return [[1 if j == k else 0 for j in range(ncols)] for k in range(ncols)]
    ints = _integer_rows([[Fraction(x) for x in row] for row in rows])
    ncols = len(ints[0])
    ech, pivots = bareiss_echelon(ints)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for fcol in free:
        x = [Fraction(0)] * ncols
        x[fcol] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            row = ech[r]
            s = sum((row[j] * x[j] for j in range(pc + 1, ncols) if row[j]), Fraction(0))
            x[pc] = -s / row[pc]
        den = 1
        for v in x:
            den = den * v.denominator // math.gcd(den, v.denominator)
        vec = [int(v * den) for v in x]
        g = 0
        for v in vec:
            g = math.gcd(g, v)
        basis.append([v // g for v in vec])
    return basis
