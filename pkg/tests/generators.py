"""Random instances shared by the test modules."""

from __future__ import annotations

import random
from fractions import Fraction

from pvseq.algebra import Poly, RatFunc
from pvseq.orbit import RegularFunction
from pvseq.recurrence import Equation, LinSystem


def random_poly(rng: random.Random, degree: int, lo: int = -5, hi: int = 5) -> Poly:
    return Poly([rng.randint(lo, hi) for _ in range(degree + 1)])


def random_bell_equation(rng: random.Random, order: int, degree: int) -> Equation:
    """Polynomial h_1..h_{n-1} of degree <= ``degree``, non-zero constant h_0."""
    h0 = rng.choice([c for c in range(-5, 6) if c])
    rest = [random_poly(rng, rng.randint(0, degree)) for _ in range(order - 1)]
    return Equation((RatFunc(h0), *(RatFunc(p) for p in rest)))


def random_unimodular(rng: random.Random, n: int, degree: int) -> LinSystem:
    """Product of polynomial elementary matrices, a permutation and a
    constant diagonal: polynomial entries with constant non-zero det."""
    def eye():
        return [[RatFunc(int(i == j)) for j in range(n)] for i in range(n)]

    def matmul(a, b):
        return [[sum((a[i][k] * b[k][j] for k in range(n)), RatFunc(0)) for j in range(n)]
                for i in range(n)]

    M = eye()
    for _ in range(2 if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        E = eye()
        E[i][j] = RatFunc(random_poly(rng, rng.randint(0, degree), -2, 2))
        M = matmul(M, E)
    perm = list(range(n))
    rng.shuffle(perm)
    P = [[RatFunc(int(perm[i] == j)) for j in range(n)] for i in range(n)]
    D = eye()
    for i in range(n):
        D[i][i] = RatFunc(rng.choice([-2, -1, 1, 2]))
    return LinSystem(tuple(tuple(r) for r in matmul(matmul(M, P), D)))


def random_rational_system(rng: random.Random, n: int, max_pole: int = 6) -> LinSystem:
    """Entries (az+b)/(z-p) or small integers, poles at small naturals."""
    while True:
        rows = []
        for _ in range(n):
            row = []
            for _ in range(n):
                if rng.random() < 0.4:
                    row.append(RatFunc(rng.randint(-3, 3)))
                else:
                    num = Poly([rng.randint(-3, 3), rng.randint(-2, 2)])
                    den = Poly([-rng.randint(0, max_pole), 1])
                    row.append(RatFunc(num) / RatFunc(den))
            rows.append(tuple(row))
        try:
            return LinSystem(tuple(rows))
        except Exception:
            continue


def random_invertible(rng: random.Random, n: int) -> tuple[tuple[Fraction, ...], ...]:
    from pvseq.linalg import mat_det

    while True:
        M = tuple(tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(n))
                  for _ in range(n))
        if mat_det(M) != 0:
            return M


def random_regular(rng: random.Random, n: int, max_degree: int = 2, max_det_power: int = 1,
                   terms: int = 3) -> RegularFunction:
    nvars = n * n
    out = RegularFunction.const(n, 0)
    for _ in range(terms):
        deg = rng.randint(0, max_degree)
        exps = [0] * nvars
        for _ in range(deg):
            exps[rng.randrange(nvars)] += 1
        zdeg = rng.randint(0, max_degree - deg)
        coeff = RatFunc(Poly([0] * zdeg + [rng.choice([-3, -2, -1, 1, 2, 3])]))
        out = out + RegularFunction(n, {tuple(exps): coeff})
    if out.is_zero():
        out = RegularFunction.const(n, 1)
    m = rng.randint(0, max_det_power)
    return RegularFunction(n, out.terms, m)
