"""
Fibonacci: finite zero sets, period two
=======================================

Every non-zero solution of y(i+2) = y(i+1) + y(i) vanishes only finitely
often, yet the ring generated by a fundamental matrix and the inverse of
its determinant splits into two pieces swapped by the shift.
"""

import random
from fractions import Fraction

from pvseq import (Equation, companion_matrix, decompose_zero_set, fundamental_matrix,
                   pv_period_lower_bound, solve_equation)

H, V, L = 2000, 400, 60
E = Equation.parse(["-1", "-1"])
A = companion_matrix(E)
print("equation:", E)
print("companion matrix:", [[str(h) for h in row] for row in A.A])

f = solve_equation(E, [0, 1], 0, H)
print("F(30) =", f[30])

rng = random.Random(1)
for _ in range(5):
    init = [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(2)]
    dec = decompose_zero_set(solve_equation(E, init, 0, H), L, V)
    print("init", [str(v) for v in init], "zeros", dec.apset, dec.status)

# det Y(i) = (-1)^i, so det Y + 1 vanishes exactly on the odd indices
Y = fundamental_matrix(A, H)
print("det Y(0..5):", [str(Y.det()[i]) for i in range(6)])

pb = pv_period_lower_bound(A, 1, H, V, L)
print("period lower bound:", pb.period)
for w in pb.witnesses:
    print("  ", w.label, "vanishes on", w.decomposition.apset)
