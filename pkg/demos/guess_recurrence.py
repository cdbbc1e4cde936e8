"""
Guessing recurrences
====================

Products of solutions of linear recurrences satisfy linear recurrences
again. Fit one from data and confirm it on every value.
"""

from math import factorial

from pvseq import Equation, guess_recurrence, solve_equation

print("factorials:", guess_recurrence([factorial(i) for i in range(40)], 2, 1))

fib = solve_equation(Equation.parse(["-1", "-1"]), [0, 1], 0, 99)
pell = solve_equation(Equation.parse(["-1", "-2"]), [1, 1], 0, 99)
product = [a * b for a, b in zip(fib.values, pell.values)]
G = guess_recurrence(product, 4, 2)
print("fibonacci * pell:", G)
print("holds on all 100 values:", G.satisfied_by(product))

# polynomial coefficients push the degree up
E1 = Equation.parse(["1", "z"])
E2 = Equation.parse(["-1", "z+1"])
f1 = solve_equation(E1, [1, 2], 0, 159)
f2 = solve_equation(E2, [1, -1], 0, 159)
prod = [a * b for a, b in zip(f1.values, f2.values)]
print("within degree 2:", guess_recurrence(prod, 4, 2))
print("within degree 4:", guess_recurrence(prod, 4, 4))
