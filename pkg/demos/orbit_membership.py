"""
Orbits of the shift map
=======================

The pair (b, B) moves to (b+1, A(b) B). Regular functions evaluated along
the orbit give sequences, and the shift on functions matches the shift
on those sequences.
"""

from pvseq import (Equation, LinSystem, OrbitState, RatFunc, RegularFunction, Subvariety,
                   companion_matrix, evaluate_along_orbit, orbit_defined_prefix,
                   orbit_membership_set, rebase_problem, seq_shift, sigma_action)

A = companion_matrix(Equation.parse(["-1", "-1"]))
x = OrbitState.identity_at(0, 2)

f = RegularFunction.parse("Z[1][1]", 2)
print("psi(Z11):", [str(v) for v in evaluate_along_orbit(f, A, x, 10).values])
print("sigma(Z11) =", sigma_action(f, A))
print("sigma(detZ) =", sigma_action(RegularFunction.det(2), A))

g = RegularFunction.parse("z*Z[1][2] + detZ^-1", 2)
lhs = evaluate_along_orbit(sigma_action(g, A), A, x, 30)
rhs = seq_shift(evaluate_along_orbit(g, A, x, 31), 1)
print("psi(sigma g) = shift(psi g) on [0, 30]:", all(lhs[i] == rhs[i] for i in range(31)))

odd = orbit_membership_set(A, x, Subvariety((RegularFunction.parse("detZ + 1", 2),)), 20)
print("orbit in V(detZ + 1) at:", sorted(odd))

# a pole at z = 5 and a zero of the determinant at z = 4
B = LinSystem(((RatFunc.parse("(z-4)/(z-5)"),),))
print("defined prefix from b=0:", orbit_defined_prefix(B, OrbitState.identity_at(0, 1), 30))
print("defined prefix from b=6:", orbit_defined_prefix(B, OrbitState.identity_at(6, 1), 30))

Y = Subvariety((RegularFunction.parse("(z - 9)*Z[1][1]", 1),))
x6 = OrbitState.identity_at(6, 1)
A0, x0, Y0 = rebase_problem(B, x6, Y)
print("membership from b=6:", sorted(orbit_membership_set(B, x6, Y, 30)))
print("after rebasing (+6):", sorted(i + 6 for i in orbit_membership_set(A0, x0, Y0, 24)))
