"""
Exact rational functions
========================

Parsing, evaluation, shifts and integer roots over Q(z).
"""

from pvseq import Poly, PoleError, RatFunc, poly_integer_roots

h = RatFunc.parse("(z-4)/(z-5)")
print("h(z)      =", h)
print("h(4)      =", h(4))
print("h(z+5)    =", h.shift(5))

try:
    h(5)
except PoleError as exc:
    print("h(5)      -> pole at", exc.point)

# canonical form: common factors cancel, denominator is monic
print("(2z+2)/(4z^2-4) =", RatFunc.parse("(2*z+2)/(4*z^2-4)"))

p = Poly.from_roots([0, 3, 3, -7])
print("roots of", p, "->", sorted(poly_integer_roots(p)))
