"""
Eventually periodic sets
========================

Finite unions of arithmetic progressions, stored as a threshold, a
modulus, the residues of the tail and a finite sporadic part.
"""

from pvseq import APSet, ap_equal_mod_finite

odd = APSet.progression(1, 2)
thirds = APSet.progression(2, 3)
print("(1+2N) & (2+3N) =", odd & thirds)
print("(0+4N) | (2+4N) =", APSet.progression(0, 4) | APSet.progression(2, 4))
print("complement of {5} =", ~APSet.finite([5]))

s = APSet.finite([3]) | APSet.progression(0, 2)
print("{3} | 2N =", s, "members up to 10:", s.members(10))
print("equal to 2N up to finitely many points:", ap_equal_mod_finite(s, APSet.progression(0, 2)))
print("as JSON:", s.to_json())
