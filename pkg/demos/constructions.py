"""Products of classical algebras stay classical; a convex sum of two bits is the square."""
from fractions import Fraction as F

from speclat import (
    affine_isomorphism_search,
    builtin,
    classify_sum_contexts,
    direct_convex_sum,
    direct_product,
    enumerate_contexts,
    nonspectral_witness_for_sum,
)
from speclat.linalg import format_vector

C2, C3 = builtin("classical", 2), builtin("classical", 3)
P = direct_product(C2, C3)
print("product of C2 and C3 has", len(enumerate_contexts(P.result).contexts), "context(s)")
print("same cone as C5:", P.result.cone == builtin("classical", 5).cone)

S = direct_convex_sum(C2, C2)
left, right = classify_sum_contexts(S)
print("sum contexts:", len(left), "left,", len(right), "right")
w = nonspectral_witness_for_sum(S)
print("witness", format_vector(w.effect.coords), "-", w.reason)
print("mix of (1, 0) and (0, 1) at 1/2:", format_vector(S.mix(F(1, 2), C2.effect((1, 0)), C2.effect((0, 1))).coords))

T = affine_isomorphism_search(S.result, builtin("square"))
print("isomorphism to the square:")
for row in T:
    print("  ", format_vector(row))
