"""The square state space: sharp is not the same as extremal, and spectrality fails."""
from fractions import Fraction as F

from speclat import (
    builtin,
    enumerate_contexts,
    extreme_states,
    is_extremal,
    is_sharp,
    sharpness_certificate,
    spectral_decomposition,
)
from speclat.linalg import format_vector

E = builtin("square")
print("extreme states:")
for s in extreme_states(E).vertices:
    print("  ", format_vector(s.coords))

h = E.effect((F(1, 2), F(1, 2), 0))
print("h =", format_vector(h.coords), "sharp:", is_sharp(h), "extremal:", is_extremal(h))

g = E.effect((F(1, 4), F(1, 4), F(1, 2)))
print("g =", format_vector(g.coords), "sharp:", is_sharp(g))
print("  something below both g and u - g:", format_vector(sharpness_certificate(g).coords))

print("contexts:")
for ctx in enumerate_contexts(E).contexts:
    print("  ", " + ".join(format_vector(a.coords) for a in ctx))

result = spectral_decomposition(g)
print("decomposing g:", getattr(result, "reason", result))
