"""Spectral decomposition in the spin factor with a rational norm."""
from fractions import Fraction as F

from speclat import builtin, grouped_decomposition, minmax_extrema, order_unit_norm, require_decomposition, sharp_cover
from speclat.linalg import format_fraction, format_vector

E = builtin("spin", 2)
f = E.effect((F(1, 2), F(3, 20), F(1, 5)))
d = require_decomposition(f)
print("f =", format_vector(f.coords))
for mu, a in zip(d.coefficients, d.context):
    print(f"  {format_fraction(mu)} * {format_vector(a.coords)}")

ext = minmax_extrema(f, d)
print("state max", format_fraction(ext.max), "state min", format_fraction(ext.min))
print("order unit norm", format_fraction(order_unit_norm(f.coords, E)))
print("grouped levels", [(format_fraction(mu), format_vector(p.coords)) for mu, p in grouped_decomposition(f, d).levels])
print("sharp cover", format_vector(sharp_cover(f).coords))
