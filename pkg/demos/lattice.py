"""Sharp elements of spectral algebras form an orthomodular lattice."""
from speclat import builtin, orthomodularity_check, sharp_candidates, sharp_join, sharp_meet
from speclat.linalg import format_vector

for E in (builtin("classical", 3), builtin("spin", 2)):
    cands = sharp_candidates(E)
    rep = orthomodularity_check(E, cands)
    print(f"{E.name}: {len(cands)} sharp elements, {rep.pairs_checked} pairs, "
          f"{rep.triples_checked} triples, orthomodular: {rep.passed}")

C3 = builtin("classical", 3)
p, q = C3.effect((1, 1, 0)), C3.effect((0, 1, 1))
print("join", format_vector(sharp_join(p, q).coords), "meet", format_vector(sharp_meet(p, q).coords))
