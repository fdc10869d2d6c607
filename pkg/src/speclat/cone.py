"""Pointed polyhedral cones in double representation.

The conversion between generators and facet inequalities is done with the
double description method (Motzkin et al.), in exact rational arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import NotPointedError
from .linalg import (
    Vector,
    canonical_line,
    canonical_ray,
    dot,
    independent_subset,
    inverse,
    is_zero,
    linear_combination,
    nullspace,
    rank,
    rref,
    transpose,
    unit_vector,
    vector,
)


def extreme_rays(inequalities: Sequence[Sequence], equalities: Sequence[Sequence], dim: int) -> list[Vector]:
    """Extreme rays of ``{y : a.y >= 0 (a in inequalities), e.y = 0 (e in equalities)}``.

    The set must be pointed; a nontrivial lineality space raises
    :class:`NotPointedError`. Rays come back canonical and sorted.
    """
    if equalities:
        basis = nullspace(equalities, dim)
    else:
        basis = [unit_vector(dim, i) for i in range(dim)]
    k = len(basis)
    if k == 0:
        return []

    rows: list[Vector] = []
    seen = set()
    for a in inequalities:
        row = tuple(dot(a, b) for b in basis)
        if is_zero(row):
            continue
        key = canonical_ray(row)
        if key not in seen:
            seen.add(key)
            rows.append(key)
    if rank(rows) < k:
        raise NotPointedError("constraint system has a nontrivial lineality space")

    init = independent_subset(rows)
    inv = inverse([rows[i] for i in init])
    # columns of the inverse are the rays of the initial simplicial cone
    rays = [canonical_ray(col) for col in transpose(inv)]
    zero_sets = [frozenset(i for i in init if dot(rows[i], r) == 0) for r in rays]
    processed = list(init)

    for j in range(len(rows)):
        if j in init:
            continue
        a = rows[j]
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        keep = [i for i, v in enumerate(vals) if v >= 0]
        new_rays = [rays[i] for i in keep]
        new_zero = [zero_sets[i] | {j} if vals[i] == 0 else zero_sets[i] for i in keep]
        for ip in pos:
            for ineg in neg:
                common = zero_sets[ip] & zero_sets[ineg]
                if len(common) < k - 2:
                    continue
                if rank([rows[i] for i in common]) != k - 2:
                    continue
                r = canonical_ray(
                    tuple(vals[ip] * y - vals[ineg] * x for x, y in zip(rays[ip], rays[ineg]))
                )
                new_rays.append(r)
                new_zero.append(common | {j})
        rays, zero_sets = new_rays, new_zero
        processed.append(j)

    out = {canonical_ray(linear_combination(r, basis, dim)) for r in rays}
    return sorted(out)


@dataclass(frozen=True)
class Cone:
    """A pointed polyhedral cone, stored in both representations.

    ``generators`` are the extreme rays and ``facets`` the inward facet
    normals, both as coprime integer vectors in lexicographic order.
    ``equations`` span the orthogonal complement of the cone's linear hull
    and is empty for full-dimensional cones. Instances are immutable, so the
    two representations never drift apart.
    """

    dim: int
    generators: tuple
    facets: tuple
    equations: tuple = ()

    @property
    def is_full_dimensional(self) -> bool:
        return not self.equations

    def __contains__(self, v) -> bool:
        return cone_contains(self, v)

    def tight_facets(self, v) -> list[Vector]:
        return [a for a in self.facets if dot(a, v) == 0]

    def __repr__(self):
        return f"Cone(dim={self.dim}, rays={len(self.generators)}, facets={len(self.facets)})"


def dd_convert(generators: Iterable[Sequence]) -> Cone:
    """Build the cone generated by ``generators``.

    Non-extreme and duplicate generators are dropped. Raises
    :class:`NotPointedError` if the generated cone contains a line.
    """
    gens = [vector(g) for g in generators]
    if not gens:
        raise ValueError("need at least one generator")
    dim = len(gens[0])
    if any(len(g) != dim for g in gens):
        raise ValueError("generators have different dimensions")
    if any(is_zero(g) for g in gens):
        raise ValueError("the zero vector is not a valid generator")
    gens = sorted({canonical_ray(g) for g in gens})

    eqs = nullspace(gens, dim)
    facets = extreme_rays(gens, eqs, dim)
    if rank(list(facets) + eqs) < dim:
        raise NotPointedError("generated cone contains a line")
    extreme = [g for g in gens if rank([a for a in facets if dot(a, g) == 0] + eqs) == dim - 1]
    equations = tuple(sorted(canonical_line(r) for r in rref(eqs, dim)[0])) if eqs else ()
    return Cone(dim, tuple(extreme), tuple(facets), equations)


def dual_cone(c: Cone) -> Cone:
    """The dual cone ``{w : w.v >= 0 for all v in c}``.

    For a pointed full-dimensional cone this just swaps the two
    representations. Lower-dimensional cones have a dual containing a line
    and are rejected.
    """
    if not c.is_full_dimensional:
        raise NotPointedError("dual of a lower-dimensional cone contains a line")
    return Cone(c.dim, c.facets, c.generators)


def cone_contains(c: Cone, v: Sequence) -> bool:
    if len(v) != c.dim:
        raise ValueError("dimension mismatch")
    return all(dot(a, v) >= 0 for a in c.facets) and all(dot(e, v) == 0 for e in c.equations)


def orthant(n: int) -> Cone:
    basis = tuple(unit_vector(n, i) for i in range(n))
    return Cone(n, tuple(sorted(basis)), tuple(sorted(basis)))
