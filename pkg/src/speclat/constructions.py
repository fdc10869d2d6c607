"""Direct products, direct convex sums, isomorphism search and the builtin corpus."""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Effect, EffectAlgebra, interval_vertices, make_algebra, ray_top
from .errors import (
    ClassificationFailure,
    NoSuitableElementError,
    PropositionFailure,
    SizeLimitExceededError,
    UnknownNameError,
    UnsupportedKindError,
)
from .linalg import (
    Vector,
    independent_subset,
    inverse,
    matvec,
    rank,
    smul,
    transpose,
    vector,
    zeros,
)
from .spectral import (
    Context,
    NonSpectralWitness,
    enumerate_contexts,
    sharp_one_dim_elements,
    spectral_decomposition,
)

MAX_ISOMORPHISM_RAYS = 12


def _need_polyhedral(*algebras):
    for E in algebras:
        if not E.is_polyhedral:
            raise UnsupportedKindError(f"{E.kind} algebras are not supported here")


@dataclass(frozen=True)
class ProductAlgebra:
    left: EffectAlgebra
    right: EffectAlgebra
    result: EffectAlgebra

    def pair(self, f1: Effect, f2: Effect) -> Effect:
        return self.result.effect(f1.coords + f2.coords)

    def split(self, f: Effect) -> tuple[Effect, Effect]:
        n = self.left.dim
        return self.left.effect(f.coords[:n]), self.right.effect(f.coords[n:])


def direct_product(E1: EffectAlgebra, E2: EffectAlgebra) -> ProductAlgebra:
    """``E1 x E2``: block cone ``C1 x C2`` with unit ``(u1, u2)``."""
    _need_polyhedral(E1, E2)
    z1, z2 = zeros(E1.dim), zeros(E2.dim)
    gens = [g + z2 for g in E1.cone.generators] + [z1 + h for h in E2.cone.generators]
    name = f"{E1.name} x {E2.name}" if E1.name and E2.name else ""
    result = make_algebra("polyhedral", generators=gens, unit=E1.unit + E2.unit, name=name)
    return ProductAlgebra(E1, E2, result)


def _last_nonzero(u: Sequence) -> int:
    return max(i for i, x in enumerate(u) if x != 0)


def quotient_map(u1: Sequence, u2: Sequence) -> tuple:
    """Matrix of a linear map ``V1 x V2 -> V`` with kernel spanned by ``(u1, -u2)``.

    ``V1`` is coordinatized by the basis ``u1`` plus the standard vectors except
    the one at the last nonzero entry of ``u1``; likewise for ``V2``. The output
    keeps the non-unit coordinates of both sides and one shared unit coordinate.
    """
    n1, n2 = len(u1), len(u2)
    k1, k2 = _last_nonzero(u1), _last_nonzero(u2)
    rows = []
    for j in range(n1):
        if j != k1:
            row = [Fraction(0)] * (n1 + n2)
            row[j] = Fraction(1)
            row[k1] -= u1[j] / u1[k1]
            rows.append(tuple(row))
    for j in range(n2):
        if j != k2:
            row = [Fraction(0)] * (n1 + n2)
            row[n1 + j] = Fraction(1)
            row[n1 + k2] -= u2[j] / u2[k2]
            rows.append(tuple(row))
    last = [Fraction(0)] * (n1 + n2)
    last[k1] = 1 / u1[k1]
    last[n1 + k2] = 1 / u2[k2]
    rows.append(tuple(last))
    return tuple(rows)


@dataclass(frozen=True)
class SumAlgebra:
    left: EffectAlgebra
    right: EffectAlgebra
    result: EffectAlgebra
    basis_map: tuple

    def project(self, x1: Sequence, x2: Sequence) -> Vector:
        return matvec(self.basis_map, vector(x1) + vector(x2))

    def embed_left(self, f1: Effect) -> Effect:
        return self.result.effect(self.project(f1.coords, zeros(self.right.dim)))

    def embed_right(self, f2: Effect) -> Effect:
        return self.result.effect(self.project(zeros(self.left.dim), f2.coords))

    def mix(self, lam, f1: Effect, f2: Effect) -> Effect:
        """The class of ``(lam f1, (1 - lam) f2)``."""
        lam = Fraction(lam)
        return self.result.effect(self.project(smul(lam, f1.coords), smul(1 - lam, f2.coords)))


def direct_convex_sum(E1: EffectAlgebra, E2: EffectAlgebra) -> SumAlgebra:
    """``E1 (+) E2``: the interval below the common unit in ``(C1 x C2)`` modulo ``(u1, -u2)``."""
    _need_polyhedral(E1, E2)
    Q = quotient_map(E1.unit, E2.unit)
    z1, z2 = zeros(E1.dim), zeros(E2.dim)
    unit = matvec(Q, E1.unit + z2)
    if matvec(Q, z1 + E2.unit) != unit:
        raise PropositionFailure("units of the summands are not identified")
    gens = [matvec(Q, g + z2) for g in E1.cone.generators]
    gens += [matvec(Q, z1 + h) for h in E2.cone.generators]
    name = f"{E1.name} (+) {E2.name}" if E1.name and E2.name else ""
    # make_algebra re-verifies pointedness of the image cone
    result = make_algebra("polyhedral", generators=gens, unit=unit, name=name)
    return SumAlgebra(E1, E2, result, Q)


def _context_key(ctx) -> frozenset:
    return frozenset(a.coords for a in ctx)


def classify_sum_contexts(S: SumAlgebra) -> tuple[list[Context], list[Context]]:
    """Split the contexts of ``S`` into images of contexts of the left and right summand.

    A context matching neither side raises :class:`ClassificationFailure`.
    A context may match both sides only when both summands are one-dimensional.
    """
    left = {_context_key([S.embed_left(a) for a in ctx]) for ctx in enumerate_contexts(S.left)}
    right = {_context_key([S.embed_right(b) for b in ctx]) for ctx in enumerate_contexts(S.right)}
    lhs, rhs = [], []
    seen = set()
    for ctx in enumerate_contexts(S.result):
        key = _context_key(ctx)
        seen.add(key)
        if key not in left and key not in right:
            raise ClassificationFailure(f"mixed context {ctx!r}")
        if key in left:
            lhs.append(ctx)
        if key in right:
            rhs.append(ctx)
    missing = (left | right) - seen
    if missing:
        raise ClassificationFailure(f"{len(missing)} summand contexts have no image context")
    return lhs, rhs


def _non_unit_effect(E: EffectAlgebra) -> Effect:
    for f in list(sharp_one_dim_elements(E)) + interval_vertices(E):
        if rank([f.coords, E.unit]) == 2:
            return f
    raise NoSuitableElementError(f"every effect of {E!r} is a multiple of the unit")


def nonspectral_witness_for_sum(S: SumAlgebra, lam=Fraction(1, 2)) -> NonSpectralWitness:
    """Witness that ``[(lam f1, (1 - lam) f2)]`` has no spectral decomposition."""
    f1 = _non_unit_effect(S.left)
    f2 = _non_unit_effect(S.right)
    f = S.mix(lam, f1, f2)
    result = spectral_decomposition(f)
    if not isinstance(result, NonSpectralWitness):
        raise PropositionFailure(f"{f!r} decomposes in a direct convex sum")
    return result


def _normalized_rays(E: EffectAlgebra) -> list[Vector]:
    return [smul(ray_top(E, r), r) for r in E.cone.generators]


def affine_isomorphism_search(E1: EffectAlgebra, E2: EffectAlgebra):
    """A matrix ``T`` with ``T u1 = u2`` mapping the cone of ``E1`` onto that of ``E2``.

    Each extreme ray is scaled to its top point inside ``[0, u]``, which any
    isomorphism must preserve; the search then runs over injective
    assignments of a basis of such points. Returns ``None`` if no isomorphism
    exists.
    """
    _need_polyhedral(E1, E2)
    if E1.dim != E2.dim or len(E1.cone.generators) != len(E2.cone.generators):
        return None
    if len(E1.cone.generators) > MAX_ISOMORPHISM_RAYS:
        raise SizeLimitExceededError(
            f"isomorphism search is capped at {MAX_ISOMORPHISM_RAYS} extreme rays"
        )
    R1, R2 = _normalized_rays(E1), _normalized_rays(E2)
    target = set(R2)
    basis = independent_subset(R1)
    X_inv = inverse(transpose([R1[i] for i in basis]))
    for perm in itertools.permutations(range(len(R2)), len(basis)):
        Y = transpose([R2[j] for j in perm])
        if rank(Y) < len(basis):
            continue
        T = tuple(tuple(sum(y * xi for y, xi in zip(row, col)) for col in zip(*X_inv)) for row in Y)
        if matvec(T, E1.unit) != E2.unit:
            continue
        if {matvec(T, r) for r in R1} == target:
            return T
    return None


def verify_isomorphism(T: Sequence[Sequence], E1: EffectAlgebra, E2: EffectAlgebra) -> bool:
    """Re-check an isomorphism certificate independently of the search."""
    T = [vector(row) for row in T]
    if len(T) != E2.dim or any(len(row) != E1.dim for row in T):
        return False
    if rank(T) != E1.dim or matvec(T, E1.unit) != E2.unit:
        return False
    images = [matvec(T, g) for g in E1.cone.generators]
    if not all(E2.in_cone(v) for v in images):
        return False
    T_inv = inverse(T)
    return all(E1.in_cone(matvec(T_inv, g)) for g in E2.cone.generators)


SQUARE_GENERATORS = ((1, 0, 0), (0, 1, 0), (-1, 0, 1), (0, -1, 1))


def builtin(name: str, param: int | None = None) -> EffectAlgebra:
    """Algebras from the example corpus: ``classical`` (n), ``square``, ``spin`` (d)."""
    if name == "classical":
        return make_algebra("classical", n=param if param is not None else 2)
    if name == "square":
        return make_algebra("polyhedral", generators=SQUARE_GENERATORS, unit=(0, 0, 1), name="square")
    if name == "spin":
        return make_algebra("spin", d=param if param is not None else 2)
    raise UnknownNameError(name)


def builtin_corpus() -> list[EffectAlgebra]:
    return [
        builtin("classical", 2),
        builtin("classical", 3),
        builtin("classical", 4),
        builtin("square"),
        builtin("spin", 2),
        builtin("spin", 3),
    ]
