"""Linear effect algebras: order intervals ``[0, u]`` in ordered vector spaces.

Three kinds of ambient cone are supported:

``classical``
    the positive orthant of ``Q^n`` with unit ``(1, ..., 1)``;
``polyhedral``
    any pointed full-dimensional polyhedral cone with an interior unit;
``spin``
    the Lorentz cone ``{(t, x) : t >= |x|}`` in ``Q^(1+d)`` with unit
    ``(1, 0, ..., 0)``. Membership is tested through ``t**2 >= |x|**2`` so that
    all predicates stay rational.

Classical algebras are polyhedral too; they carry their own coordinate-wise
predicates so that the generic polyhedral code has an independent check
(see :func:`as_polyhedral`).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cone import Cone, cone_contains, dd_convert, orthant
from .errors import (
    AlgebraMismatchError,
    InvalidEffectError,
    ScalarOutOfRangeError,
    SpanMismatchError,
    SymbolicNormRequiredError,
    UnitNotOrderUnitError,
)
from .linalg import (
    Vector,
    add,
    dot,
    format_vector,
    is_zero,
    rank,
    rational_sqrt,
    smul,
    sub,
    to_fraction,
    vector,
    zeros,
)
from .polytope import HPolytope, lp_solve, polytope_vertices

ONE = Fraction(1)
HALF = Fraction(1, 2)


@dataclass(frozen=True)
class EffectAlgebra:
    kind: str
    dim: int
    unit: Vector
    cone: Cone | None
    name: str = ""

    @property
    def d(self) -> int:
        """Number of Lorentz-cone space coordinates (spin kind)."""
        return self.dim - 1

    @property
    def is_polyhedral(self) -> bool:
        return self.kind in ("classical", "polyhedral")

    def in_cone(self, v: Sequence) -> bool:
        if self.kind == "spin":
            t, x = v[0], v[1:]
            return t >= 0 and t * t >= dot(x, x)
        if self.kind == "classical":
            return all(c >= 0 for c in v)
        return cone_contains(self.cone, v)

    def in_interval(self, v: Sequence) -> bool:
        return self.in_cone(v) and self.in_cone(sub(self.unit, v))

    def effect(self, coords) -> "Effect":
        return Effect(self, vector(coords))

    @property
    def zero(self) -> "Effect":
        return Effect(self, zeros(self.dim))

    @property
    def one(self) -> "Effect":
        return Effect(self, self.unit)

    def interval_polytope(self) -> HPolytope:
        """``[0, u]`` as an H-polytope (polyhedral kinds)."""
        self._need_polyhedral()
        ineqs = [(a, 0) for a in self.cone.facets]
        ineqs += [(tuple(-x for x in a), -dot(a, self.unit)) for a in self.cone.facets]
        return HPolytope.build(self.dim, ineqs)

    def state_polytope(self) -> HPolytope:
        """Normalized dual-cone elements ``{s : s.g >= 0, s.u = 1}`` (polyhedral kinds)."""
        self._need_polyhedral()
        return HPolytope.build(
            self.dim, [(g, 0) for g in self.cone.generators], [(self.unit, 1)]
        )

    def _need_polyhedral(self):
        if not self.is_polyhedral:
            raise TypeError(f"{self.kind} algebras have no polyhedral description")

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<EffectAlgebra{label} kind={self.kind} dim={self.dim}>"


@dataclass(frozen=True, repr=False)
class Effect:
    """An element of ``[0, u]``; validated on construction."""

    algebra: EffectAlgebra
    coords: Vector

    def __post_init__(self):
        if len(self.coords) != self.algebra.dim:
            raise InvalidEffectError(
                f"expected {self.algebra.dim} coordinates, got {len(self.coords)}"
            )
        if not self.algebra.in_interval(self.coords):
            raise InvalidEffectError(f"{format_vector(self.coords)} is not in [0, u]")

    @property
    def is_zero(self) -> bool:
        return is_zero(self.coords)

    def __repr__(self):
        return f"Effect{format_vector(self.coords)}"

    def __lt__(self, other):
        # canonical ordering, used only for sorting
        return self.coords < other.coords


def make_algebra(kind: str, *, n: int | None = None, d: int | None = None,
                 generators=None, unit=None, name: str = "") -> EffectAlgebra:
    """Build and validate an effect algebra.

    >>> make_algebra("classical", n=2).unit
    (Fraction(1, 1), Fraction(1, 1))
    """
    if kind == "classical":
        if n is None or n < 1:
            raise ValueError("classical algebras need n >= 1")
        return EffectAlgebra("classical", n, (ONE,) * n, orthant(n), name or f"classical({n})")
    if kind == "spin":
        if d is None or d < 1:
            raise ValueError("spin factors need d >= 1")
        return EffectAlgebra("spin", d + 1, (ONE,) + zeros(d), None, name or f"spin({d})")
    if kind == "polyhedral":
        if generators is None or unit is None:
            raise ValueError("polyhedral algebras need generators and a unit")
        cone = dd_convert(generators)
        u = vector(unit)
        if len(u) != cone.dim:
            raise ValueError("unit has wrong dimension")
        # order unit <=> interior point of a full-dimensional cone
        if not cone.is_full_dimensional or any(dot(a, u) <= 0 for a in cone.facets):
            raise UnitNotOrderUnitError(f"{format_vector(u)} is not an order unit")
        return EffectAlgebra("polyhedral", cone.dim, u, cone, name)
    raise ValueError(f"unknown algebra kind {kind!r}")


def as_polyhedral(E: EffectAlgebra) -> EffectAlgebra:
    """The same algebra relabelled so that only generic polyhedral code paths are used."""
    E._need_polyhedral()
    return EffectAlgebra("polyhedral", E.dim, E.unit, E.cone, E.name)


def _same_algebra(a: Effect, b: Effect):
    if a.algebra is not b.algebra and a.algebra != b.algebra:
        raise AlgebraMismatchError("effects belong to different algebras")


def effect_sum(a: Effect, b: Effect) -> Effect | None:
    """``a + b``, or ``None`` when the sum exceeds the unit.

    The partial operation is modelled by returning ``None``, not by raising.
    """
    _same_algebra(a, b)
    s = add(a.coords, b.coords)
    if not a.algebra.in_cone(sub(a.algebra.unit, s)):
        return None
    return Effect(a.algebra, s)


def complement(a: Effect) -> Effect:
    return Effect(a.algebra, sub(a.algebra.unit, a.coords))


def scale(lam, a: Effect) -> Effect:
    lam = to_fraction(lam)
    if not 0 <= lam <= 1:
        raise ScalarOutOfRangeError(f"scalar {lam} outside [0, 1]")
    return Effect(a.algebra, smul(lam, a.coords))


def convex_combination(lam, a: Effect, b: Effect) -> Effect:
    """``lam a + (1 - lam) b``."""
    _same_algebra(a, b)
    lam = to_fraction(lam)
    if not 0 <= lam <= 1:
        raise ScalarOutOfRangeError(f"scalar {lam} outside [0, 1]")
    return Effect(a.algebra, add(smul(lam, a.coords), smul(1 - lam, b.coords)))


def leq(a: Effect, b: Effect) -> bool:
    _same_algebra(a, b)
    return a.algebra.in_cone(sub(b.coords, a.coords))


def _interval_tight(E: EffectAlgebra, v: Sequence) -> list[Vector]:
    rest = sub(E.unit, v)
    return [a for a in E.cone.facets if dot(a, v) == 0] + [
        a for a in E.cone.facets if dot(a, rest) == 0
    ]


def spin_parts(f: Effect) -> tuple[Fraction, Vector]:
    return f.coords[0], f.coords[1:]


def is_one_dimensional(f: Effect) -> bool:
    E = f.algebra
    if f.is_zero:
        return False
    if E.kind == "classical":
        return sum(1 for c in f.coords if c != 0) == 1
    if E.kind == "spin":
        t, x = spin_parts(f)
        return t * t == dot(x, x)
    return rank(E.cone.tight_facets(f.coords)) == E.dim - 1


def sharpness_certificate(f: Effect) -> Effect | None:
    """A nonzero ``g`` with ``g <= f`` and ``g <= u - f``, or ``None`` if ``f`` is sharp.

    Polyhedral kinds only. Maximizes a strictly positive functional (the sum
    of facet normals) over ``{g in P : f - g in P, (u - f) - g in P}``.
    """
    E = f.algebra
    E._need_polyhedral()
    facets = E.cone.facets
    rest = sub(E.unit, f.coords)
    ineqs = [(a, 0) for a in facets]
    for bound in (f.coords, rest):
        ineqs += [(tuple(-x for x in a), -dot(a, bound)) for a in facets]
    positive = tuple(sum(col, Fraction(0)) for col in zip(*facets))
    value, g = lp_solve(positive, HPolytope.build(E.dim, ineqs), "max")
    if value == 0:
        return None
    return Effect(E, g)


def is_sharp(f: Effect) -> bool:
    E = f.algebra
    if E.kind == "classical":
        return all(c in (0, 1) for c in f.coords)
    if E.kind == "spin":
        return _spin_is_projection(f)
    return sharpness_certificate(f) is None


def _spin_is_projection(f: Effect) -> bool:
    t, x = spin_parts(f)
    xx = dot(x, x)
    if xx == 0:
        return t in (0, 1)
    return t == HALF and xx == HALF * HALF


def is_extremal(f: Effect) -> bool:
    E = f.algebra
    if E.kind == "classical":
        return all(c in (0, 1) for c in f.coords)
    if E.kind == "spin":
        # extreme points of the double cone: both apexes and the rim
        return _spin_is_projection(f)
    return rank(_interval_tight(E, f.coords)) == E.dim


def spin_norm(x: Sequence) -> Fraction:
    """Euclidean norm of ``x``; raises if it is irrational."""
    r = rational_sqrt(dot(x, x))
    if r is None:
        raise SymbolicNormRequiredError(
            f"|x| is irrational for x = {format_vector(x)}; rescale to a rational-norm direction"
        )
    return r


def order_unit_norm(v: Sequence, E: EffectAlgebra) -> Fraction:
    """``inf {lam > 0 : -lam u <= v <= lam u}``, computed exactly."""
    v = vector(v)
    if len(v) != E.dim:
        raise SpanMismatchError(f"vector has {len(v)} coordinates, algebra has dimension {E.dim}")
    if E.kind == "classical":
        return max(abs(c) for c in v)
    if E.kind == "spin":
        return abs(v[0]) + spin_norm(v[1:])
    # single variable lam: lam (a.u) >= |a.v| for every facet a, lam >= 0
    ineqs = [((Fraction(1),), 0)]
    for a in E.cone.facets:
        au, av = dot(a, E.unit), dot(a, v)
        ineqs.append(((au,), av))
        ineqs.append(((au,), -av))
    value, _ = lp_solve((1,), HPolytope.build(1, ineqs), "min")
    return value


def ray_top(E: EffectAlgebra, r: Sequence) -> Fraction:
    """Largest ``lam`` with ``lam r <= u`` for a nonzero ``r`` in the cone."""
    E._need_polyhedral()
    ineqs = [((Fraction(1),), 0)]
    for a in E.cone.facets:
        ineqs.append(((-dot(a, r),), -dot(a, E.unit)))
    value, _ = lp_solve((1,), HPolytope.build(1, ineqs), "max")
    return value


def interval_vertices(E: EffectAlgebra) -> list[Effect]:
    """Vertices of ``[0, u]`` (polyhedral kinds), in canonical order."""
    E._need_polyhedral()
    if E.kind == "classical":
        pts = [tuple(map(Fraction, p)) for p in itertools.product((0, 1), repeat=E.dim)]
    else:
        pts = polytope_vertices(E.interval_polytope())
    return [Effect(E, p) for p in sorted(pts)]
