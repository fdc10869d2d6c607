"""Contexts, spectral decompositions and the lattice of sharp elements."""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .algebra import (
    HALF,
    Effect,
    EffectAlgebra,
    complement,
    convex_combination,
    interval_vertices,
    is_one_dimensional,
    is_sharp,
    leq,
    order_unit_norm,
    ray_top,
    spin_norm,
    spin_parts,
)
from .errors import (
    DecompositionMismatchError,
    NotSharpError,
    NotSpectralError,
    PropositionFailure,
)
from .linalg import (
    Vector,
    add,
    dot,
    is_zero,
    linear_combination,
    rational_sqrt,
    rational_unit_vector,
    smul,
    solve,
    sub,
    unit_vector,
    vector,
    zeros,
)
from .polytope import lp_solve
from .states import State, hat_face


@dataclass(frozen=True)
class SpinSharpFamily:
    """The sharp one-dimensional effects ``(1/2)(1, w)``, ``|w| = 1``, of a spin factor."""

    algebra: EffectAlgebra

    @property
    def d(self) -> int:
        return self.algebra.d

    def member(self, omega: Sequence) -> Effect:
        w = vector(omega)
        if dot(w, w) != 1:
            raise ValueError("direction must have unit norm")
        return self.algebra.effect((HALF,) + smul(HALF, w))

    def __contains__(self, f: Effect) -> bool:
        return f.algebra == self.algebra and is_one_dimensional(f) and is_sharp(f)


@dataclass(frozen=True)
class Context:
    """Sharp one-dimensional effects summing to the unit.

    Elements are kept in descending lexicographic order of their coordinates,
    so the classical context reads ``e_1, ..., e_n``.
    """

    algebra: EffectAlgebra
    elements: tuple

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return "Context{" + ", ".join(map(repr, self.elements)) + "}"


def make_context(elements: Sequence[Effect]) -> Context:
    """Validate and canonicalize a context."""
    elements = list(elements)
    if not elements:
        raise ValueError("a context needs at least one element")
    E = elements[0].algebra
    total = zeros(E.dim)
    for a in elements:
        if a.algebra != E:
            raise ValueError("context elements belong to different algebras")
        if not (is_one_dimensional(a) and is_sharp(a)):
            raise ValueError(f"{a!r} is not sharp and one-dimensional")
        total = add(total, a.coords)
    if total != E.unit:
        raise ValueError("context elements do not sum to the unit")
    if len({a.coords for a in elements}) != len(elements):
        raise ValueError("context elements are not distinct")
    return Context(E, tuple(sorted(elements, reverse=True)))


@dataclass(frozen=True)
class ContextFamily:
    """All contexts of an algebra: a finite list, or the spin-factor parametric family."""

    algebra: EffectAlgebra
    contexts: tuple = ()
    parametric: bool = False

    @property
    def count(self):
        return math.inf if self.parametric else len(self.contexts)

    def context_for(self, omega: Sequence) -> Context:
        """The context ``{(1/2)(1, w), (1/2)(1, -w)}`` of a spin factor."""
        if not self.parametric:
            raise TypeError("finite context families are not parametrized")
        fam = SpinSharpFamily(self.algebra)
        w = vector(omega)
        return make_context([fam.member(w), fam.member(smul(-1, w))])

    def __iter__(self):
        if self.parametric:
            raise TypeError("the spin context family is uncountable")
        return iter(self.contexts)


@dataclass(frozen=True)
class Decomposition:
    """``f = sum(mu_i a_i)`` over a context, with coefficients in [0, 1]
    (or arbitrary reals for vectors of the ambient space)."""

    context: Context
    coefficients: tuple

    def recompose(self) -> Vector:
        E = self.context.algebra
        return linear_combination(self.coefficients, [a.coords for a in self.context], E.dim)


@dataclass(frozen=True)
class GroupedDecomposition:
    """Levels ``(mu, p)`` with strictly decreasing positive ``mu`` and sharp ``p``."""

    levels: tuple

    @property
    def coefficients(self) -> tuple:
        return tuple(c for c, _ in self.levels)

    @property
    def projections(self) -> tuple:
        return tuple(p for _, p in self.levels)


@dataclass(frozen=True)
class NonSpectralWitness:
    effect: Effect
    checked_contexts: ContextFamily
    reason: str


def _spin_direction_context(E: EffectAlgebra, w: Vector) -> Context:
    fam = SpinSharpFamily(E)
    return make_context([fam.member(w), fam.member(smul(-1, w))])


@functools.lru_cache(maxsize=128)
def _polyhedral_s1(E: EffectAlgebra) -> tuple:
    out = []
    for r in E.cone.generators:
        top = E.effect(smul(ray_top(E, r), r))
        if is_sharp(top):
            out.append(top)
    return tuple(sorted(out, reverse=True))


def sharp_one_dim_elements(E: EffectAlgebra):
    """``S_1(E)``: a sorted tuple of effects, or a :class:`SpinSharpFamily`.

    On a polyhedral cone a one-dimensional effect lies on an extreme ray, and
    a sharp one-dimensional effect is extremal, hence the far endpoint of the
    segment ``[0, u]`` cuts from that ray. Each such endpoint is tested.
    """
    if E.kind == "spin":
        return SpinSharpFamily(E)
    if E.kind == "classical":
        return tuple(E.effect(unit_vector(E.dim, i)) for i in range(E.dim))
    return _polyhedral_s1(E)


@functools.lru_cache(maxsize=128)
def _polyhedral_contexts(E: EffectAlgebra) -> tuple:
    s1 = _polyhedral_s1(E)
    u = E.unit
    found = []

    def search(start, chosen, total):
        if total == u:
            found.append(Context(E, tuple(chosen)))
            return
        for i in range(start, len(s1)):
            nxt = add(total, s1[i].coords)
            # partial sums of a context are effects
            if E.in_cone(sub(u, nxt)):
                search(i + 1, chosen + [s1[i]], nxt)

    search(0, [], zeros(E.dim))
    return tuple(found)


def enumerate_contexts(E: EffectAlgebra) -> ContextFamily:
    if E.kind == "spin":
        return ContextFamily(E, parametric=True)
    if E.kind == "classical":
        return ContextFamily(E, (Context(E, sharp_one_dim_elements(E)),))
    return ContextFamily(E, _polyhedral_contexts(E))


def spectral_decomposition(f: Effect) -> Decomposition | NonSpectralWitness:
    """A decomposition ``f = sum(mu_i a_i)``, or a witness that none exists.

    Finite context families are tried in canonical order and the first
    context with all coefficients in [0, 1] wins. Spin effects ``(t, x)``
    decompose as ``(t +- |x|)`` on ``(1/2)(1, +-x/|x|)``, which needs ``|x|``
    rational.
    """
    E = f.algebra
    if E.kind == "classical":
        ctx = enumerate_contexts(E).contexts[0]
        return Decomposition(ctx, tuple(dot(a.coords, f.coords) for a in ctx))
    if E.kind == "spin":
        t, x = spin_parts(f)
        if is_zero(x):
            ctx = _spin_direction_context(E, unit_vector(E.d, 0))
            return Decomposition(ctx, (t, t))
        r = spin_norm(x)
        w = smul(1 / r, x)
        ctx = _spin_direction_context(E, w)
        plus = (HALF,) + smul(HALF, w)
        coeffs = tuple(t + r if a.coords == plus else t - r for a in ctx)
        return Decomposition(ctx, coeffs)

    family = enumerate_contexts(E)
    for ctx in family.contexts:
        mu = solve([a.coords for a in ctx], f.coords)
        if mu is not None and all(0 <= m <= 1 for m in mu):
            return Decomposition(ctx, mu)
    return NonSpectralWitness(
        f, family, f"no coefficients in [0, 1] over any of the {len(family.contexts)} contexts"
    )


def all_spectral_decompositions(f: Effect) -> list[Decomposition]:
    """Every decomposition of ``f`` over a finite context family."""
    family = enumerate_contexts(f.algebra)
    out = []
    for ctx in family.contexts:
        mu = solve([a.coords for a in ctx], f.coords)
        if mu is not None and all(0 <= m <= 1 for m in mu):
            out.append(Decomposition(ctx, mu))
    return out


def require_decomposition(f: Effect) -> Decomposition:
    d = spectral_decomposition(f)
    if isinstance(d, NonSpectralWitness):
        raise NotSpectralError(d)
    return d


def decompose_vector(v: Sequence, E: EffectAlgebra) -> tuple[Context, tuple]:
    """Write any ambient vector as a real combination of one context.

    Scales ``v`` into ``[0, u]`` with its order-unit norm ``lam``, decomposes
    ``a = v/(2 lam) + u/2`` and maps coefficients back by ``lam (2 nu - 1)``.
    """
    v = vector(v)
    lam = order_unit_norm(v, E)
    if lam == 0:
        ctx = require_decomposition(E.one).context
        return ctx, zeros(len(ctx))
    a = E.effect(add(smul(1 / (2 * lam), v), smul(HALF, E.unit)))
    d = require_decomposition(a)
    return d.context, tuple(lam * (2 * nu - 1) for nu in d.coefficients)


def _check_recomposes(f: Effect, d: Decomposition):
    if d.recompose() != f.coords:
        raise DecompositionMismatchError(f"decomposition does not recompose {f!r}")


class Extrema(NamedTuple):
    max: Fraction
    min: Fraction
    max_state: State | None
    min_state: State | None


def state_extremes(f: Effect) -> tuple[Fraction, Fraction]:
    """Max and min of ``s(f)`` over all states, without using any decomposition.

    Polyhedral kinds use linear programming over the state polytope; spin
    factors use the closed form ``t +- |x|``.
    """
    E = f.algebra
    if E.kind == "spin":
        t, x = spin_parts(f)
        r = spin_norm(x)
        return t + r, t - r
    poly = E.state_polytope()
    hi, _ = lp_solve(f.coords, poly, "max")
    lo, _ = lp_solve(f.coords, poly, "min")
    return hi, lo


def minmax_extrema(f: Effect, d: Decomposition) -> Extrema:
    """Largest and smallest coefficient, with states attaining them.

    Asserts that these agree with the extremes of ``s(f)`` over the state
    space; a mismatch raises :class:`PropositionFailure`.
    """
    _check_recomposes(f, d)
    coeffs = d.coefficients
    hi, lo = max(coeffs), min(coeffs)
    elems = d.context.elements
    witnesses = []
    for value in (hi, lo):
        face = hat_face(elems[coeffs.index(value)])
        s = face.vertices[0] if face.vertices else None
        if s is not None and s(f) != value:
            raise PropositionFailure(f"state {s!r} gives {s(f)} on {f!r}, expected {value}")
        witnesses.append(s)
    if f.algebra.kind != "spin" or spin_norm_is_rational(f):
        shi, slo = state_extremes(f)
        if (shi, slo) != (hi, lo):
            raise PropositionFailure(
                f"state extremes ({shi}, {slo}) differ from coefficient extremes ({hi}, {lo})"
            )
    return Extrema(hi, lo, witnesses[0], witnesses[1])


def spin_norm_is_rational(f: Effect) -> bool:
    x = spin_parts(f)[1]
    return rational_sqrt(dot(x, x)) is not None


def check_decomposition_extrema(f: Effect, d1: Decomposition, d2: Decomposition) -> bool:
    _check_recomposes(f, d1)
    _check_recomposes(f, d2)
    return (max(d1.coefficients), min(d1.coefficients)) == (
        max(d2.coefficients),
        min(d2.coefficients),
    )


def grouped_decomposition(f: Effect, decomposition: Decomposition | None = None) -> GroupedDecomposition:
    """Merge equal coefficients, drop zeros, sort strictly decreasing."""
    d = decomposition if decomposition is not None else require_decomposition(f)
    _check_recomposes(f, d)
    E = f.algebra
    groups: dict[Fraction, Vector] = {}
    for mu, a in zip(d.coefficients, d.context.elements):
        if mu != 0:
            groups[mu] = add(groups.get(mu, zeros(E.dim)), a.coords)
    levels = tuple((mu, E.effect(groups[mu])) for mu in sorted(groups, reverse=True))
    return GroupedDecomposition(levels)


def sharp_cover(f: Effect) -> Effect:
    """The sum of the context elements carrying a positive coefficient.

    The result is checked to be sharp and to dominate ``f``.
    """
    E = f.algebra
    if E.kind == "spin":
        t, x = spin_parts(f)
        if f.is_zero:
            cover = E.zero
        elif t * t > dot(x, x):
            cover = E.one
        else:
            # smallest eigenvalue vanishes: cover is the top projection, |x| = t
            cover = E.effect((HALF,) + smul(1 / (2 * t), x))
    else:
        d = require_decomposition(f)
        total = zeros(E.dim)
        for mu, a in zip(d.coefficients, d.context.elements):
            if mu > 0:
                total = add(total, a.coords)
        cover = E.effect(total)
    if not (is_sharp(cover) and leq(f, cover)):
        raise PropositionFailure(f"cover {cover!r} of {f!r} is not a sharp upper bound")
    return cover


def sharp_join(f: Effect, g: Effect) -> Effect:
    for e in (f, g):
        if not is_sharp(e):
            raise NotSharpError(f"{e!r} is not sharp")
    join = sharp_cover(convex_combination(HALF, f, g))
    for lam in (Fraction(1, 4), Fraction(3, 4)):
        other = sharp_cover(convex_combination(lam, f, g))
        if other != join:
            raise PropositionFailure(f"cover of the mixture depends on the weight ({lam})")
    return join


def sharp_meet(f: Effect, g: Effect) -> Effect:
    return complement(sharp_join(complement(f), complement(g)))


@dataclass(frozen=True)
class LatticeReport:
    passed: bool
    pairs_checked: int
    triples_checked: int
    counterexamples: tuple = ()
    errors: tuple = ()


def orthomodularity_check(E: EffectAlgebra, candidates: Sequence[Effect]) -> LatticeReport:
    """Check lattice and orthomodular identities of ``S(E)`` on ``candidates``.

    Pairs: commutativity, absorption, de Morgan, upper bounds and the
    orthomodular law. Triples: associativity of the join. Failures of the
    decomposition itself (non-spectral algebras) are collected in ``errors``.
    """
    cands = list(candidates)
    for f in cands:
        if not is_sharp(f):
            raise NotSharpError(f"{f!r} is not sharp")
    bad = []
    errors = []
    join = functools.lru_cache(maxsize=None)(sharp_join)
    meet = functools.lru_cache(maxsize=None)(sharp_meet)
    pairs = triples = 0
    for f, g in itertools.product(cands, repeat=2):
        pairs += 1
        try:
            fg = join(f, g)
            checks = {
                "commutativity": fg == join(g, f),
                "upper bound": leq(f, fg) and leq(g, fg),
                "absorption (join)": join(f, meet(f, g)) == f,
                "absorption (meet)": meet(f, fg) == f,
                "de Morgan": complement(fg) == meet(complement(f), complement(g)),
            }
            if leq(f, g):
                checks["orthomodular law"] = join(f, meet(g, complement(f))) == g
        except NotSpectralError as exc:
            errors.append(((f, g), str(exc)))
            continue
        bad.extend(((f, g), name) for name, ok in checks.items() if not ok)
    if not errors:
        for f, g, h in itertools.product(cands, repeat=3):
            triples += 1
            if join(join(f, g), h) != join(f, join(g, h)):
                bad.append(((f, g, h), "associativity"))
    return LatticeReport(not bad and not errors, pairs, triples, tuple(bad), tuple(errors))


def spin_directions(d: int, count: int) -> list[Vector]:
    """Deterministic rational unit vectors in ``Q^d`` (coordinate axes first)."""
    out = [unit_vector(d, i) for i in range(d)]
    if d == 1:
        return out
    k = 1
    while len(out) < count:
        p = tuple(Fraction(k + i, k + 2 * i + 1) for i in range(d - 1))
        w = rational_unit_vector(p)
        if w not in out:
            out.append(w)
        k += 1
    return out[:count]


def sharp_candidates(E: EffectAlgebra, directions: int = 3) -> list[Effect]:
    """A finite, canonically ordered list of sharp effects to test lattice claims on.

    Polyhedral: all partial sums of ``S_1(E)`` that are effects and sharp, plus
    all sharp vertices of ``[0, u]`` and, for small
    intervals, sharp midpoints of vertex pairs. Spin: ``0``, ``u`` and the projections
    along a few rational directions and their opposites.
    """
    if E.kind == "spin":
        fam = SpinSharpFamily(E)
        out = [E.zero, E.one]
        for w in spin_directions(E.d, directions):
            out += [fam.member(w), fam.member(smul(-1, w))]
        return sorted(set(out))
    found = set()
    s1 = sharp_one_dim_elements(E)
    for k in range(len(s1) + 1):
        for combo in itertools.combinations(s1, k):
            total = zeros(E.dim)
            for a in combo:
                total = add(total, a.coords)
            if E.in_interval(total):
                found.add(total)
    verts = [v.coords for v in interval_vertices(E)]
    found.update(verts)
    if len(verts) <= 16:
        for a, b in itertools.combinations(verts, 2):
            found.add(smul(HALF, add(a, b)))
    return sorted(e for e in (E.effect(c) for c in found) if is_sharp(e))
