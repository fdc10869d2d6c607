"""States, extreme states and the faces they cut out.

A state is a normalized element of the dual cone, evaluated on effects by
the Euclidean pairing. For a spin factor the state space is the ball
``{(1, w) : |w| <= 1}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

from .algebra import Effect, EffectAlgebra, leq, spin_parts
from .cone import dd_convert, dual_cone
from .errors import EmptyStateSpaceError, InfeasibleError, NotSharpError
from .linalg import (
    Vector,
    dot,
    format_vector,
    is_zero,
    rank,
    smul,
    sub,
    unit_vector,
    vector,
)
from .polytope import HPolytope, lp_solve, polytope_vertices


@dataclass(frozen=True, repr=False)
class State:
    algebra: EffectAlgebra
    coords: Vector

    def __post_init__(self):
        E = self.algebra
        if dot(self.coords, E.unit) != 1:
            raise ValueError("state is not normalized on the unit")
        if E.kind == "spin":
            w = self.coords[1:]
            if dot(w, w) > 1:
                raise ValueError("spin state outside the unit ball")

    def __call__(self, f) -> Fraction:
        coords = f.coords if isinstance(f, Effect) else f
        return dot(self.coords, coords)

    def __repr__(self):
        return f"State{format_vector(self.coords)}"

    def __lt__(self, other):
        return self.coords < other.coords


@dataclass(frozen=True)
class StateSet:
    """Extreme states of a polyhedral algebra, or the ball descriptor of a spin factor."""

    algebra: EffectAlgebra
    vertices: tuple = ()
    ball: bool = False

    @property
    def kind(self) -> str:
        return "ball" if self.ball else "polytope"

    def state(self, omega: Sequence) -> State:
        """The boundary state ``(1, omega)`` of a spin state space."""
        if not self.ball:
            raise TypeError("only ball state spaces are parametrized by directions")
        return State(self.algebra, (Fraction(1),) + vector(omega))

    def __iter__(self):
        if self.ball:
            raise TypeError("ball state spaces are not enumerable")
        return iter(self.vertices)

    def __len__(self):
        if self.ball:
            raise TypeError("ball state spaces are not enumerable")
        return len(self.vertices)


@dataclass(frozen=True)
class Face:
    """``{s : s(f) = 1}`` for an effect ``f``.

    ``whole`` marks the (spin) case where the face is the entire ball.
    """

    defining_effect: Effect
    vertices: tuple = ()
    whole: bool = False

    @property
    def is_empty(self) -> bool:
        return not self.vertices and not self.whole


def extreme_states(E: EffectAlgebra) -> StateSet:
    if E.kind == "spin":
        return StateSet(E, ball=True)
    if E.kind == "classical":
        return StateSet(E, tuple(sorted(State(E, unit_vector(E.dim, i)) for i in range(E.dim))))
    try:
        verts = polytope_vertices(E.state_polytope())
    except InfeasibleError:
        raise EmptyStateSpaceError(f"{E!r} has no states") from None
    return StateSet(E, tuple(State(E, v) for v in verts))


def hat_face(f: Effect) -> Face:
    E = f.algebra
    if E.kind != "spin":
        return Face(f, tuple(s for s in extreme_states(E).vertices if s(f) == 1))
    t, x = spin_parts(f)
    if is_zero(x):
        return Face(f, whole=(t == 1))
    # max over the ball is t + |x|; it equals 1 iff |x| = 1 - t
    r = 1 - t
    if r <= 0 or r * r != dot(x, x):
        return Face(f)
    return Face(f, (State(E, (Fraction(1),) + smul(1 / r, x)),))


def context_orthogonality_check(context) -> bool:
    """``s_i(a_j) == delta_ij`` for every computed state ``s_i`` in the face of ``a_i``."""
    elems = context.elements
    for i, a in enumerate(elems):
        face = hat_face(a)
        if face.is_empty or face.whole:
            return False
        for s in face.vertices:
            for j, b in enumerate(elems):
                if s(b) != (1 if i == j else 0):
                    return False
    return True


def _affine_dim(points) -> int:
    return rank([sub(p, points[0]) for p in points[1:]]) if len(points) > 1 else 0


def faces_affinely_independent(context) -> bool:
    """The faces of a context's elements are affinely independent.

    Faces ``F_1, ..., F_n`` are independent when the affine hull of their
    union has dimension ``sum(dim F_i) + n - 1``.
    """
    faces = []
    for a in context.elements:
        face = hat_face(a)
        if face.is_empty or face.whole:
            return False
        faces.append([s.coords for s in face.vertices])
    union = [p for f in faces for p in f]
    return _affine_dim(union) == sum(_affine_dim(f) for f in faces) + len(faces) - 1


class Exposure(NamedTuple):
    exposed: bool
    certificate: Effect | None


def is_E_exposed_point(s: State) -> Exposure:
    """Whether ``{s} = {t : t(f) = 1}`` for some effect ``f``, plus a certificate in ``S_1(E)``.

    For polyhedral algebras exposure is decided by a linear program over all
    effects; the certificate is then searched among the sharp one-dimensional
    effects only. ``(True, None)`` therefore means ``s`` is exposed by some
    effect but by no sharp one-dimensional one.
    """
    from .spectral import sharp_one_dim_elements

    E = s.algebra
    if E.kind == "spin":
        w = s.coords[1:]
        if dot(w, w) != 1:
            return Exposure(False, None)
        return Exposure(True, E.effect((Fraction(1, 2),) + smul(Fraction(1, 2), w)))

    others = [t for t in extreme_states(E).vertices if t != s]
    poly = E.interval_polytope()
    ineqs = [(a + (Fraction(0),), b) for a, b in poly.inequalities]
    ineqs.append((E.dim * (Fraction(0),) + (Fraction(-1),), -1))
    for t in others:
        ineqs.append((tuple(-x for x in t.coords) + (Fraction(-1),), -1))
    lp = HPolytope.build(E.dim + 1, ineqs, [(s.coords + (Fraction(0),), 1)])
    try:
        gap, _ = lp_solve(E.dim * (0,) + (1,), lp, "max")
    except InfeasibleError:
        return Exposure(False, None)
    if gap <= 0:
        return Exposure(False, None)
    for a in sharp_one_dim_elements(E):
        if hat_face(a).vertices == (s,):
            return Exposure(True, a)
    return Exposure(True, None)


def order_determining_check(E: EffectAlgebra) -> bool:
    """The extreme states generate the whole dual cone."""
    if E.kind == "spin":
        return True
    states = extreme_states(E).vertices
    return dd_convert([s.coords for s in states]) == dual_cone(E.cone)


@dataclass(frozen=True)
class CandidateResult:
    effect: Effect
    passed: bool
    counterexample: Effect | None = None
    note: str = ""


@dataclass(frozen=True)
class SharplyDeterminingReport:
    """Per-candidate outcome. The verdict covers the listed candidates only."""

    results: tuple

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    @property
    def failures(self) -> list[CandidateResult]:
        return [r for r in self.results if not r.passed]


def _dominated_set_vertices(f: Effect, face: Face) -> list[Effect]:
    # vertices of {g in [0, u] : s(g) = 1 for every s in the face}
    E = f.algebra
    if E.kind == "spin":
        if face.whole:
            return [E.one]
        # the set is the segment from f to u
        return [f, E.one]
    poly = E.interval_polytope()
    eqs = [(s.coords, 1) for s in face.vertices]
    G = HPolytope.build(E.dim, poly.inequalities, eqs)
    return [E.effect(v) for v in polytope_vertices(G)]


def sharply_determining_check(E: EffectAlgebra, sharp_candidates=None) -> SharplyDeterminingReport:
    """For each sharp ``f``: every ``g`` with ``s(g) = 1`` on the face of ``f`` satisfies ``g >= f``.

    The quantifier over ``g`` is discharged exactly: the set of such ``g`` is
    a polytope, and it suffices to check its vertices.
    """
    from .algebra import is_sharp
    from .spectral import sharp_candidates as default_candidates

    if sharp_candidates is None:
        sharp_candidates = default_candidates(E)
    results = []
    for f in sharp_candidates:
        if not is_sharp(f):
            raise NotSharpError(f"{f!r} is not sharp")
        if f.is_zero:
            results.append(CandidateResult(f, True, note="zero effect"))
            continue
        face = hat_face(f)
        if face.is_empty:
            results.append(CandidateResult(f, False, note="no state attains the value 1"))
            continue
        bad = next((g for g in _dominated_set_vertices(f, face) if not leq(f, g)), None)
        results.append(CandidateResult(f, bad is None, bad))
    return SharplyDeterminingReport(tuple(results))


def convex_hull_contains(points: Sequence[Sequence], x: Sequence) -> bool:
    """Exact membership of ``x`` in the convex hull of ``points`` (LP feasibility)."""
    k = len(points)
    if k == 0:
        return False
    ineqs = [(unit_vector(k, i), 0) for i in range(k)]
    eqs = [(tuple(p[j] for p in points), x[j]) for j in range(len(x))]
    eqs.append(((Fraction(1),) * k, 1))
    try:
        lp_solve((0,) * k, HPolytope.build(k, ineqs, eqs))
    except InfeasibleError:
        return False
    return True


def context_hull_coverage(E: EffectAlgebra, sample_states: Sequence[State]) -> Fraction:
    """Fraction of ``sample_states`` lying in the hull of some context's faces.

    Polyhedral algebras with finitely many contexts only. A probe, not a proof.
    """
    from .spectral import enumerate_contexts

    hulls = []
    for ctx in enumerate_contexts(E).contexts:
        hulls.append([s.coords for a in ctx.elements for s in hat_face(a).vertices])
    if not sample_states:
        return Fraction(0)
    hits = sum(1 for s in sample_states if any(convex_hull_contains(h, s.coords) for h in hulls))
    return Fraction(hits, len(sample_states))
