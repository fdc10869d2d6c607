from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import vertices_bruteforce
from speclat.algebra import (
    as_polyhedral,
    complement,
    convex_combination,
    effect_sum,
    interval_vertices,
    is_extremal,
    is_one_dimensional,
    is_sharp,
    leq,
    make_algebra,
    order_unit_norm,
    ray_top,
    scale,
    sharpness_certificate,
    spin_norm,
)
from speclat.constructions import builtin
from speclat.errors import (
    AlgebraMismatchError,
    InvalidEffectError,
    NotPointedError,
    ScalarOutOfRangeError,
    SpanMismatchError,
    SymbolicNormRequiredError,
    UnitNotOrderUnitError,
)
from speclat.linalg import dot, sub

F = Fraction
H = F(1, 2)
SQ = builtin("square")
C3 = builtin("classical", 3)
S2 = builtin("spin", 2)

# square effects in (x, y, t) coordinates: s(f) = a x + b y + t for a, b in {0, 1}
f_sq = SQ.effect((1, 0, 0))
g_sq = SQ.effect((0, 1, 0))
h_sq = SQ.effect((H, H, 0))

eighths = st.integers(0, 8).map(lambda k: F(k, 8))


def square_effects():
    # every effect of the square is a convex combination of its eight interval vertices
    verts = [v.coords for v in interval_vertices(SQ)]
    return st.lists(st.integers(0, 4), min_size=len(verts), max_size=len(verts)).filter(any).map(
        lambda w: SQ.effect(tuple(sum(F(wi, sum(w)) * v[j] for wi, v in zip(w, verts)) for j in range(3)))
    )


def test_classical_unit_and_effects():
    assert C3.unit == (1, 1, 1)
    e = C3.effect((H, 1, 0))
    assert repr(e) == "Effect(1/2, 1, 0)"
    with pytest.raises(InvalidEffectError):
        C3.effect((2, 0, 0))
    with pytest.raises(InvalidEffectError):
        C3.effect((1, 0))


def test_make_algebra_validation():
    with pytest.raises(UnitNotOrderUnitError):
        make_algebra("polyhedral", generators=[(1, 0), (0, 1)], unit=(1, 0))
    with pytest.raises(UnitNotOrderUnitError):
        make_algebra("polyhedral", generators=[(1, 0, 0), (0, 1, 0)], unit=(1, 1, 0))
    with pytest.raises(NotPointedError):
        make_algebra("polyhedral", generators=[(1, 0), (-1, 0), (0, 1)], unit=(0, 1))
    with pytest.raises(ValueError):
        make_algebra("classical", n=0)
    with pytest.raises(ValueError):
        make_algebra("hexagon")


def test_partial_sum():
    a, b = C3.effect((H, 0, 0)), C3.effect((H, 1, 0))
    assert effect_sum(a, b) == C3.effect((1, 1, 0))
    assert effect_sum(b, b) is None
    with pytest.raises(AlgebraMismatchError):
        effect_sum(a, builtin("classical", 2).effect((0, 0)))


def test_scale_and_mix():
    a = C3.effect((1, H, 0))
    assert scale(H, a) == C3.effect((H, F(1, 4), 0))
    with pytest.raises(ScalarOutOfRangeError):
        scale(F(3, 2), a)
    assert convex_combination(F(1, 4), C3.one, C3.zero) == C3.effect((F(1, 4),) * 3)
    assert complement(a) == C3.effect((0, H, 1))


def test_square_sharpness():
    # h is the midpoint of two sharp effects but is itself sharp and not extremal
    assert is_sharp(h_sq)
    assert not is_extremal(h_sq)
    assert not is_one_dimensional(h_sq)
    assert is_sharp(f_sq) and is_extremal(f_sq) and is_one_dimensional(f_sq)
    half_f = scale(H, f_sq)
    g = sharpness_certificate(half_f)
    assert g is not None and leq(g, half_f) and leq(g, complement(half_f))


def test_spin_predicates():
    p = S2.effect((H, H, 0))
    assert is_sharp(p) and is_extremal(p) and is_one_dimensional(p)
    q = S2.effect((H, F(3, 10), 0))
    assert not is_sharp(q) and not is_one_dimensional(q)
    assert is_one_dimensional(S2.effect((F(1, 4), F(3, 20), F(1, 5))))
    with pytest.raises(TypeError):
        sharpness_certificate(q)
    with pytest.raises(InvalidEffectError):
        S2.effect((H, H, H))


@given(square_effects())
def test_sharpness_lp_matches_vertex_oracle(f):
    # g with 0 <= g <= f and g <= u - f; f is sharp iff the only such g is 0
    facets = SQ.cone.facets
    rows = [(a, 0) for a in facets]
    for bound in (f.coords, sub(SQ.unit, f.coords)):
        rows += [(tuple(-x for x in a), -dot(a, bound)) for a in facets]
    verts = vertices_bruteforce(rows, [], 3)
    assert is_sharp(f) == (verts == [(0, 0, 0)])


def test_classical_predicates_match_generic_path():
    P = as_polyhedral(C3)
    for v in interval_vertices(C3) + [C3.effect((H, 0, 1)), C3.effect((H, 0, 0))]:
        w = P.effect(v.coords)
        assert is_sharp(v) == is_sharp(w)
        assert is_extremal(v) == is_extremal(w)
        assert is_one_dimensional(v) == is_one_dimensional(w)


@given(st.tuples(*[st.integers(-6, 6)] * 3))
def test_order_unit_norm_equals_max_state_value(v):
    states = vertices_bruteforce([(g, 0) for g in SQ.cone.generators], [(SQ.unit, 1)], 3)
    assert order_unit_norm(v, SQ) == max(abs(dot(s, v)) for s in states)
    assert order_unit_norm(v, C3) == order_unit_norm(v, as_polyhedral(C3))


def test_order_unit_norm_spin():
    assert order_unit_norm((1, -1, H), as_polyhedral(C3)) == 1
    assert order_unit_norm((1, F(3, 5), F(4, 5)), S2) == 2
    with pytest.raises(SymbolicNormRequiredError):
        order_unit_norm((0, 1, 1), S2)
    with pytest.raises(SpanMismatchError):
        order_unit_norm((1, 1), S2)
    assert spin_norm((F(3, 5), F(4, 5))) == 1


def test_ray_top_and_interval_vertices():
    assert ray_top(SQ, (1, 0, 0)) == 1
    assert ray_top(C3, (2, 0, 0)) == H
    # 0, u and the four ray tops
    assert len(interval_vertices(SQ)) == 6
    assert len(interval_vertices(C3)) == 8
    assert [v.coords for v in interval_vertices(C3)] == [
        v.coords for v in interval_vertices(as_polyhedral(C3))
    ]


@given(eighths, eighths, eighths)
def test_spin_interval_membership(t, x, y):
    inside = t * t >= x * x + y * y and (1 - t) ** 2 >= x * x + y * y
    if inside:
        S2.effect((t, x, y))
    else:
        with pytest.raises(InvalidEffectError):
            S2.effect((t, x, y))
