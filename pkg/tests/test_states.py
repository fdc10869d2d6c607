from fractions import Fraction

import pytest

from oracles import vertices_bruteforce
from speclat.constructions import builtin
from speclat.errors import NotSharpError
from speclat.spectral import enumerate_contexts
from speclat.states import (
    State,
    context_hull_coverage,
    context_orthogonality_check,
    convex_hull_contains,
    extreme_states,
    faces_affinely_independent,
    hat_face,
    is_E_exposed_point,
    order_determining_check,
    sharply_determining_check,
)

F = Fraction
H = F(1, 2)
SQ = builtin("square")
C3 = builtin("classical", 3)
S2 = builtin("spin", 2)


def test_square_extreme_states():
    states = [s.coords for s in extreme_states(SQ)]
    # s_ab(x, y, t) = a x + b y + t
    assert states == [(0, 0, 1), (0, 1, 1), (1, 0, 1), (1, 1, 1)]
    oracle = vertices_bruteforce([(g, 0) for g in SQ.cone.generators], [(SQ.unit, 1)], 3)
    assert states == oracle


def test_classical_states_are_coordinates():
    assert [s.coords for s in extreme_states(C3)] == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_state_validation():
    with pytest.raises(ValueError):
        State(C3, (1, 1, 0))
    with pytest.raises(ValueError):
        State(S2, (1, 1, 1))
    s = State(S2, (1, F(3, 5), F(4, 5)))
    assert s(S2.effect((H, F(3, 10), F(2, 5)))) == 1


def test_ball_descriptor():
    states = extreme_states(S2)
    assert states.kind == "ball"
    assert states.state((0, 1)).coords == (1, 0, 1)
    with pytest.raises(TypeError):
        len(states)


def test_hat_faces():
    f = SQ.effect((1, 0, 0))
    assert [s.coords for s in hat_face(f).vertices] == [(1, 0, 1), (1, 1, 1)]
    assert [s.coords for s in hat_face(SQ.effect((H, H, 0))).vertices] == [(1, 1, 1)]
    assert hat_face(SQ.effect((H, 0, 0))).is_empty
    assert hat_face(S2.one).whole
    assert hat_face(S2.effect((H, 0, 0))).is_empty
    assert hat_face(S2.effect((H, H, 0))).vertices[0].coords == (1, 1, 0)
    assert hat_face(S2.effect((F(3, 4), F(1, 4), 0))).vertices[0].coords == (1, 1, 0)
    assert hat_face(S2.effect((F(3, 4), F(1, 8), 0))).is_empty


def test_context_checks():
    for ctx in enumerate_contexts(C3).contexts:
        assert context_orthogonality_check(ctx)
        assert faces_affinely_independent(ctx)
    ctx = enumerate_contexts(S2).context_for((F(3, 5), F(4, 5)))
    assert context_orthogonality_check(ctx) and faces_affinely_independent(ctx)
    # square contexts: opposite edges of the square are parallel
    for ctx in enumerate_contexts(SQ).contexts:
        assert context_orthogonality_check(ctx)
        assert not faces_affinely_independent(ctx)


def test_exposed_points():
    for s in extreme_states(C3):
        res = is_E_exposed_point(s)
        assert res.exposed and hat_face(res.certificate).vertices == (s,)
    for s in extreme_states(SQ):
        res = is_E_exposed_point(s)
        assert res.exposed and res.certificate is None
    res = is_E_exposed_point(State(S2, (1, F(3, 5), F(4, 5))))
    assert res.exposed and res.certificate.coords == (H, F(3, 10), F(2, 5))
    assert not is_E_exposed_point(State(S2, (1, 0, 0))).exposed


def test_interior_state_is_not_exposed():
    assert not is_E_exposed_point(State(SQ, (H, H, 1))).exposed
    assert not is_E_exposed_point(State(SQ, (H, 0, 1))).exposed


def test_order_determining():
    assert order_determining_check(C3)
    assert order_determining_check(SQ)
    assert order_determining_check(S2)


def test_sharply_determining():
    assert sharply_determining_check(C3).passed
    assert sharply_determining_check(S2).passed
    rep = sharply_determining_check(SQ)
    assert not rep.passed
    bad = rep.failures[0]
    assert bad.counterexample is not None
    with pytest.raises(NotSharpError):
        sharply_determining_check(C3, [C3.effect((H, 0, 0))])


def test_convex_hull_contains():
    pts = [(0, 0), (1, 0), (0, 1)]
    assert convex_hull_contains(pts, (F(1, 3), F(1, 3)))
    assert not convex_hull_contains(pts, (1, 1))
    assert not convex_hull_contains([], (0, 0))


def test_context_hull_coverage():
    states = list(extreme_states(SQ))
    centre = State(SQ, (H, H, 1))
    assert context_hull_coverage(SQ, states + [centre]) == 1
    assert context_hull_coverage(C3, [State(C3, (F(1, 3),) * 3)]) == 1
