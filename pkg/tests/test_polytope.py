from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import vertices_bruteforce
from speclat.errors import InfeasibleError, UnboundedError
from speclat.linalg import dot, unit_vector
from speclat.polytope import HPolytope, is_feasible, lp_solve, polytope_vertices


def box(dim, lo=-3, hi=3):
    rows = []
    for i in range(dim):
        e = unit_vector(dim, i)
        rows.append((e, Fraction(lo)))
        rows.append((tuple(-x for x in e), Fraction(-hi)))
    return rows


extra_row = st.tuples(st.tuples(*[st.integers(-3, 3)] * 2), st.integers(-4, 4))


def _poly(rows, dim=2, eqs=()):
    return HPolytope.build(dim, rows, eqs)


def test_unit_square_vertices():
    p = _poly(box(2, 0, 1))
    assert polytope_vertices(p) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_lp_max_and_min():
    p = _poly(box(2, 0, 1))
    value, x = lp_solve((1, 2), p, "max")
    assert value == 3 and x == (1, 1)
    value, x = lp_solve((1, 2), p, "min")
    assert value == 0 and x == (0, 0)


def test_equality_constraints():
    p = _poly(box(2, 0, 1), eqs=[((1, 1), 1)])
    assert polytope_vertices(p) == [(0, 1), (1, 0)]
    assert lp_solve((1, 0), p)[0] == 1


def test_infeasible():
    p = _poly([((1,), 2), ((-1,), -1)], dim=1)
    assert not is_feasible(p)
    with pytest.raises(InfeasibleError):
        lp_solve((1,), p)
    with pytest.raises(InfeasibleError):
        polytope_vertices(p)


def test_unbounded():
    p = _poly([((1, 0), 0), ((0, 1), 0)])
    with pytest.raises(UnboundedError):
        lp_solve((1, 1), p)
    assert lp_solve((1, 1), p, "min")[0] == 0
    with pytest.raises(UnboundedError):
        polytope_vertices(p)
    with pytest.raises(UnboundedError):
        polytope_vertices(_poly([((1, 0), 0), ((-1, 0), -1)]))


def test_contains_and_tight():
    p = _poly(box(2, 0, 1))
    assert p.contains((Fraction(1, 2), 1))
    assert not p.contains((2, 0))
    assert len(p.tight((0, 0))) == 2


@given(st.lists(extra_row, max_size=3))
def test_vertices_match_bruteforce(extra):
    rows = box(2) + [(tuple(map(Fraction, a)), Fraction(b)) for a, b in extra]
    expected = vertices_bruteforce(rows, [], 2)
    p = _poly(rows)
    if not expected:
        with pytest.raises(InfeasibleError):
            polytope_vertices(p)
    else:
        assert polytope_vertices(p) == expected


@given(st.lists(extra_row, max_size=3), st.tuples(st.integers(-3, 3), st.integers(-3, 3)),
       st.sampled_from(["max", "min"]))
def test_lp_matches_vertex_oracle(extra, c, sense):
    rows = box(2) + [(tuple(map(Fraction, a)), Fraction(b)) for a, b in extra]
    verts = vertices_bruteforce(rows, [], 2)
    p = _poly(rows)
    if not verts:
        with pytest.raises(InfeasibleError):
            lp_solve(c, p, sense)
        return
    pick = max if sense == "max" else min
    best = pick(dot(c, v) for v in verts)
    value, x = lp_solve(c, p, sense)
    assert value == best
    assert p.contains(x) and dot(c, x) == best
    # the optimum is returned at a vertex
    assert tuple(x) in verts


@given(st.lists(st.tuples(st.tuples(*[st.integers(-2, 2)] * 3), st.integers(-3, 3)), max_size=2),
       st.tuples(*[st.integers(-2, 2)] * 3))
def test_lp_3d_with_equality(extra, c):
    rows = box(3, -2, 2) + [(tuple(map(Fraction, a)), Fraction(b)) for a, b in extra]
    eqs = [((Fraction(1), Fraction(1), Fraction(1)), Fraction(1))]
    verts = vertices_bruteforce(rows, eqs, 3)
    p = HPolytope.build(3, rows, eqs)
    if not verts:
        assert not is_feasible(p)
        return
    assert polytope_vertices(p) == verts
    assert lp_solve(c, p)[0] == max(dot(c, v) for v in verts)
