"""H-polytopes, exact linear programming and vertex enumeration."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .cone import extreme_rays
from .errors import InfeasibleError, NotPointedError, UnboundedError
from .linalg import Vector, add, dot, neg, nullspace, smul, vector, zeros


@dataclass(frozen=True)
class HPolytope:
    """``{x : n.x >= b for (n, b) in inequalities, n.x == b for (n, b) in equalities}``."""

    dim: int
    inequalities: tuple = ()
    equalities: tuple = field(default=())

    @classmethod
    def build(cls, dim, inequalities=(), equalities=()):
        ineqs = tuple((vector(a), Fraction(b)) for a, b in inequalities)
        eqs = tuple((vector(a), Fraction(b)) for a, b in equalities)
        for a, _ in ineqs + eqs:
            if len(a) != dim:
                raise ValueError("constraint normal has wrong dimension")
        return cls(dim, ineqs, eqs)

    def contains(self, x: Sequence) -> bool:
        return all(dot(a, x) >= b for a, b in self.inequalities) and all(
            dot(a, x) == b for a, b in self.equalities
        )

    def tight(self, x: Sequence) -> list[Vector]:
        """Normals of all constraints active at ``x`` (equalities included)."""
        return [a for a, _ in self.equalities] + [a for a, b in self.inequalities if dot(a, x) == b]


def _pivot(T, r, c):
    piv = T[r][c]
    T[r] = [x / piv for x in T[r]]
    row = T[r]
    for i in range(len(T)):
        if i != r:
            f = T[i][c]
            if f:
                T[i] = [x - f * y for x, y in zip(T[i], row)]


def _simplex(T, basis, cost, ncols):
    """Minimize ``cost`` over columns ``< ncols`` with Bland's rule. Mutates ``T``/``basis``."""
    while True:
        in_basis = set(basis)
        entering = None
        for j in range(ncols):
            if j in in_basis:
                continue
            red = cost[j] - sum((cost[b] * T[i][j] for i, b in enumerate(basis)), Fraction(0))
            if red < 0:
                entering = j
                break
        if entering is None:
            return
        best = None
        for i, row in enumerate(T):
            a = row[entering]
            if a > 0:
                key = (row[-1] / a, basis[i])
                if best is None or key < best[0]:
                    best = (key, i)
        if best is None:
            raise UnboundedError("objective is unbounded")
        r = best[1]
        _pivot(T, r, entering)
        basis[r] = entering


def _to_vertex(p: HPolytope, x: Vector) -> Vector:
    # Moves along directions inside the optimal face until enough constraints are tight.
    n = p.dim
    while True:
        d = nullspace(p.tight(x), n)
        if not d:
            return x
        for direction in (d[0], neg(d[0])):
            steps = [
                (dot(a, x) - b) / -dot(a, direction)
                for a, b in p.inequalities
                if dot(a, direction) < 0
            ]
            if steps:
                x = add(x, smul(min(steps), direction))
                break
        else:
            # a whole line through x is feasible: no vertex exists
            return x


def lp_solve(objective: Sequence, p: HPolytope, sense: str = "max") -> tuple[Fraction, Vector]:
    """Exact optimum of ``objective . x`` over ``p``.

    Two-phase primal simplex on the standard form obtained by splitting free
    variables, with Bland's rule for termination. The returned point is moved
    to a vertex of the optimal face whenever ``p`` has vertices.

    Raises :class:`InfeasibleError` or :class:`UnboundedError`.
    """
    if sense not in ("max", "min"):
        raise ValueError("sense must be 'max' or 'min'")
    c = vector(objective)
    n = p.dim
    if len(c) != n:
        raise ValueError("objective has wrong dimension")
    m1 = len(p.inequalities)
    nv = 2 * n + m1
    rows = []
    for i, (a, b) in enumerate(p.inequalities):
        row = list(a) + [-x for x in a] + [Fraction(0)] * m1
        row[2 * n + i] = Fraction(-1)
        rows.append((row, b))
    for a, b in p.equalities:
        rows.append((list(a) + [-x for x in a] + [Fraction(0)] * m1, b))
    m = len(rows)

    T = []
    for i, (row, b) in enumerate(rows):
        if b < 0:
            row, b = [-x for x in row], -b
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        T.append(row + art + [b])
    basis = [nv + i for i in range(m)]

    phase1 = [Fraction(0)] * nv + [Fraction(1)] * m
    _simplex(T, basis, phase1, nv + m)
    if sum((T[i][-1] for i, b in enumerate(basis) if b >= nv), Fraction(0)) > 0:
        raise InfeasibleError("constraints are infeasible")

    # drive remaining (zero-level) artificials out of the basis
    i = 0
    while i < len(T):
        if basis[i] >= nv:
            j = next((j for j in range(nv) if T[i][j] != 0), None)
            if j is None:
                del T[i]
                del basis[i]
                continue
            _pivot(T, i, j)
            basis[i] = j
        i += 1

    sign = -1 if sense == "max" else 1
    cost = [sign * x for x in c] + [-sign * x for x in c] + [Fraction(0)] * (m1 + m)
    _simplex(T, basis, cost, nv)

    z = [Fraction(0)] * nv
    for i, b in enumerate(basis):
        z[b] = T[i][-1]
    x = tuple(z[k] - z[n + k] for k in range(n))
    x = _to_vertex(p, x)
    return dot(c, x), x


def is_feasible(p: HPolytope) -> bool:
    try:
        lp_solve(zeros(p.dim), p)
    except InfeasibleError:
        return False
    return True


def polytope_vertices(p: HPolytope) -> list[Vector]:
    """All vertices of a bounded polytope, sorted lexicographically.

    Computed as the extreme rays of the homogenized cone
    ``{(x, t) : n.x - b t >= 0, t >= 0}``.
    """
    n = p.dim
    ineq_rows = [tuple(a) + (-b,) for a, b in p.inequalities]
    ineq_rows.append(zeros(n) + (Fraction(1),))
    eq_rows = [tuple(a) + (-b,) for a, b in p.equalities]
    try:
        rays = extreme_rays(ineq_rows, eq_rows, n + 1)
    except NotPointedError:
        if not is_feasible(p):
            raise InfeasibleError("constraints are infeasible") from None
        raise UnboundedError("polytope contains a line") from None
    verts = sorted({tuple(x / r[-1] for x in r[:-1]) for r in rays if r[-1] > 0})
    if not verts:
        raise InfeasibleError("constraints are infeasible")
    if any(r[-1] == 0 for r in rays):
        raise UnboundedError("polyhedron is unbounded")
    return verts
