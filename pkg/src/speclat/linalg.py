"""Exact linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`; matrices are sequences of
row vectors. Nothing here ever touches floating point.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    return Fraction(x)


def vector(entries: Iterable) -> Vector:
    return tuple(to_fraction(x) for x in entries)


def zeros(n: int) -> Vector:
    return (Fraction(0),) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def add(a: Sequence, b: Sequence) -> Vector:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence, b: Sequence) -> Vector:
    return tuple(x - y for x, y in zip(a, b))


def smul(c, a: Sequence) -> Vector:
    c = to_fraction(c)
    return tuple(c * x for x in a)


def neg(a: Sequence) -> Vector:
    return tuple(-x for x in a)


def is_zero(a: Sequence) -> bool:
    return all(x == 0 for x in a)


def linear_combination(coeffs: Sequence, vectors: Sequence[Sequence], n: int) -> Vector:
    out = [Fraction(0)] * n
    for c, v in zip(coeffs, vectors):
        if c:
            for i, x in enumerate(v):
                out[i] += c * x
    return tuple(out)


def matvec(rows: Sequence[Sequence], v: Sequence) -> Vector:
    return tuple(dot(r, v) for r in rows)


def transpose(rows: Sequence[Sequence]) -> list[Vector]:
    return [tuple(col) for col in zip(*rows)]


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form.

    Returns ``(rows, pivots)`` where ``rows`` holds only the nonzero rows.
    """
    m = [list(map(to_fraction, r)) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        if piv != 1:
            m[r] = [x / piv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def rank(rows: Sequence[Sequence]) -> int:
    if not rows:
        return 0
    return len(rref(rows)[1])


def nullspace(rows: Sequence[Sequence], n: int) -> list[Vector]:
    """Basis of ``{x : row . x = 0 for every row}`` in ``Q^n``."""
    if not rows:
        return [unit_vector(n, i) for i in range(n)]
    red, pivots = rref(rows, n)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * n
        x[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            x[pc] = -row[fc]
        basis.append(tuple(x))
    return basis


def solve(columns: Sequence[Sequence], target: Sequence) -> Vector | None:
    """Coefficients ``c`` with ``sum c_i columns[i] == target``.

    Returns ``None`` when no solution exists. The columns must be linearly
    independent; otherwise ``ValueError`` is raised.
    """
    k = len(columns)
    n = len(target)
    aug = [tuple(columns[j][i] for j in range(k)) + (to_fraction(target[i]),) for i in range(n)]
    red, pivots = rref(aug, k + 1)
    if k in pivots:
        return None
    if len(pivots) < k:
        raise ValueError("columns are linearly dependent")
    sol = [Fraction(0)] * k
    for row, pc in zip(red, pivots):
        sol[pc] = row[k]
    return tuple(sol)


def independent_subset(rows: Sequence[Sequence]) -> list[int]:
    """Indices of the first maximal linearly independent subset, scanning in order."""
    chosen: list[int] = []
    basis: list[Sequence] = []
    for i, r in enumerate(rows):
        if rank(basis + [r]) > len(basis):
            basis.append(r)
            chosen.append(i)
    return chosen


def inverse(rows: Sequence[Sequence]) -> list[Vector]:
    n = len(rows)
    aug = [tuple(rows[i]) + unit_vector(n, i) for i in range(n)]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return [tuple(r[n:]) for r in red]


def canonical_ray(v: Sequence) -> Vector:
    """Positive rescaling of ``v`` to coprime integer entries. Direction is kept."""
    v = vector(v)
    if is_zero(v):
        raise ValueError("the zero vector has no ray")
    lcm = 1
    for x in v:
        lcm = lcm * x.denominator // math.gcd(lcm, x.denominator)
    ints = [int(x * lcm) for x in v]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    return tuple(Fraction(x // g) for x in ints)


def canonical_line(v: Sequence) -> Vector:
    """Like :func:`canonical_ray` but also fixes the sign (first nonzero entry positive)."""
    r = canonical_ray(v)
    first = next(x for x in r if x != 0)
    return neg(r) if first < 0 else r


def rational_sqrt(q) -> Fraction | None:
    """Exact square root of a nonnegative rational, or ``None`` if it is irrational."""
    q = to_fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = math.isqrt(n), math.isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def rational_unit_vector(p: Sequence) -> Vector:
    """Rational point of the unit sphere in ``Q^(len(p)+1)``.

    Inverse stereographic projection from the south pole; every rational
    point of the sphere except the pole arises this way.
    """
    p = vector(p)
    s = dot(p, p)
    return tuple(2 * x / (1 + s) for x in p) + ((1 - s) / (1 + s),)


def format_fraction(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def format_vector(v: Sequence) -> str:
    return "(" + ", ".join(format_fraction(to_fraction(x)) for x in v) + ")"
