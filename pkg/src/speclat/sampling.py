"""Seeded generators of rational effects and probe sets."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .algebra import Effect, EffectAlgebra, interval_vertices
from .linalg import add, rational_unit_vector, smul, zeros


def random_fraction(rng: random.Random, denominator: int = 12) -> Fraction:
    """Uniform on ``{0, 1/q, ..., 1}``."""
    return Fraction(rng.randint(0, denominator), denominator)


def random_direction(rng: random.Random, d: int) -> tuple:
    """Rational unit vector in ``Q^d``."""
    if d == 1:
        return (Fraction(rng.choice((-1, 1))),)
    p = tuple(Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(d - 1))
    w = rational_unit_vector(p)
    # randomize which coordinate plays the pole
    k = rng.randrange(d)
    return w[k:] + w[:k]


def random_effect(E: EffectAlgebra, rng: random.Random) -> Effect:
    """A random rational effect.

    Polyhedral kinds: a random convex combination of vertices of ``[0, u]``.
    Spin kind: random ``(t, x)`` shrunk into the double cone; ``|x|`` is
    usually irrational.
    """
    if E.kind == "spin":
        t = random_fraction(rng)
        room = min(t, 1 - t)
        x = tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 6)) for _ in range(E.d))
        l1 = sum(abs(c) for c in x)
        if l1 > room:
            x = smul(room / l1, x) if l1 else x
        return E.effect((t,) + x)
    verts = _vertices(E)
    k = rng.randint(1, min(4, len(verts)))
    picks = rng.sample(verts, k)
    weights = [rng.randint(1, 6) for _ in picks]
    total = sum(weights)
    coords = zeros(E.dim)
    for w, v in zip(weights, picks):
        coords = add(coords, smul(Fraction(w, total), v.coords))
    return E.effect(coords)


def random_spin_spectral_effect(E: EffectAlgebra, rng: random.Random) -> Effect:
    """A spin effect with rational ``|x|``: ``mu1 a + mu2 (u - a)`` for a random rational direction."""
    w = random_direction(rng, E.d)
    mu1, mu2 = random_fraction(rng), random_fraction(rng)
    a = (Fraction(1, 2),) + smul(Fraction(1, 2), w)
    b = (Fraction(1, 2),) + smul(Fraction(-1, 2), w)
    return E.effect(add(smul(mu1, a), smul(mu2, b)))


def random_decomposable_effect(E: EffectAlgebra, rng: random.Random) -> Effect:
    if E.kind == "spin":
        return random_spin_spectral_effect(E, rng)
    return random_effect(E, rng)


_VERTEX_CACHE: dict = {}


def _vertices(E: EffectAlgebra) -> list[Effect]:
    key = (E.kind, E.unit, E.cone)
    if key not in _VERTEX_CACHE:
        _VERTEX_CACHE[key] = interval_vertices(E)
    return [Effect(E, v.coords) for v in _VERTEX_CACHE[key]]


def probe_effects(E: EffectAlgebra, limit: int = 200, seed: int = 0) -> list[Effect]:
    """Deterministic probe set for spectrality checks.

    Polyhedral: all vertices of ``[0, u]`` followed by midpoints of vertex
    pairs, truncated to ``limit``. Spin: effects on rational directions.
    """
    if E.kind == "spin":
        rng = random.Random(seed)
        out = [E.zero, E.one]
        while len(out) < limit:
            out.append(random_spin_spectral_effect(E, rng))
        return out
    verts = _vertices(E)
    out = list(verts)
    for a, b in itertools.combinations(verts, 2):
        if len(out) >= limit:
            break
        out.append(E.effect(smul(Fraction(1, 2), add(a.coords, b.coords))))
    return out[:limit]
