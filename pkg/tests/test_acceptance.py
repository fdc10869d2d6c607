"""End-to-end acceptance criteria. Each test is tagged with its criterion;
``conftest.py`` prints one PASS/FAIL line per criterion after the run."""
import random
from fractions import Fraction
from math import gcd, isqrt

import pytest

from speclat.algebra import (
    as_polyhedral,
    complement,
    effect_sum,
    is_extremal,
    is_one_dimensional,
    is_sharp,
    leq,
    order_unit_norm,
    ray_top,
    scale,
)
from speclat.constructions import (
    affine_isomorphism_search,
    builtin,
    builtin_corpus,
    classify_sum_contexts,
    direct_convex_sum,
    direct_product,
    nonspectral_witness_for_sum,
    verify_isomorphism,
)
from speclat.linalg import rational_unit_vector, smul
from speclat.sampling import random_effect, random_spin_spectral_effect
from speclat.spectral import (
    Decomposition,
    NonSpectralWitness,
    SpinSharpFamily,
    decompose_vector,
    enumerate_contexts,
    grouped_decomposition,
    orthomodularity_check,
    require_decomposition,
    sharp_candidates,
    sharp_cover,
    sharp_one_dim_elements,
    spectral_decomposition,
    spin_directions,
    state_extremes,
)
from speclat.states import State, extreme_states, sharply_determining_check

F = Fraction
H = F(1, 2)
CORPUS = builtin_corpus()
SPECTRAL = [E for E in CORPUS if E.name != "square"]
SPIN = [E for E in CORPUS if E.kind == "spin"]
CLASSICAL = [builtin("classical", n) for n in range(1, 6)]


def ids(E):
    return E.name


def acceptance(label):
    return pytest.mark.acceptance(label)


# 1 -------------------------------------------------------------------------

def _sum(a, b):
    return effect_sum(a, b)


@acceptance("1 effect-algebra and convexity axioms")
@pytest.mark.parametrize("E", CORPUS, ids=ids)
def test_axioms(E):
    rng = random.Random(1)
    pool = [random_effect(E, rng) for _ in range(1000)]
    # mix in complements and halves so that sums are often defined
    pool += [complement(a) for a in pool[:100]] + [scale(H, a) for a in pool[100:200]]
    scalars = [F(k, 6) for k in range(7)]
    for a in pool[:1000]:
        b = pool[rng.randrange(len(pool))]
        c = pool[rng.randrange(len(pool))]
        alpha, beta = rng.choice(scalars), rng.choice(scalars)
        ab = _sum(a, b)
        # E1
        assert _sum(b, a) == ab
        # E2
        if ab is not None and _sum(ab, c) is not None:
            bc = _sum(b, c)
            assert bc is not None and _sum(a, bc) == _sum(ab, c)
        # E3: a' = u - a is the unique complement
        a_prime = complement(a)
        assert _sum(a, a_prime) == E.one
        if ab == E.one:
            assert b == a_prime
        # E4
        if _sum(a, E.one) is not None:
            assert a.is_zero
        # C1
        assert scale(alpha, scale(beta, a)) == scale(alpha * beta, a)
        # C2
        if alpha + beta <= 1:
            assert _sum(scale(alpha, a), scale(beta, a)) == scale(alpha + beta, a)
        # C3
        if ab is not None:
            assert _sum(scale(alpha, a), scale(alpha, b)) == scale(alpha, ab)
        # C4
        assert scale(1, a) == a


# 2 -------------------------------------------------------------------------

def one_dimensional_candidates(E):
    heights = [F(1, 5), F(1, 3), H, F(3, 4), F(1)]
    if E.kind == "spin":
        fam = SpinSharpFamily(E)
        tops = [fam.member(w) for w in spin_directions(E.d, 8)]
        tops += [fam.member(smul(-1, w)) for w in spin_directions(E.d, 8)]
    else:
        tops = [E.effect(smul(ray_top(E, r), r)) for r in E.cone.generators]
    return [scale(h, t) for t in tops for h in heights]


@acceptance("2 one-dimensional effects: sharp iff extremal")
@pytest.mark.parametrize("E", CORPUS + [as_polyhedral(builtin("classical", 3))], ids=ids)
def test_one_dimensional_sharp_iff_extremal(E):
    cands = one_dimensional_candidates(E)
    assert cands
    for f in cands:
        assert is_one_dimensional(f)
        assert is_sharp(f) == is_extremal(f)
    # only the tops are sharp
    assert sum(is_sharp(f) for f in cands) == len(cands) // 5


# 3 -------------------------------------------------------------------------

@acceptance("3 square: h sharp, not extremal; extreme states")
def test_square_example():
    E = builtin("square")
    f, g = E.effect((1, 0, 0)), E.effect((0, 1, 0))
    h = E.effect(smul(H, (1, 1, 0)))
    assert is_sharp(h)
    assert not is_extremal(h)
    s00, s10, s01, s11 = (0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)
    assert sorted(s.coords for s in extreme_states(E)) == sorted([s00, s10, s01, s11])
    assert is_sharp(f) and is_sharp(g)


# 4 -------------------------------------------------------------------------

def _spectral_samples(E, n, seed):
    rng = random.Random(seed)
    if E.kind == "spin":
        return [random_spin_spectral_effect(E, rng) for _ in range(n)]
    return [random_effect(E, rng) for _ in range(n)]


@acceptance("4 state extrema and norms equal coefficient extrema")
@pytest.mark.parametrize("E", SPECTRAL, ids=ids)
def test_extrema_and_norms(E):
    rng = random.Random(4)
    probes = [State(E, (F(1),) + rational_unit_vector([F(rng.randint(-9, 9), 7)] * (E.d - 1)))
              for _ in range(5)] if E.kind == "spin" else []
    for f in _spectral_samples(E, 200, seed=4):
        d = require_decomposition(f)
        assert d.recompose() == f.coords
        hi, lo = max(d.coefficients), min(d.coefficients)
        assert state_extremes(f) == (hi, lo)
        if E.kind == "spin":
            t, x = f.coords[0], f.coords[1:]
            for s in probes:
                assert lo <= s(f) <= hi
            r = hi - t
            if r:
                assert State(E, (F(1),) + smul(1 / r, x))(f) == hi
        assert order_unit_norm(f.coords, E) == hi
        assert order_unit_norm(complement(f).coords, E) == 1 - lo


# 5 -------------------------------------------------------------------------

@acceptance("5 context counts")
@pytest.mark.parametrize("E", CLASSICAL, ids=ids)
def test_classical_context_count(E):
    assert enumerate_contexts(E).count == 1
    assert enumerate_contexts(as_polyhedral(E)).count == 1


@acceptance("5 context counts")
def test_square_context_count():
    assert enumerate_contexts(builtin("square")).count == 2


def pythagorean_pairs(count):
    out = []
    m = 2
    while len(out) < count:
        for n in range(1, m):
            if (m - n) % 2 and gcd(m, n) == 1:
                a, b = m * m - n * n, 2 * m * n
                out += [(a, b), (b, a)]
        m += 1
    return out[:count]


@acceptance("5 context counts")
def test_spin_mixtures_land_in_distinct_contexts():
    E = builtin("spin", 2)
    p1, p2 = E.effect((H, H, 0)), E.effect((H, 0, H))
    seen = set()
    for a, b in pythagorean_pairs(30):
        lam = F(a, a + b)
        c = E.effect(tuple(lam * x + (1 - lam) * y for x, y in zip(p1.coords, p2.coords)))
        d = require_decomposition(c)
        assert d.recompose() == c.coords
        seen.add(frozenset(e.coords for e in d.context))
    assert len(seen) == 30
    assert enumerate_contexts(E).parametric


# 6 -------------------------------------------------------------------------

def _context_set(E):
    return {frozenset(a.coords for a in c) for c in enumerate_contexts(E).contexts}


@acceptance("6 direct product")
def test_product_contexts():
    E2, E3, E5 = (builtin("classical", n) for n in (2, 3, 5))
    P = direct_product(E2, E3)
    assert _context_set(P.result) == _context_set(E5)
    left, right = _context_set(E2), _context_set(E3)
    for ctx in enumerate_contexts(P.result).contexts:
        lhs = frozenset(a.coords[:2] for a in ctx if any(a.coords[:2]))
        rhs = frozenset(a.coords[2:] for a in ctx if any(a.coords[2:]))
        assert all(not (any(a.coords[:2]) and any(a.coords[2:])) for a in ctx)
        assert lhs in left and rhs in right
    rng = random.Random(6)
    for _ in range(200):
        f = random_effect(P.result, rng)
        d = require_decomposition(f)
        assert d.recompose() == f.coords


@acceptance("6 direct product")
def test_product_with_square_contexts_split():
    P = direct_product(builtin("square"), builtin("classical", 2))
    assert len(enumerate_contexts(P.result).contexts) == 2


# 7 -------------------------------------------------------------------------

@acceptance("7 direct convex sum")
def test_sum_is_square_and_nonspectral():
    C2 = builtin("classical", 2)
    S = direct_convex_sum(C2, C2)
    square = builtin("square")
    T = affine_isomorphism_search(S.result, square)
    assert T is not None
    assert verify_isomorphism(T, S.result, square)
    classify_sum_contexts(S)
    w = nonspectral_witness_for_sum(S)
    assert isinstance(w, NonSpectralWitness)
    assert isinstance(spectral_decomposition(w.effect), NonSpectralWitness)


@acceptance("7 direct convex sum")
def test_sum_bit_trit():
    S = direct_convex_sum(builtin("classical", 2), builtin("classical", 3))
    left, right = classify_sum_contexts(S)
    assert len(left) == 1 and len(right) == 1
    nonspectral_witness_for_sum(S)


# 8 -------------------------------------------------------------------------

@acceptance("8 sharply determining suite")
@pytest.mark.parametrize("E", SPIN, ids=ids)
def test_spin_sharply_determining(E):
    rep = sharply_determining_check(E, sharp_candidates(E, directions=5))
    assert rep.passed and len(rep.results) == 12


@acceptance("8 sharply determining suite")
@pytest.mark.parametrize("E", SPIN, ids=ids)
def test_grouped_decompositions_agree(E):
    for f in _spectral_samples(E, 200, seed=8):
        direct = grouped_decomposition(f)
        ctx, coeffs = decompose_vector(f.coords, E)
        other = grouped_decomposition(f, Decomposition(ctx, coeffs))
        assert direct.coefficients == other.coefficients
        assert direct.projections == other.projections
        assert len(direct.levels) == len(other.levels)


@acceptance("8 sharply determining suite")
@pytest.mark.parametrize("E", SPIN, ids=ids)
def test_sharp_cover_minimality(E):
    cands = sharp_candidates(E, directions=5)
    samples = _spectral_samples(E, 200, seed=9)
    # include rim points so that rank-one covers occur
    samples += [scale(F(k, 5), c) for c in cands for k in range(1, 5)]
    for f in samples:
        cover = sharp_cover(f)
        assert is_sharp(cover) and leq(f, cover)
        for g in cands:
            if leq(f, g):
                assert leq(cover, g)


@acceptance("8 sharply determining suite")
@pytest.mark.parametrize("E", [builtin("classical", n) for n in (2, 3, 4)] + SPIN, ids=ids)
def test_orthomodular_law(E):
    cands = sharp_candidates(E)
    rep = orthomodularity_check(E, cands)
    assert rep.passed, rep.counterexamples[:3]
    assert rep.triples_checked == len(cands) ** 3


# 9 -------------------------------------------------------------------------

@acceptance("9 coordinate oracle equals generic path")
@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_classical_oracle_cross_check(n):
    C = builtin("classical", n)
    P = as_polyhedral(C)
    assert [a.coords for a in sharp_one_dim_elements(C)] == [a.coords for a in sharp_one_dim_elements(P)]
    assert [[a.coords for a in c] for c in enumerate_contexts(C).contexts] == [
        [a.coords for a in c] for c in enumerate_contexts(P).contexts
    ]
    assert [s.coords for s in extreme_states(C)] == [s.coords for s in extreme_states(P)]
    rng = random.Random(n)
    for _ in range(100):
        f = random_effect(C, rng)
        g = P.effect(f.coords)
        d1, d2 = require_decomposition(f), require_decomposition(g)
        assert d1.coefficients == d2.coefficients
        assert [a.coords for a in d1.context] == [a.coords for a in d2.context]
        assert order_unit_norm(f.coords, C) == order_unit_norm(g.coords, P)
        assert state_extremes(f) == state_extremes(g)
        assert sharp_cover(f).coords == sharp_cover(g).coords
        v = tuple(F(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(n))
        assert order_unit_norm(v, C) == order_unit_norm(v, P)
    for f, g in zip(sharp_candidates(C), sharp_candidates(P)):
        assert f.coords == g.coords
        assert (is_sharp(f), is_extremal(f), is_one_dimensional(f)) == (
            is_sharp(g), is_extremal(g), is_one_dimensional(g))


def test_pythagorean_pairs_are_rational_norm():
    pairs = pythagorean_pairs(30)
    assert len(set(pairs)) == 30
    for a, b in pairs:
        assert isqrt(a * a + b * b) ** 2 == a * a + b * b
