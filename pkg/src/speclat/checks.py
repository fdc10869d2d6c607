"""Proposition suites run by ``speclat check``.

Every check returns a :class:`CheckResult` whose certificates are plain
coordinate vectors that can be fed back through the library predicates.
"""
from __future__ import annotations

import functools
import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    Effect,
    EffectAlgebra,
    complement,
    effect_sum,
    is_extremal,
    is_one_dimensional,
    is_sharp,
    leq,
    order_unit_norm,
    ray_top,
    scale,
    sharpness_certificate,
)
from .errors import NotSpectralError, PropositionFailure, ScopeLimitError
from .linalg import add, smul, zeros
from .sampling import probe_effects, random_effect
from .spectral import (
    Decomposition,
    NonSpectralWitness,
    SpinSharpFamily,
    all_spectral_decompositions,
    decompose_vector,
    enumerate_contexts,
    grouped_decomposition,
    minmax_extrema,
    orthomodularity_check,
    sharp_candidates,
    sharp_cover,
    spectral_decomposition,
    spin_directions,
    spin_norm_is_rational,
)
from .states import (
    context_orthogonality_check,
    extreme_states,
    faces_affinely_independent,
    is_E_exposed_point,
    order_determining_check,
    sharply_determining_check,
)

VERDICTS = ("pass", "fail", "witness", "not-applicable", "scope-limited")
SUITES = ("axioms", "contexts", "states", "sharp", "spectral")


@dataclass(frozen=True)
class CheckResult:
    name: str
    verdict: str
    details: str = ""
    certificates: tuple = ()  # (label, vector) pairs

    def __post_init__(self):
        if self.verdict not in VERDICTS:
            raise ValueError(f"unknown verdict {self.verdict!r}")


def _verdict(ok: bool) -> str:
    return "pass" if ok else "fail"


# -- axioms -------------------------------------------------------------------

def _sum_eq(a, b, c) -> bool:
    s = effect_sum(a, b)
    return s is not None and s == c


def axiom_violations(a: Effect, b: Effect, c: Effect, alpha: Fraction, beta: Fraction) -> list[str]:
    """Names of effect-algebra and convexity axioms that fail on this sample."""
    E = a.algebra
    bad = []
    ab = effect_sum(a, b)
    if ab is not None and effect_sum(b, a) != ab:
        bad.append("E1 commutativity")
    if ab is not None and effect_sum(ab, c) is not None:
        bc = effect_sum(b, c)
        if bc is None or effect_sum(a, bc) != effect_sum(ab, c):
            bad.append("E2 associativity")
    if not _sum_eq(a, complement(a), E.one):
        bad.append("E3 orthosupplement")
    elif ab == E.one and b != complement(a):
        bad.append("E3 uniqueness")
    if effect_sum(a, E.one) is not None and not a.is_zero:
        bad.append("E4 zero-one law")
    if scale(alpha, scale(beta, a)) != scale(alpha * beta, a):
        bad.append("C1 scalar associativity")
    if alpha + beta <= 1 and not _sum_eq(scale(alpha, a), scale(beta, a), scale(alpha + beta, a)):
        bad.append("C2 scalar distributivity")
    if ab is not None and not _sum_eq(scale(alpha, a), scale(alpha, b), scale(alpha, ab)):
        bad.append("C3 effect distributivity")
    if scale(1, a) != a:
        bad.append("C4 unit scalar")
    return bad


def check_axioms(E: EffectAlgebra, samples: int = 200, seed: int = 0) -> CheckResult:
    rng = random.Random(seed)
    for _ in range(samples):
        a, b, c = (random_effect(E, rng) for _ in range(3))
        if rng.random() < 0.3:
            b = complement(a) if rng.random() < 0.5 else scale(Fraction(1, 2), complement(a))
        alpha = Fraction(rng.randint(0, 8), 8)
        beta = Fraction(rng.randint(0, 8), 8)
        bad = axiom_violations(a, b, c, alpha, beta)
        if bad:
            certs = (("a", a.coords), ("b", b.coords), ("c", c.coords))
            return CheckResult("effect algebra axioms", "fail", ", ".join(bad), certs)
    return CheckResult("effect algebra axioms", "pass", f"{samples} random triples")


# -- hypotheses ---------------------------------------------------------------

@functools.lru_cache(maxsize=32)
def _probe_decompositions(E: EffectAlgebra, limit: int = 60):
    decs, witnesses, skipped = [], [], 0
    for f in probe_effects(E, limit=limit):
        if E.kind == "spin" and not spin_norm_is_rational(f):
            skipped += 1
            continue
        d = spectral_decomposition(f)
        if isinstance(d, NonSpectralWitness):
            witnesses.append(d)
        else:
            decs.append((f, d))
    return tuple(decs), tuple(witnesses), skipped


def spectral_on_probes(E: EffectAlgebra) -> bool:
    """No probe effect produced a non-spectral witness."""
    return not _probe_decompositions(E)[1]


@functools.lru_cache(maxsize=32)
def _sharply_determining(E: EffectAlgebra):
    return sharply_determining_check(E)


def _conditional(result: CheckResult, hypothesis: str | None) -> CheckResult:
    """Downgrade a check to ``not-applicable`` when its hypothesis does not hold."""
    if hypothesis is None:
        return result
    observed = f"observed {result.verdict}" + (f": {result.details}" if result.details else "")
    return CheckResult(result.name, "not-applicable", f"{hypothesis}; {observed}", result.certificates)


def _spectral_hypothesis(E) -> str | None:
    return None if spectral_on_probes(E) else "algebra is not spectral"


def _strong_hypothesis(E) -> str | None:
    missing = _spectral_hypothesis(E)
    if missing is None and not _sharply_determining(E).passed:
        missing = "state space is not sharply determining"
    return missing


# -- contexts -----------------------------------------------------------------

def _sample_contexts(E: EffectAlgebra, directions: int = 4) -> list:
    fam = enumerate_contexts(E)
    if fam.parametric:
        return [fam.context_for(w) for w in spin_directions(E.d, directions)]
    return list(fam.contexts)


def sum_coords(effects, dim):
    total = zeros(dim)
    for a in effects:
        total = add(total, a.coords)
    return total


def _per_context(name, bad, total) -> CheckResult:
    if bad:
        certs = tuple((f"context element {i}", a.coords) for i, a in enumerate(bad[0].elements))
        return CheckResult(name, "fail", f"{len(bad)} of {total} contexts fail", certs)
    return CheckResult(name, "pass", f"{total} context(s) checked")


def check_contexts(E: EffectAlgebra) -> list[CheckResult]:
    fam = enumerate_contexts(E)
    if fam.parametric:
        out = [CheckResult("context enumeration", "pass", "parametric family indexed by unit directions")]
    else:
        out = [CheckResult("context enumeration", _verdict(len(fam.contexts) > 0),
                           f"{len(fam.contexts)} context(s)")]
    ctxs = _sample_contexts(E)
    bad = [c for c in ctxs if sum_coords(c.elements, E.dim) != E.unit
           or not all(is_sharp(a) and is_one_dimensional(a) for a in c.elements)]
    out.append(_per_context("context sums to the unit", bad, len(ctxs)))
    bad = [c for c in ctxs if not context_orthogonality_check(c)]
    out.append(_per_context("context state orthogonality", bad, len(ctxs)))
    bad = [c for c in ctxs if not faces_affinely_independent(c)]
    out.append(_conditional(_per_context("faces affinely independent", bad, len(ctxs)),
                            _spectral_hypothesis(E)))
    return out


# -- states -------------------------------------------------------------------

def check_states(E: EffectAlgebra) -> list[CheckResult]:
    out = []
    states = extreme_states(E)
    if states.ball:
        out.append(CheckResult("extreme states", "pass", "unit sphere of the state ball"))
        probe = [states.state(w) for w in spin_directions(E.d, 4)]
    else:
        probe = list(states.vertices)
        out.append(CheckResult("extreme states", "pass", f"{len(probe)} extreme state(s)",
                               tuple((f"s{i}", s.coords) for i, s in enumerate(probe))))
    ok = order_determining_check(E)
    out.append(_conditional(
        CheckResult("states order-determining", _verdict(ok),
                    "extreme states generate the dual cone" if ok else ""),
        None if ok else _spectral_hypothesis(E)))

    exposed, uncertified = [], []
    for s in probe:
        res = is_E_exposed_point(s)
        if res.exposed:
            exposed.append(s)
            if res.certificate is None:
                uncertified.append(s)
    note = f"{len(exposed)} of {len(probe)} extreme state(s) exposed"
    if uncertified:
        r = CheckResult("exposed states come from S1", "fail",
                        f"{note}; {len(uncertified)} by no sharp one-dimensional effect",
                        tuple(("state", s.coords) for s in uncertified))
    else:
        r = CheckResult("exposed states come from S1", "pass", note)
    out.append(_conditional(r, _spectral_hypothesis(E)))

    rep = _sharply_determining(E)
    if rep.passed:
        r = CheckResult("sharply determining", "pass", f"{len(rep.results)} sharp candidate(s)")
    else:
        bad = rep.failures[0]
        certs = (("sharp", bad.effect.coords),)
        if bad.counterexample is not None:
            certs += (("not above", bad.counterexample.coords),)
        r = CheckResult("sharply determining", "fail",
                        f"{len(rep.failures)} of {len(rep.results)} candidate(s) fail", certs)
    # a property, not a theorem: only expected of spectral algebras here
    out.append(_conditional(r, _spectral_hypothesis(E)))
    return out


# -- sharp and extremal elements ----------------------------------------------

def one_dimensional_candidates(E: EffectAlgebra) -> list[Effect]:
    """Multiples of extreme rays (polyhedral) or of rim points (spin) at a few heights."""
    heights = (Fraction(1, 3), Fraction(1, 2), Fraction(1))
    if E.kind == "spin":
        fam = SpinSharpFamily(E)
        tops = [fam.member(w) for w in spin_directions(E.d, 4)]
    else:
        tops = [E.effect(smul(ray_top(E, r), r)) for r in E.cone.generators]
    return [scale(h, a) for a in tops for h in heights]


def check_sharp(E: EffectAlgebra) -> list[CheckResult]:
    cands = one_dimensional_candidates(E)
    bad = [f for f in cands if not is_one_dimensional(f) or is_sharp(f) != is_extremal(f)]
    if bad:
        r1 = CheckResult("one-dimensional: sharp iff extremal", "fail",
                         f"{len(bad)} of {len(cands)} candidates disagree", (("effect", bad[0].coords),))
    else:
        r1 = CheckResult("one-dimensional: sharp iff extremal", "pass", f"{len(cands)} candidate(s)")
    out = [r1]
    if not E.is_polyhedral:
        out.append(CheckResult("sharpness certificates", "not-applicable", "closed-form sharpness test"))
        return out
    probes = probe_effects(E, limit=60)
    certs, bad = [], []
    for f in probes:
        g = sharpness_certificate(f)
        if g is None:
            continue
        if g.is_zero or not leq(g, f) or not leq(g, complement(f)):
            bad.append(f)
        elif len(certs) < 2:
            certs.append(("unsharp", f.coords))
            certs.append(("below both", g.coords))
    if bad:
        out.append(CheckResult("sharpness certificates", "fail", f"{len(bad)} bad certificate(s)",
                               (("effect", bad[0].coords),)))
    else:
        out.append(CheckResult("sharpness certificates", "pass",
                               f"{len(probes)} probe(s)", tuple(certs)))
    return out


# -- spectral -----------------------------------------------------------------

def _second_route(f: Effect, d: Decomposition) -> list[Decomposition]:
    if f.algebra.kind == "spin":
        ctx, coeffs = decompose_vector(f.coords, f.algebra)
        return [Decomposition(ctx, coeffs)]
    return [x for x in all_spectral_decompositions(f) if x != d]


def _probe_result(name, bad, total) -> CheckResult:
    if bad:
        f, why = bad[0]
        return CheckResult(name, "fail", f"{len(bad)} of {total}: {why}", (("effect", f.coords),))
    return CheckResult(name, "pass", f"{total} effect(s)")


def check_spectral(E: EffectAlgebra) -> list[CheckResult]:
    decs, witnesses, skipped = _probe_decompositions(E)
    out = []
    note = f"{len(decs)} decomposed"
    if skipped:
        note += f", {skipped} skipped (irrational norm)"
    if witnesses:
        w = witnesses[0]
        out.append(CheckResult("spectral decomposition", "witness",
                               f"{len(witnesses)} non-spectral effect(s); {w.reason}",
                               (("non-spectral effect", w.effect.coords),)))
    else:
        out.append(CheckResult("spectral decomposition", "pass", note))

    bad = []
    for f, d in decs:
        if d.recompose() != f.coords:
            bad.append((f, "recomposition"))
            continue
        try:
            minmax_extrema(f, d)
        except PropositionFailure:
            bad.append((f, "state extrema"))
            continue
        hi, lo = max(d.coefficients), min(d.coefficients)
        if order_unit_norm(f.coords, E) != hi or order_unit_norm(complement(f).coords, E) != 1 - lo:
            bad.append((f, "norm identities"))
    out.append(_probe_result("extrema and norms", bad, len(decs)))

    strong = _strong_hypothesis(E)
    bad = []
    for f, d in decs:
        ref = grouped_decomposition(f, d)
        if any(grouped_decomposition(f, d2) != ref for d2 in _second_route(f, d)):
            bad.append((f, "grouped forms differ"))
    out.append(_conditional(_probe_result("grouped decomposition uniqueness", bad, len(decs)), strong))

    cands = sharp_candidates(E)
    bad = []
    for f, d in decs:
        cover = sharp_cover(f)
        if any(leq(f, g) and not leq(cover, g) for g in cands):
            bad.append((f, "cover not minimal"))
    out.append(_conditional(_probe_result("sharp cover minimality", bad, len(decs)), strong))

    if strong is not None:
        out.append(CheckResult("orthomodular lattice", "not-applicable", strong))
    else:
        rep = orthomodularity_check(E, cands)
        if rep.passed:
            out.append(CheckResult("orthomodular lattice", "pass",
                                   f"{rep.pairs_checked} pairs, {rep.triples_checked} triples"))
        else:
            els, law = rep.counterexamples[0] if rep.counterexamples else rep.errors[0]
            out.append(CheckResult("orthomodular lattice", "fail", str(law),
                                   tuple(("sharp", e.coords) for e in els)))
    return out


def run_suite(E: EffectAlgebra, suite: str = "all") -> list[CheckResult]:
    """Run one suite (or ``all``); scope limits become ``scope-limited`` verdicts."""
    names = SUITES if suite == "all" else (suite,)
    runners = {
        "axioms": lambda: [check_axioms(E)],
        "contexts": lambda: check_contexts(E),
        "states": lambda: check_states(E),
        "sharp": lambda: check_sharp(E),
        "spectral": lambda: check_spectral(E),
    }
    out = []
    for name in names:
        if name not in runners:
            raise ValueError(f"unknown suite {name!r}")
        try:
            out.extend(runners[name]())
        except ScopeLimitError as exc:
            out.append(CheckResult(f"{name} suite", "scope-limited", str(exc)))
        except NotSpectralError as exc:
            out.append(CheckResult(f"{name} suite", "witness", str(exc),
                                   (("non-spectral effect", exc.witness.effect.coords),)))
    return out
