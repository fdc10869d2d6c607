"""``speclat`` command-line interface."""
from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from . import docfile
from .algebra import complement, order_unit_norm
from .checks import SUITES, CheckResult, run_suite
from .constructions import (
    affine_isomorphism_search,
    builtin_corpus,
    classify_sum_contexts,
    direct_convex_sum,
    direct_product,
    nonspectral_witness_for_sum,
    verify_isomorphism,
)
from .errors import (
    InvalidEffectError,
    NoSuitableElementError,
    ParseError,
    ScopeLimitError,
    SpeclatError,
    UnsupportedKindError,
)
from .linalg import format_fraction, format_vector
from .spectral import (
    NonSpectralWitness,
    enumerate_contexts,
    grouped_decomposition,
    minmax_extrema,
    sharp_cover,
    sharp_one_dim_elements,
    all_spectral_decompositions,
    spectral_decomposition,
)
from .sampling import probe_effects
from .states import State, context_hull_coverage, extreme_states, hat_face

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SCOPE = 0, 1, 2, 3


@dataclass
class Report:
    command: str
    inputs: dict
    results: list = field(default_factory=list)
    data: dict = field(default_factory=dict)
    exit_code: int = EXIT_OK

    def add(self, name, verdict, details="", certificates=()):
        self.results.append(CheckResult(name, verdict, details, tuple(certificates)))


def _plain(x):
    """JSON-friendly copy with fractions as ``p/q`` strings."""
    if isinstance(x, Fraction):
        return format_fraction(x)
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return x


def _vec(v) -> str:
    return format_vector(v)


def render_json(report: Report) -> str:
    payload = {
        "command": report.command,
        "inputs": _plain(report.inputs),
        "data": _plain(report.data),
        "results": [
            {
                "check": r.name,
                "verdict": r.verdict,
                "details": r.details,
                "certificates": [{"label": k, "vector": _plain(v)} for k, v in r.certificates],
            }
            for r in report.results
        ],
        "exit_code": report.exit_code,
    }
    return json.dumps(payload, indent=2) + "\n"


def _text_value(v) -> str:
    if isinstance(v, tuple) and v and all(isinstance(x, Fraction) for x in v):
        return _vec(v)
    if isinstance(v, Fraction):
        return format_fraction(v)
    return str(v)


def render_text(report: Report) -> str:
    lines = [f"speclat {report.command}"]
    for key, value in report.inputs.items():
        lines.append(f"  {key}: {_text_value(value)}")
    for key, value in report.data.items():
        if isinstance(value, list):
            lines.append(f"{key}: {len(value)}")
            lines += [f"  {_text_value(item)}" for item in value]
        else:
            lines.append(f"{key}: {_text_value(value)}")
    for r in report.results:
        line = f"[{r.verdict}] {r.name}"
        if r.details:
            line += f": {r.details}"
        lines.append(line)
        lines += [f"    {label} = {_vec(v)}" for label, v in r.certificates]
    lines.append(f"exit code {report.exit_code}")
    return "\n".join(lines) + "\n"


def _doc_inputs(path, doc) -> dict:
    out = {"file": str(path), "kind": doc.kind, "dim": doc.dim}
    if doc.name:
        out["name"] = doc.name
    if doc.expect:
        out["expect"] = doc.expect
    return out


def _finish(report: Report, expect: str | None) -> Report:
    verdicts = [r.verdict for r in report.results]
    if "fail" in verdicts:
        report.exit_code = EXIT_FAIL
    elif "witness" in verdicts and expect != "nonspectral":
        report.exit_code = EXIT_FAIL
    elif expect == "nonspectral" and "witness" not in verdicts and any(
        r.name == "spectral decomposition" for r in report.results
    ):
        report.add("expected non-spectral witness", "fail", "no witness found")
        report.exit_code = EXIT_FAIL
    return report


# -- commands -----------------------------------------------------------------

def cmd_info(path) -> Report:
    doc, E = docfile.load_algebra(path)
    report = Report("info", _doc_inputs(path, doc))
    data = report.data
    data["unit"] = E.unit
    if E.kind == "spin":
        data["extreme rays"] = "Lorentz cone t >= |x| (not polyhedral)"
        data["extreme states"] = "unit sphere {(1, w) : |w| = 1}"
        data["sharp one-dimensional effects"] = "{(1/2)(1, w) : |w| = 1}"
        data["contexts"] = "parametric: {(1/2)(1, w), (1/2)(1, -w)} for each unit w"
        data["context sizes"] = "2"
        data["states on each sharp one-dimensional face"] = "1"
        return report
    data["extreme rays"] = list(E.cone.generators)
    data["facets"] = list(E.cone.facets)
    data["extreme states"] = [s.coords for s in extreme_states(E).vertices]
    data["sharp one-dimensional effects"] = [a.coords for a in sharp_one_dim_elements(E)]
    ctxs = enumerate_contexts(E).contexts
    data["contexts"] = [" + ".join(_vec(a.coords) for a in c) for c in ctxs]
    _probe_fields(E, ctxs, data)
    return report


def _probe_fields(E, ctxs, data, samples=40, seed=0):
    # observations only; none of these is asserted
    data["context sizes"] = ", ".join(str(n) for n in sorted({len(c) for c in ctxs})) or "none"
    counts = [len(hat_face(a).vertices) for a in sharp_one_dim_elements(E)]
    data["states on each sharp one-dimensional face"] = ", ".join(str(n) for n in sorted(set(counts))) or "none"
    verts = [s.coords for s in extreme_states(E).vertices]
    rng = random.Random(seed)
    sampled = []
    for _ in range(samples):
        w = [Fraction(rng.randint(0, 6)) for _ in verts]
        total = sum(w)
        if total == 0:
            sampled.append(State(E, verts[0]))
            continue
        sampled.append(State(E, tuple(sum(wi * v[j] for wi, v in zip(w, verts)) / total for j in range(E.dim))))
    data["sampled states inside a context hull"] = context_hull_coverage(E, sampled)
    spectral = agree = 0
    for f in probe_effects(E, limit=40):
        ds = all_spectral_decompositions(f)
        if not ds:
            continue
        spectral += 1
        multisets = {tuple(sorted(d.coefficients)) for d in ds}
        agree += len(multisets) == 1
    data["coefficient multisets agree across decompositions"] = f"{agree} of {spectral} spectral probe effect(s)"


def cmd_decompose(path, effect_text: str) -> Report:
    doc, E = docfile.load_algebra(path)
    coords = docfile.parse_vector(effect_text)
    report = Report("decompose", {**_doc_inputs(path, doc), "effect": coords})
    f = E.effect(coords)
    result = spectral_decomposition(f)
    if isinstance(result, NonSpectralWitness):
        report.add("spectral decomposition", "witness", result.reason, [("non-spectral effect", f.coords)])
        return _finish(report, doc.expect)
    d = result
    data = report.data
    data["context"] = [a.coords for a in d.context]
    data["coefficients"] = tuple(d.coefficients)
    report.add("recomposition", "pass" if d.recompose() == f.coords else "fail",
               "sum of coefficients times context equals the effect")
    grouped = grouped_decomposition(f, d)
    data["grouped"] = [f"{format_fraction(mu)} * {_vec(p.coords)}" for mu, p in grouped.levels]
    data["norm"] = order_unit_norm(f.coords, E)
    data["norm of complement"] = order_unit_norm(complement(f).coords, E)
    ext = minmax_extrema(f, d)
    certs = [(f"state at {label}", s.coords) for label, s in (("max", ext.max_state), ("min", ext.min_state))
             if s is not None]
    ok = data["norm"] == ext.max and data["norm of complement"] == 1 - ext.min
    report.add("state extrema match coefficients", "pass" if ok else "fail",
               f"max {format_fraction(ext.max)}, min {format_fraction(ext.min)}", certs)
    data["sharp cover"] = sharp_cover(f).coords
    return _finish(report, doc.expect)


def cmd_check(path, suite: str) -> Report:
    doc, E = docfile.load_algebra(path)
    report = Report("check", {**_doc_inputs(path, doc), "suite": suite})
    report.results.extend(run_suite(E, suite))
    return _finish(report, doc.expect)


def _write_and_reparse(report: Report, result, out, expect):
    Path(out).write_text(docfile.dump(docfile.from_algebra(result, expect)), encoding="utf-8")
    _, reparsed = docfile.load_algebra(out)
    same = reparsed.cone == result.cone and reparsed.unit == result.unit
    report.add("output re-parses", "pass" if same else "fail", str(out))


def cmd_construct(op: str, path_a, path_b, out) -> Report:
    _, A = docfile.load_algebra(path_a)
    _, B = docfile.load_algebra(path_b)
    report = Report("construct", {"operation": op, "left": str(path_a), "right": str(path_b),
                                  "output": str(out)})
    if op == "product":
        result = direct_product(A, B).result
    elif op == "sum":
        S = direct_convex_sum(A, B)
        result = S.result
    else:
        raise UnsupportedKindError(f"unknown construction {op!r}")
    report.data["extreme rays"] = list(result.cone.generators)
    report.data["unit"] = result.unit

    if op == "product":
        n = A.dim
        ctxs = enumerate_contexts(result).contexts
        split = all(all(any(c != 0 for c in a.coords[:n]) != any(c != 0 for c in a.coords[n:])
                        for a in ctx) for ctx in ctxs)
        report.add("product contexts split by side", "pass" if split else "fail", f"{len(ctxs)} context(s)")
        _write_and_reparse(report, result, out, None)
        return _finish(report, None)

    left, right = classify_sum_contexts(S)
    report.add("sum contexts classified", "pass",
               f"{len(left)} from the left summand, {len(right)} from the right, none mixed")
    expect = None
    try:
        w = nonspectral_witness_for_sum(S)
        report.add("non-spectral witness", "witness", w.reason, [("non-spectral effect", w.effect.coords)])
        expect = "nonspectral"
    except NoSuitableElementError as exc:
        report.add("non-spectral witness", "not-applicable", str(exc))
    for candidate in builtin_corpus():
        if not candidate.is_polyhedral or candidate.dim != result.dim:
            continue
        T = affine_isomorphism_search(result, candidate)
        if T is not None:
            ok = verify_isomorphism(T, result, candidate)
            report.add(f"isomorphic to {candidate.name}", "pass" if ok else "fail",
                       "certificate rows map the constructed cone onto the builtin",
                       [(f"row {i}", row) for i, row in enumerate(T)])
    _write_and_reparse(report, result, out, expect)
    return _finish(report, expect)


# -- entry point --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    parser = argparse.ArgumentParser(prog="speclat", description="Exact spectral effect algebra toolkit.",
                                     parents=[fmt])
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("info", parents=[fmt], help="describe an algebra file")
    p.add_argument("file")
    p = sub.add_parser("decompose", parents=[fmt], help="spectral decomposition of an effect")
    p.add_argument("file")
    p.add_argument("--effect", required=True, help='comma-separated rationals, e.g. "1/2,3/10,0"')
    p = sub.add_parser("check", parents=[fmt], help="run proposition suites")
    p.add_argument("file")
    p.add_argument("--suite", choices=("all",) + SUITES, default="all")
    p = sub.add_parser("construct", parents=[fmt], help="direct product or direct convex sum")
    p.add_argument("op", choices=("product", "sum"))
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("-o", "--output", required=True)
    return parser


def run(args: argparse.Namespace) -> Report:
    if args.command == "info":
        return cmd_info(args.file)
    if args.command == "decompose":
        return cmd_decompose(args.file, args.effect)
    if args.command == "check":
        return cmd_check(args.file, args.suite)
    return cmd_construct(args.op, args.left, args.right, args.output)


def _error(kind: str, message: str, code: int, fmt: str) -> int:
    if fmt == "json":
        sys.stdout.write(json.dumps({"error": kind, "message": message, "exit_code": code}, indent=2) + "\n")
    else:
        sys.stderr.write(f"speclat: {kind}: {message}\n")
    return code


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    fmt = args.format
    try:
        report = run(args)
    except ParseError as exc:
        return _error("parse error", str(exc), EXIT_USAGE, fmt)
    except (InvalidEffectError, UnsupportedKindError) as exc:
        return _error(type(exc).__name__, str(exc), EXIT_USAGE, fmt)
    except ScopeLimitError as exc:
        return _error("scope limit", str(exc), EXIT_SCOPE, fmt)
    except SpeclatError as exc:
        return _error(type(exc).__name__, str(exc), EXIT_FAIL, fmt)
    render = render_json if fmt == "json" else render_text
    sys.stdout.write(render(report))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
