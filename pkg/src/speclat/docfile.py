"""Plain-text algebra documents.

One ``key = value`` pair per line, ``#`` starts a comment::

    kind = polyhedral
    dim = 3
    name = square
    unit = 0,0,1
    gen = 1,0,0
    gen = 0,1,0
    gen = -1,0,1
    gen = 0,-1,1
    expect = nonspectral

Vectors are comma-separated rationals ``p`` or ``p/q``. Decimals are
rejected so that nothing inexact enters the pipeline.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .algebra import EffectAlgebra, make_algebra
from .errors import NotPointedError, ParseError, SpeclatError, UnitNotOrderUnitError
from .linalg import Vector, format_fraction, unit_vector

_RATIONAL = re.compile(r"-?\d+(?:/\d+)?")
KINDS = ("classical", "polyhedral", "spin")
EXPECTATIONS = ("spectral", "nonspectral")


@dataclass(frozen=True)
class AlgebraDocument:
    kind: str
    dim: int
    generators: tuple = ()
    unit: Vector = ()
    name: str = ""
    expect: str | None = None
    lines: dict = field(default_factory=dict, compare=False, repr=False)


def parse_rational(text: str, line: int | None = None) -> Fraction:
    text = text.strip()
    if not _RATIONAL.fullmatch(text):
        raise ParseError(f"not an exact rational: {text!r}", line)
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in {text!r}", line) from None


def parse_vector(text: str, line: int | None = None) -> Vector:
    parts = text.split(",")
    if not text.strip() or any(not p.strip() for p in parts):
        raise ParseError(f"malformed vector {text!r}", line)
    return tuple(parse_rational(p, line) for p in parts)


def parse(text: str) -> AlgebraDocument:
    values: dict = {}
    lines: dict = {}
    gens = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0].strip()
        if not content:
            continue
        if "=" not in content:
            raise ParseError(f"expected 'key = value', got {content!r}", lineno)
        key, value = (s.strip() for s in content.split("=", 1))
        if key == "gen":
            gens.append(parse_vector(value, lineno))
            lines.setdefault("gen", lineno)
            continue
        if key not in ("kind", "dim", "name", "unit", "expect"):
            raise ParseError(f"unknown key {key!r}", lineno)
        if key in values:
            raise ParseError(f"duplicate key {key!r}", lineno)
        values[key] = value
        lines[key] = lineno

    for key in ("kind", "dim"):
        if key not in values:
            raise ParseError(f"missing key {key!r}")
    kind = values["kind"]
    if kind not in KINDS:
        raise ParseError(f"unknown kind {kind!r}", lines["kind"])
    if not re.fullmatch(r"\d+", values["dim"]) or int(values["dim"]) < 1:
        raise ParseError(f"dim must be a positive integer, got {values['dim']!r}", lines["dim"])
    dim = int(values["dim"])
    if kind == "spin" and dim < 2:
        raise ParseError("spin documents need dim >= 2", lines["dim"])
    expect = values.get("expect")
    if expect is not None and expect not in EXPECTATIONS:
        raise ParseError(f"expect must be one of {', '.join(EXPECTATIONS)}", lines["expect"])

    unit = parse_vector(values["unit"], lines["unit"]) if "unit" in values else ()
    if unit and len(unit) != dim:
        raise ParseError(f"unit has {len(unit)} entries, dim is {dim}", lines["unit"])
    for g in gens:
        if len(g) != dim:
            raise ParseError(f"generator has {len(g)} entries, dim is {dim}", lines["gen"])
    if kind == "polyhedral":
        if not gens:
            raise ParseError("polyhedral documents need at least one 'gen' line")
        if not unit:
            raise ParseError("polyhedral documents need a 'unit' line")
    if kind == "spin" and gens:
        raise ParseError("spin documents take no generators", lines["gen"])
    return AlgebraDocument(kind, dim, tuple(gens), unit, values.get("name", ""), expect, lines)


def load(path) -> AlgebraDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse(text)
    except ParseError as exc:
        raise _located(path, exc) from None


def _located(path, exc: ParseError) -> ParseError:
    err = ParseError(f"{path}: {exc}")
    err.line = exc.line
    return err


def load_algebra(path) -> tuple[AlgebraDocument, EffectAlgebra]:
    """Parse and validate a document file; errors name the file and line."""
    doc = load(path)
    try:
        return doc, to_algebra(doc)
    except ParseError as exc:
        raise _located(path, exc) from None


def to_algebra(doc: AlgebraDocument) -> EffectAlgebra:
    """Validate a document into an algebra; failures become :class:`ParseError` with a line."""
    if doc.kind == "classical":
        ones = (Fraction(1),) * doc.dim
        if doc.unit and doc.unit != ones:
            raise ParseError("classical unit must be all ones", doc.lines.get("unit"))
        if doc.generators and sorted(set(doc.generators)) != sorted(
            unit_vector(doc.dim, i) for i in range(doc.dim)
        ):
            raise ParseError("classical generators must be the standard basis", doc.lines.get("gen"))
        return make_algebra("classical", n=doc.dim, name=doc.name)
    if doc.kind == "spin":
        if doc.unit and doc.unit != unit_vector(doc.dim, 0):
            raise ParseError("spin unit must be (1, 0, ..., 0)", doc.lines.get("unit"))
        return make_algebra("spin", d=doc.dim - 1, name=doc.name)
    try:
        return make_algebra("polyhedral", generators=doc.generators, unit=doc.unit, name=doc.name)
    except UnitNotOrderUnitError as exc:
        raise ParseError(str(exc), doc.lines.get("unit")) from None
    except (NotPointedError, SpeclatError, ValueError) as exc:
        raise ParseError(str(exc), doc.lines.get("gen")) from None


def from_algebra(E: EffectAlgebra, expect: str | None = None) -> AlgebraDocument:
    gens = tuple(E.cone.generators) if E.is_polyhedral else ()
    return AlgebraDocument(E.kind, E.dim, gens, E.unit, E.name, expect)


def dump(doc: AlgebraDocument) -> str:
    def vec(v):
        return ",".join(format_fraction(x) for x in v)

    out = [f"kind = {doc.kind}", f"dim = {doc.dim}"]
    if doc.name:
        out.append(f"name = {doc.name}")
    if doc.unit:
        out.append(f"unit = {vec(doc.unit)}")
    out += [f"gen = {vec(g)}" for g in doc.generators]
    if doc.expect:
        out.append(f"expect = {doc.expect}")
    return "\n".join(out) + "\n"
