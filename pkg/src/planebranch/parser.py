"""Text grammar and serializers (see docs/formats.md for the ABNF).

Parametrizations:  ``x = t^8 ; y = t^12 + t^14 + t^15 [; prec = 40]``
Semigroups:        ``<30,42,280,855>`` or ``30,42,280,855``
Multiplicity seqs: ``30,12^2,6^13,4,2^9,1^2``
"""

from __future__ import annotations

import json
import re
from dataclasses import fields, is_dataclass
from fractions import Fraction
from functools import reduce
from math import gcd

from .branch import PlaneBranch
from .errors import (
    DuplicateVariable,
    NonPositiveExponent,
    NotNumericalSemigroup,
    ParseError,
)
from .multseq import MultiplicitySequence
from .semigroup import NumericalSemigroup
from .series import TruncatedSeries

_TOKEN = re.compile(r"\s*(\d+|[A-Za-z]+|[=+\-;*/^<>,])")
_BIG = 2 ** 53


class _Tokens:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _position(self, at: int) -> tuple[int, int]:
        line = self.text.count("\n", 0, at) + 1
        column = at - (self.text.rfind("\n", 0, at) + 1) + 1
        return line, column

    def error(self, message: str, cls=ParseError) -> ParseError:
        return cls(message, *self._position(self.pos))

    def peek(self) -> str | None:
        m = _TOKEN.match(self.text, self.pos)
        return m.group(1) if m else None

    def next(self) -> str:
        m = _TOKEN.match(self.text, self.pos)
        if not m:
            rest = self.text[self.pos:].strip()
            if rest:
                raise self.error(f"unexpected character {rest[0]!r}")
            raise self.error("unexpected end of input")
        self.pos = m.end()
        return m.group(1)

    def expect(self, token: str) -> None:
        got = self.next()
        if got != token:
            raise self.error(f"expected {token!r}, got {got!r}")

    def at_end(self) -> bool:
        return self.peek() is None and not self.text[self.pos:].strip()

    def natural(self, what: str) -> int:
        tok = self.next()
        if not tok.isdigit():
            raise self.error(f"expected {what}, got {tok!r}")
        return int(tok)


def _parse_series_terms(toks: _Tokens) -> dict[int, Fraction]:
    """Sum of [rat*]t^nat terms, or the literal 0 for the zero series."""
    terms: dict[int, Fraction] = {}
    first = True
    while True:
        sign = Fraction(1)
        tok = toks.peek()
        if tok in ("+", "-"):
            toks.next()
            sign = Fraction(-1) if tok == "-" else Fraction(1)
        elif not first:
            break
        tok = toks.peek()
        if tok is None:
            raise toks.error("expected a term")
        if first and tok == "0" and sign == 1:
            save = toks.pos
            toks.next()
            if toks.peek() in (None, ";"):
                return {}
            toks.pos = save
        coeff = sign
        if tok.isdigit():
            num = toks.natural("coefficient")
            den = 1
            if toks.peek() == "/":
                toks.next()
                den = toks.natural("denominator")
                if den == 0:
                    raise toks.error("zero denominator")
            coeff *= Fraction(num, den)
            toks.expect("*")
        if toks.next() != "t":
            raise toks.error("expected 't'")
        toks.expect("^")
        exponent = toks.natural("exponent")
        if exponent == 0:
            raise toks.error("exponent must be positive", NonPositiveExponent)
        terms[exponent] = terms.get(exponent, Fraction(0)) + coeff
        first = False
    return terms


def parse_branch(text: str) -> PlaneBranch:
    """Parse ``x = <series> ; y = <series> [; prec = N]`` (any order)."""
    toks = _Tokens(text)
    parts: dict[str, dict[int, Fraction]] = {}
    prec: int | None = None
    while not toks.at_end():
        name = toks.next()
        if name == ";":
            continue
        if name == "prec":
            toks.expect("=")
            if prec is not None:
                raise toks.error("prec given twice", DuplicateVariable)
            prec = toks.natural("precision")
            continue
        if name not in ("x", "y"):
            raise toks.error(f"expected 'x', 'y' or 'prec', got {name!r}")
        if name in parts:
            raise toks.error(f"variable {name!r} assigned twice",
                             DuplicateVariable)
        toks.expect("=")
        parts[name] = _parse_series_terms(toks)
    for name in ("x", "y"):
        if name not in parts:
            raise toks.error(f"missing assignment for {name!r}")
    exponents = [e for t in parts.values() for e in t]
    default = 1 + max(exponents, default=0)
    if prec is None:
        prec = default
    elif prec < default:
        raise toks.error(
            f"prec = {prec} does not cover the written exponents "
            f"(need >= {default})")
    return PlaneBranch(TruncatedSeries.make(parts["x"], prec),
                       TruncatedSeries.make(parts["y"], prec))


def parse_semigroup(text: str) -> list[int]:
    """Parse ``<a0,...,ak>`` or a bare comma list; gcd must be 1."""
    toks = _Tokens(text)
    bracketed = toks.peek() == "<"
    if bracketed:
        toks.next()
    gens = [toks.natural("generator")]
    while toks.peek() == ",":
        toks.next()
        gens.append(toks.natural("generator"))
    if bracketed:
        toks.expect(">")
    if not toks.at_end():
        raise toks.error(f"trailing input {toks.peek()!r}")
    if any(g < 1 for g in gens):
        raise toks.error("generators must be >= 1")
    if reduce(gcd, gens) != 1:
        raise NotNumericalSemigroup(f"gcd of {gens} is not 1")
    return gens


def parse_multseq(text: str) -> MultiplicitySequence:
    """Parse a comma list of ``e`` or ``e^h`` run-length entries."""
    toks = _Tokens(text)
    entries: list[int] = []
    while True:
        e = toks.natural("multiplicity")
        if e < 1:
            raise toks.error("multiplicities must be >= 1")
        h = 1
        if toks.peek() == "^":
            toks.next()
            h = toks.natural("run length")
            if h < 1:
                raise toks.error("run length must be >= 1")
        entries.extend([e] * h)
        if toks.peek() != ",":
            break
        toks.next()
    if not toks.at_end():
        raise toks.error(f"trailing input {toks.peek()!r}")
    return MultiplicitySequence.from_entries(entries)


def _format_coeff(c: Fraction) -> str:
    return str(c) if c.denominator != 1 else str(c.numerator)


def render_series(s: TruncatedSeries) -> str:
    if s.is_zero:
        return "0"
    parts = []
    for e, c in s.terms:
        mag = abs(c)
        body = f"t^{e}" if mag == 1 else f"{_format_coeff(mag)}*t^{e}"
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"{'+' if c > 0 else '-'} {body}")
    return " ".join(parts)


def render_branch(b: PlaneBranch) -> str:
    prec = min(b.x.precision, b.y.precision)
    return (f"x = {render_series(b.x.truncate(prec))}; "
            f"y = {render_series(b.y.truncate(prec))}; prec = {prec}")


def render_semigroup(S: NumericalSemigroup) -> str:
    return str(S)


def render_multseq(e: MultiplicitySequence) -> str:
    return str(e)


def _jsonable(value):
    if isinstance(value, bool) or value is None or isinstance(value, str):
        return value
    if isinstance(value, int):
        return str(value) if abs(value) >= _BIG else value
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    if isinstance(value, NumericalSemigroup):
        return {"generators": list(value.min_generators),
                "conductor": _jsonable(value.conductor)}
    if isinstance(value, MultiplicitySequence):
        return {"runs": [[e, h] for e, h in value.runs]}
    if isinstance(value, TruncatedSeries):
        return {"terms": [[e, _jsonable(c)] for e, c in value.terms],
                "precision": _jsonable(value.precision)}
    if isinstance(value, PlaneBranch):
        return {"x": _jsonable(value.x), "y": _jsonable(value.y)}
    if is_dataclass(value) and not isinstance(value, type):
        return {f.name: _jsonable(getattr(value, f.name))
                for f in fields(value)}
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    raise TypeError(f"cannot serialize {type(value).__name__}")


def render_json(value) -> str:
    """Deterministic JSON: insertion-order keys, big integers as strings."""
    return json.dumps(_jsonable(value), separators=(",", ":"))
