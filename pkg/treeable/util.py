# Copyright (c) 2026 The treeable developers
# SPDX-License-Identifier: MIT

from fractions import Fraction
import re
from typing import Dict, Iterable, Iterator, List, Tuple


# -------------------------------------------------------------------------------------
class TreeableError(Exception):
    pass


class ValidationError(TreeableError):
    pass


class ParseError(ValidationError):
    def __init__(self, lineno: int, message: str) -> None:
        super().__init__("line %d: %s" % (lineno, message))
        self.lineno = lineno


class ResourceError(TreeableError):
    pass


class SchemeError(TreeableError):
    pass


# -------------------------------------------------------------------------------------
class Params:
    """
    Degree bound ``d``, number of colors ``c`` and radius bound ``r`` shared by
    every type space of the package.
    """

    __slots__ = ("d", "c", "r")

    def __init__(self, d: int, c: int, r: int = 0) -> None:
        if not isinstance(d, int) or d < 1:
            raise ValidationError("maximum degree must be an integer >= 1: %r" % (d,))
        if not isinstance(c, int) or c < 1:
            raise ValidationError("number of colors must be an integer >= 1: %r" % (c,))
        if not isinstance(r, int) or r < 0:
            raise ValidationError("radius must be an integer >= 0: %r" % (r,))
        self.d = d
        self.c = c
        self.r = r

    def with_radius(self, r: int) -> "Params":
        return Params(self.d, self.c, r)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Params):
            return NotImplemented
        return (self.d, self.c, self.r) == (other.d, other.c, other.r)

    def __hash__(self) -> int:
        return hash((self.d, self.c, self.r))

    def __repr__(self) -> str:
        return "Params(d=%d, c=%d, r=%d)" % (self.d, self.c, self.r)


# -------------------------------------------------------------------------------------
def iter_records(text: str) -> Iterator[Tuple[int, str]]:
    """
    Yield ``(lineno, line)`` for every meaningful line of a line-based file.
    Comments start with ``#`` and run to the end of the line.
    """
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            yield lineno, line


# -------------------------------------------------------------------------------------
FIELD_RE = re.compile(r"^(?P<key>[a-z_]+)=(?P<value>\S*)$")


def parse_fields(lineno: int, tokens: Iterable[str]) -> Dict[str, str]:
    fields = {}
    for tok in tokens:
        match = FIELD_RE.match(tok)
        if not match:
            raise ParseError(lineno, "expected key=value, got %r" % tok)
        key = match.group("key")
        if key in fields:
            raise ParseError(lineno, "duplicate field %r" % key)
        fields[key] = match.group("value")
    return fields


def parse_int(lineno: int, value: str, what: str) -> int:
    try:
        return int(value)
    except (TypeError, ValueError):
        raise ParseError(lineno, "invalid %s: %r" % (what, value)) from None


def parse_header(
    lineno: int, line: str, keyword: str, keys: List[str]
) -> Dict[str, int]:
    tokens = line.split()
    if tokens[0] != keyword:
        raise ParseError(lineno, "expected %r header, got %r" % (keyword, tokens[0]))
    fields = parse_fields(lineno, tokens[1:])
    missing = [k for k in keys if k not in fields]
    if missing:
        raise ParseError(lineno, "header lacks %s" % ", ".join(missing))
    unknown = sorted(set(fields) - set(keys))
    if unknown:
        raise ParseError(lineno, "unknown header fields: %s" % ", ".join(unknown))
    return {k: parse_int(lineno, fields[k], k) for k in keys}


# -------------------------------------------------------------------------------------
def parse_fraction(lineno: int, value: str) -> Fraction:
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise ParseError(lineno, "invalid weight: %r" % value) from None


def format_number(value) -> str:
    """
    Exact values are printed as ``num/den``, everything else with repr().
    """
    if isinstance(value, int):
        value = Fraction(value)
    if isinstance(value, Fraction):
        return "%d/%d" % (value.numerator, value.denominator)
    return repr(value)
