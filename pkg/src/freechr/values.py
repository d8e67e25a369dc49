"""Ground values: integers, symbols and tuples.

Integers are plain Python ``int`` restricted to the signed 64-bit range,
tuples are Python ``tuple`` of length >= 2, and symbols are :class:`Sym`.
All three are immutable and hashable, so they can be used directly as
multiset elements.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import EvaluationError, ValueSyntaxError

INT_MIN = -(2**63)
INT_MAX = 2**63 - 1

_SYM_RE = re.compile(r"[a-z][A-Za-z0-9_]*\Z")


@dataclass(frozen=True, slots=True)
class Sym:
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not _SYM_RE.match(self.name):
            raise ValueError(f"invalid symbol name {self.name!r}")

    def __str__(self):
        return self.name


Value = Union[int, Sym, tuple]


def is_value(v) -> bool:
    if isinstance(v, bool):
        return False
    if isinstance(v, int):
        return INT_MIN <= v <= INT_MAX
    if isinstance(v, Sym):
        return True
    if isinstance(v, tuple):
        return len(v) >= 2 and all(is_value(x) for x in v)
    return False


def check_value(v) -> Value:
    """Return ``v`` unchanged, or raise :class:`EvaluationError` if it is not a ground value."""
    if not is_value(v):
        if isinstance(v, int) and not isinstance(v, bool):
            raise EvaluationError(f"integer overflow: {v}")
        raise EvaluationError(f"not a ground value: {v!r}")
    return v


def check_int(n: int) -> int:
    if not INT_MIN <= n <= INT_MAX:
        raise EvaluationError(f"integer overflow: {n}")
    return n


def sort_key(v: Value):
    """Key realising the total order Int < Sym < Tup."""
    if isinstance(v, int):
        return (0, v)
    if isinstance(v, Sym):
        return (1, v.name)
    return (2, tuple(sort_key(x) for x in v))


def compare(a: Value, b: Value) -> int:
    """Three-way comparison: -1, 0 or 1."""
    ka, kb = sort_key(a), sort_key(b)
    return (ka > kb) - (ka < kb)


def render(v: Value) -> str:
    if isinstance(v, tuple):
        return "(" + ", ".join(render(x) for x in v) + ")"
    return str(v)


_TOKEN_RE = re.compile(r"\s*(?:(-?\d+)|([a-z][A-Za-z0-9_]*)|([(),]))")


class _Reader:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, msg, pos=None):
        return ValueSyntaxError(msg, self.text, self.pos if pos is None else pos)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def at_end(self):
        self.skip_ws()
        return self.pos >= len(self.text)

    def peek(self):
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch):
        if self.peek() != ch:
            found = self.peek() or "end of input"
            raise self.error(f"expected {ch!r}, found {found!r}")
        self.pos += 1

    def value(self) -> Value:
        self.skip_ws()
        start = self.pos
        m = _TOKEN_RE.match(self.text, self.pos)
        if m is None:
            found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            raise self.error(f"unexpected {found!r}")
        if m.group(1) is not None:
            n = int(m.group(1))
            if not INT_MIN <= n <= INT_MAX:
                raise self.error(f"integer out of range: {n}", start)
            self.pos = m.end()
            return n
        if m.group(2) is not None:
            self.pos = m.end()
            return Sym(m.group(2))
        if m.group(3) != "(":
            raise self.error(f"unexpected {m.group(3)!r}", m.start(3))
        self.pos = m.end()
        items = [self.value()]
        while self.peek() == ",":
            self.pos += 1
            items.append(self.value())
        self.expect(")")
        if len(items) < 2:
            raise self.error("tuples need at least two elements", start)
        return tuple(items)


def parse_value(text: str) -> Value:
    r = _Reader(text)
    v = r.value()
    if not r.at_end():
        raise r.error(f"trailing input {r.text[r.pos:]!r}")
    return v


def parse_values(text: str) -> list[Value]:
    """Parse a comma-separated list of values; blank text is the empty list."""
    r = _Reader(text)
    if r.at_end():
        return []
    out = [r.value()]
    while not r.at_end():
        r.expect(",")
        out.append(r.value())
    return out
