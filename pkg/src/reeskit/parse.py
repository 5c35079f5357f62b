"""Recursive-descent parser for polynomial text.

Grammar (``^`` binds tightest, unary minus below it, no implicit products)::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := '-' unary | power
    power  := atom ('^' INT)?
    atom   := INT | '[' INT ']' | NAME | '(' expr ')'

``[n]`` is a GF(p^k) element in digit encoding (what the printer emits for
extension-field coefficients).
"""

from __future__ import annotations

import re

from .errors import ParseError, UnknownVariable
from .poly import Poly, RingCtx

_TOKEN = re.compile(r"(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S)")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    for m in _TOKEN.finditer(text):
        start = m.start()
        if m.group(1):
            tokens.append(("int", m.group(1), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*^()[]":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append(("op", ch, start))
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: RingCtx):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, pos = self.take()
        if v != value or kind != "op":
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", pos)

    def parse(self) -> Poly:
        result = self.expr()
        kind, v, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {v!r}", pos)
        return result

    def expr(self) -> Poly:
        acc = self.term()
        while self.peek()[0] == "op" and self.peek()[1] in "+-":
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> Poly:
        acc = self.unary()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            acc = acc * self.unary()
        return acc

    def unary(self) -> Poly:
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return -self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, v, pos = self.take()
            if kind != "int":
                raise ParseError("exponent must be a non-negative integer", pos)
            return base ** int(v)
        return base

    def atom(self) -> Poly:
        kind, v, pos = self.take()
        if kind == "int":
            return self.ring.from_int(int(v))
        if kind == "name":
            if v not in self.ring.vars:
                raise UnknownVariable(f"unknown variable {v!r}", pos)
            return self.ring.gen(v)
        if (kind, v) == ("op", "("):
            inner = self.expr()
            self.expect(")")
            return inner
        if (kind, v) == ("op", "["):
            k2, n, p2 = self.take()
            if k2 != "int" or int(n) >= self.ring.field.q:
                raise ParseError("bad field element literal", p2)
            self.expect("]")
            return self.ring.const(int(n))
        raise ParseError(f"unexpected {v or 'end of input'!r}", pos)


def parse_poly(text: str, ring: RingCtx) -> Poly:
    """Parse ``text`` into an exact polynomial of ``ring`` (integer coefficients reduced mod p)."""
    return _Parser(text, ring).parse()
