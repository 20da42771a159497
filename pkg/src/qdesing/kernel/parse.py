"""Exact parser for polynomial expressions.

Grammar (whitespace is ignored)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT | IDENT | "(" expr ")"

``/`` is only allowed when the divisor is a nonzero constant, which covers
rational literals such as ``3/4`` and field-parameter quotients such as
``t/(t+1)`` over QQ(t).
"""
from __future__ import annotations

import re
from typing import Sequence

from ..errors import ParseError, UnknownSymbolError
from .polys import Poly, Ring

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(.))")


def tokenize(text: str):
    tokens = []
    pos = 0
    n = len(text)
    while pos < n:
        m = _TOKEN.match(text, pos)
        if m.end() == pos:
            break
        if m.group(1) is not None:
            tokens.append(("INT", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("IDENT", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            tokens.append((ch, ch, m.start(3)))
        pos = m.end()
    tokens.append(("EOF", "", n))
    return tokens


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.tokens = tokenize(text)
        self.i = 0
        self.ring = ring
        self.params = set(getattr(ring.field, "params", ()))

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "EOF" else repr(tok[1])
            raise ParseError(f"expected {kind}, found {what}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Poly:
        if self.peek()[0] == "EOF":
            raise ParseError("empty expression", 0)
        value = self.expr()
        tok = self.peek()
        if tok[0] != "EOF":
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return value

    def expr(self) -> Poly:
        value = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Poly:
        value = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if not rhs.is_constant() or rhs.is_zero():
                    raise ParseError("division only by a nonzero constant", pos)
                value = value.scale(self.ring.field.one / rhs.constant_coeff())
        return value

    def unary(self) -> Poly:
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> Poly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            tok = self.peek()
            if tok[0] != "INT":
                raise ParseError("exponent must be a nonnegative integer literal", tok[2])
            self.take()
            base = base ** int(tok[1])
        return base

    def atom(self) -> Poly:
        kind, text, pos = self.peek()
        if kind == "INT":
            self.take()
            return self.ring.const(int(text))
        if kind == "IDENT":
            self.take()
            if text in self.ring._index:
                return self.ring.var(text)
            if text in self.params:
                return self.ring.const(self.ring.field.param(text))
            raise UnknownSymbolError(f"unknown symbol {text!r}", pos)
        if kind == "(":
            self.take()
            value = self.expr()
            self.take(")")
            return value
        what = "end of input" if kind == "EOF" else repr(text)
        raise ParseError(f"unexpected {what}", pos)


def parse_polynomial(text: str, vars: Sequence[str], field) -> Poly:
    """Parse ``text`` into a polynomial over ``field`` in ``vars``."""
    ring = vars if isinstance(vars, Ring) else Ring(field, vars)
    return _Parser(text, ring).parse()
