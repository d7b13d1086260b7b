"""Parser for the textual polynomial syntax.

Variables are z1..zd, x1..xm, y1..yn and t; coefficients are integers or
rationals; powers use ``^`` (``**`` is accepted too) and ``*`` may be omitted
between factors, so ``3x1y1`` and ``3*x1*y1`` mean the same thing.  Division
and negative powers are allowed only by units.
"""

from __future__ import annotations

import re

from ..errors import NotAUnit, ParseError
from .element import Element
from .poly import Polynomial, PolyRing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z]\d*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError("unexpected character", text, pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            out.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            out.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


class _Parser:
    def __init__(self, text, var, const, divide, power):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.var = var
        self.const = const
        self.divide = divide
        self.power = power

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.text, tok[2])

    def expect(self, op):
        tok = self.take()
        if tok[0] != "op" or tok[1] != op:
            self.fail(f"expected {op!r}", tok)

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        v = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected trailing input")
        return v

    def expr(self):
        v = self.term()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] in "+-":
                self.take()
                w = self.term()
                v = v + w if tok[1] == "+" else v - w
            else:
                return v

    def _starts_atom(self, tok):
        return tok[0] in ("int", "name") or (tok[0] == "op" and tok[1] == "(")

    def term(self):
        v = self.unary()
        while True:
            tok = self.peek()
            if tok[0] == "op" and tok[1] == "*":
                self.take()
                v = v * self.unary()
            elif tok[0] == "op" and tok[1] == "/":
                self.take()
                rhs_tok = self.peek()
                rhs = self.unary()
                try:
                    v = self.divide(v, rhs)
                except (NotAUnit, ZeroDivisionError) as exc:
                    self.fail(f"division by a non-unit: {exc}", rhs_tok)
            elif self._starts_atom(tok):
                v = v * self.power_expr()
            else:
                return v

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in "+-":
            self.take()
            v = self.unary()
            return -v if tok[1] == "-" else v
        return self.power_expr()

    def power_expr(self):
        base = self.atom()
        tok = self.peek()
        if tok[0] == "op" and tok[1] == "^":
            self.take()
            k = self.exponent()
            try:
                return self.power(base, k)
            except (NotAUnit, ZeroDivisionError) as exc:
                self.fail(f"negative power of a non-unit: {exc}", tok)
        return base

    def exponent(self):
        tok = self.take()
        sign = 1
        if tok[0] == "op" and tok[1] == "(":
            k = self.exponent()
            self.expect(")")
            return k
        if tok[0] == "op" and tok[1] in "+-":
            sign = -1 if tok[1] == "-" else 1
            tok = self.take()
        if tok[0] != "int":
            self.fail("exponent must be an integer", tok)
        return sign * tok[1]

    def atom(self):
        tok = self.take()
        if tok[0] == "int":
            return self.const(tok[1])
        if tok[0] == "name":
            try:
                return self.var(tok[1])
            except KeyError:
                self.fail(f"unknown variable {tok[1]!r}", tok)
        if tok[0] == "op" and tok[1] == "(":
            v = self.expr()
            self.expect(")")
            return v
        self.fail("expected a number, variable or '('", tok)


def parse_poly(text: str, ring: PolyRing) -> Polynomial:
    """Parse into a plain polynomial ring (division only by scalars)."""

    def divide(a, b):
        if not b.is_constant() or not b:
            raise NotAUnit(f"cannot divide by {b}")
        return a.scale(ring.field.inv(b.constant_value()))

    def power(a, k):
        if k < 0:
            return divide(ring.one, a) ** (-k)
        return a**k

    return _Parser(str(text), ring.gen, ring.constant, divide, power).parse()


def parse_element(text: str, tower) -> Element:
    """Parse into the localized ring A of a tower."""
    return _Parser(
        str(text),
        lambda name: Element.var(tower, name),
        lambda n: Element.constant(tower, n),
        lambda a, b: a / b,
        lambda a, k: a**k,
    ).parse()
