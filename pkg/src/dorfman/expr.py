"""Recursive-descent parser for polynomial expressions.

Grammar (whitespace is insignificant)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INTEGER)?
    atom   := NUMBER | IDENT | "(" expr ")"
    NUMBER := INTEGER ("/" INTEGER)?

``IDENT`` is a coordinate of the chart, or ``i`` (imaginary unit) on
Gaussian-rational charts.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, NamedTuple

from .polynomial import Chart, Polynomial
from .scalars import GAUSSIAN, I


class ExpressionError(ValueError):
    """Base class for expression errors; ``column`` is 1-based."""

    def __init__(self, message: str, column: int):
        super().__init__(f"column {column}: {message}")
        self.message = message
        self.column = column


class ExpressionSyntaxError(ExpressionError):
    pass


class UnknownSymbol(ExpressionError):
    pass


class Token(NamedTuple):
    kind: str
    text: str
    column: int


_TOKEN_RE = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^()]))")


def tokenize(text: str) -> List[Token]:
    tokens = []
    pos = 0
    while True:
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:]
            if rest.strip() == "":
                break
            col = pos + len(rest) - len(rest.lstrip()) + 1
            raise ExpressionSyntaxError(f"unexpected character {text[col - 1]!r}", col)
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), m.start(kind) + 1))
        pos = m.end()
    tokens.append(Token("end", "", len(text) + 1))
    return tokens


class _Parser:
    def __init__(self, text: str, chart: Chart):
        self.chart = chart
        self.tokens = tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        self.pos += 1
        return t

    def expect(self, text: str):
        if self.tok.text != text:
            self.fail(f"expected {text!r}")
        self.advance()

    def fail(self, message: str):
        t = self.tok
        found = "end of input" if t.kind == "end" else repr(t.text)
        raise ExpressionSyntaxError(f"{message}, found {found}", t.column)

    def parse(self) -> Polynomial:
        if self.tok.kind == "end":
            self.fail("empty expression")
        value = self.expr()
        if self.tok.kind != "end":
            self.fail("expected operator")
        return value

    def expr(self) -> Polynomial:
        value = self.term()
        while self.tok.text in ("+", "-"):
            op = self.advance().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> Polynomial:
        value = self.unary()
        while self.tok.text == "*":
            self.advance()
            value = value * self.unary()
        return value

    def unary(self) -> Polynomial:
        if self.tok.text in ("+", "-"):
            op = self.advance().text
            value = self.unary()
            return -value if op == "-" else value
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        if self.tok.text == "^":
            self.advance()
            t = self.tok
            if t.kind != "num" or "/" in t.text:
                self.fail("expected a nonnegative integer exponent")
            self.advance()
            return base ** int(t.text)
        return base

    def atom(self) -> Polynomial:
        t = self.tok
        if t.kind == "num":
            if "/" in t.text and int(t.text.split("/")[1]) == 0:
                raise ExpressionSyntaxError("zero denominator", t.column)
            self.advance()
            return self.chart.const(Fraction(t.text))
        if t.kind == "ident":
            self.advance()
            if t.text in self.chart.names:
                return self.chart.coord(t.text)
            if t.text == "i" and self.chart.field == GAUSSIAN:
                return self.chart.const(I)
            raise UnknownSymbol(f"unknown symbol {t.text!r}", t.column)
        if t.text == "(":
            self.advance()
            value = self.expr()
            self.expect(")")
            return value
        self.fail("expected a number, coordinate or '('")


def parse_polynomial(text: str, chart: Chart) -> Polynomial:
    return _Parser(text, chart).parse()
