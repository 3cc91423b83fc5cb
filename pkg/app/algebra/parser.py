"""
Recursive descent parser for polynomial text.

Grammar (whitespace is ignored):

    expr     := ['+'|'-'] term (('+'|'-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' uint)?
    base     := 'x' uint | rational | '(' expr ')'
    rational := uint ('/' uint)?

A '/' is only legal inside a rational literal.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List

from app.algebra.polynomial import Polynomial
from app.errors import PolynomialSyntaxError, UnknownVariable

_TOKEN_RE = re.compile(r"x(?P<index>\d+)|(?P<int>\d+)|(?P<op>[-+*^/()])")


@dataclass(frozen=True)
class Token:
    kind: str  # var, int, op, eof
    text: str
    position: int


def tokenize(text: str) -> List[Token]:
    tokens = []
    position = 0
    while position < len(text):
        if text[position].isspace():
            position += 1
            continue
        match = _TOKEN_RE.match(text, position)
        if match is None:
            raise PolynomialSyntaxError(f"unexpected character {text[position]!r}", text, position)
        if match.group("index") is not None:
            tokens.append(Token("var", match.group("index"), position))
        elif match.group("int") is not None:
            tokens.append(Token("int", match.group("int"), position))
        else:
            tokens.append(Token("op", match.group("op"), position))
        position = match.end()
    tokens.append(Token("eof", "", len(text)))
    return tokens


class PolynomialParser:
    """Parse polynomial text into a Polynomial in n variables."""

    def __init__(self, text: str, n: int):
        self.text = text
        self.n = n
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _error(self, message: str, token: Token = None) -> PolynomialSyntaxError:
        token = token or self.current
        return PolynomialSyntaxError(message, self.text, token.position)

    def _at_op(self, symbol: str) -> bool:
        return self.current.kind == "op" and self.current.text == symbol

    def parse(self) -> Polynomial:
        if self.current.kind == "eof":
            raise self._error("empty expression")
        result = self.expr()
        if self.current.kind != "eof":
            if self._at_op("/"):
                raise self._error("division outside a rational literal")
            raise self._error(f"unexpected token {self.current.text!r}")
        return result

    def expr(self) -> Polynomial:
        sign = 1
        if self._at_op("+") or self._at_op("-"):
            sign = -1 if self._advance().text == "-" else 1
        result = self.term().scale(sign)
        while self._at_op("+") or self._at_op("-"):
            op = self._advance().text
            right = self.term()
            result = result + right if op == "+" else result - right
        return result

    def term(self) -> Polynomial:
        result = self.factor()
        while self._at_op("*"):
            self._advance()
            result = result * self.factor()
        return result

    def factor(self) -> Polynomial:
        base = self.base()
        if self._at_op("^"):
            self._advance()
            token = self.current
            if token.kind != "int":
                raise self._error("expected a non-negative integer exponent")
            self._advance()
            return base ** int(token.text)
        return base

    def base(self) -> Polynomial:
        token = self.current
        if token.kind == "var":
            self._advance()
            index = int(token.text)
            if index < 1 or index > self.n:
                raise UnknownVariable(f"unknown variable x{index} for n={self.n}", self.text, token.position)
            return Polynomial.variable(self.n, index)
        if token.kind == "int":
            self._advance()
            value = Fraction(int(token.text))
            if self._at_op("/"):
                slash = self._advance()
                denominator = self.current
                if denominator.kind != "int":
                    raise self._error("division outside a rational literal", slash)
                self._advance()
                if int(denominator.text) == 0:
                    raise self._error("zero denominator", denominator)
                value = value / int(denominator.text)
            return Polynomial.constant(self.n, value)
        if self._at_op("("):
            self._advance()
            inner = self.expr()
            if not self._at_op(")"):
                raise self._error("expected ')'")
            self._advance()
            return inner
        if self._at_op("/"):
            raise self._error("division outside a rational literal")
        if token.kind == "eof":
            raise self._error("unexpected end of input")
        raise self._error(f"unexpected token {token.text!r}")


def parse_polynomial(text: str, n: int) -> Polynomial:
    """Parse text into a normalized Polynomial over K[x1..xn]."""
    return PolynomialParser(text, n).parse()
