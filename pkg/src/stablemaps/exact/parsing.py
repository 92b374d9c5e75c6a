"""A small recursive-descent parser for integer/rational polynomial strings.

Accepts expressions like ``c``, ``c-2``, ``c^2+1``, ``3*c^2 - 1/2``, with
``+ - * ^`` and parentheses.  Used by the CLI (``--place poly:c-2``) and by
tests that want readable map literals.  One variable per expression.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import ParseError
from .fields import QQ
from .unipoly import UniPoly

__all__ = ["parse_poly_string"]


def _tokenize(s: str):
    tokens = []
    i = 0
    while i < len(s):
        ch = s[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(s) and s[j].isdigit():
                j += 1
            tokens.append(("num", int(s[i:j])))
            i = j
        elif ch.isalpha():
            tokens.append(("var", ch))
            i += 1
        elif ch in "+-*^()/":
            tokens.append((ch, ch))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r} in polynomial string {s!r}")
    return tokens


class _Parser:
    def __init__(self, tokens, var):
        self.tokens = tokens
        self.pos = 0
        self.var = var

    def peek(self):
        return self.tokens[self.pos][0] if self.pos < len(self.tokens) else None

    def next(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expr(self) -> UniPoly:
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.next()[0] == "-" else 1
        node = self.term()
        if sign < 0:
            node = -node
        while self.peek() in ("+", "-"):
            op = self.next()[0]
            rhs = self.term()
            node = node + rhs if op == "+" else node - rhs
        return node

    def term(self) -> UniPoly:
        node = self.factor()
        while True:
            nxt = self.peek()
            if nxt == "*":
                self.next()
                node = node * self.factor()
            elif nxt == "/":
                self.next()
                rhs = self.factor()
                if rhs.degree > 0:
                    raise ParseError("polynomial string with non-constant denominator")
                node = node.scale(QQ.one / rhs[0])
            elif nxt in ("var", "num", "("):
                node = node * self.factor()  # implicit multiplication, e.g. "2c"
            else:
                return node

    def factor(self) -> UniPoly:
        base = self.atom()
        if self.peek() == "^":
            self.next()
            kind, val = self.next()
            if kind != "num":
                raise ParseError("exponent must be an integer literal")
            base = base ** val
        return base

    def atom(self) -> UniPoly:
        kind, val = self.next()
        if kind == "num":
            return UniPoly.constant(Fraction(val), QQ, self.var)
        if kind == "var":
            if val != self.var:
                raise ParseError(f"unexpected variable {val!r}; expected {self.var!r}")
            return UniPoly.x(QQ, self.var)
        if kind == "(":
            node = self.expr()
            if self.peek() != ")":
                raise ParseError("unbalanced parentheses")
            self.next()
            return node
        if kind == "-":
            return -self.atom()
        raise ParseError(f"unexpected token {val!r}")


def parse_poly_string(s: str, var: str = "c") -> UniPoly:
    """Parse a polynomial string in the given variable over Q."""
    tokens = _tokenize(s)
    if not tokens:
        raise ParseError("empty polynomial string")
    parser = _Parser(tokens, var)
    poly = parser.expr()
    if parser.pos != len(tokens):
        raise ParseError(f"trailing input in polynomial string {s!r}")
    return poly
