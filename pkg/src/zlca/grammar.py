"""Text grammar for polynomials: parser for the canonical printed form.

Grammar (whitespace insignificant):

    expr    := term (('+' | '-') term)*
    term    := factor ('*' factor)*
    factor  := '-' factor | power
    power   := atom ('^' INT)?
    atom    := INT ('/' INT)? | IDENT | '(' expr ')'

`d`, `x`, `y` are the formal variables; any other identifier matching
[a-z][a-z0-9_]* is a parameter.  `/` exists only inside rational literals
(e.g. ``3/2``), and multiplication is always explicit: ``2x`` is an error.

``parse`` and ``ParamPoly.__str__`` are mutually inverse: parsing a canonical
string and reprinting reproduces it byte for byte, and printing any
polynomial and reparsing gives an equal polynomial.
"""

from __future__ import annotations

from fractions import Fraction

from .poly import FORMAL_VARS, ParamPoly


class ParseError(ValueError):
    """Syntax error in a polynomial string; column is 1-based."""

    def __init__(self, message: str, column: int):
        super().__init__(f"{message} (column {column})")
        self.column = column


_INT = "int"
_IDENT = "ident"
_OP = "op"
_EOF = "eof"


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens: list[tuple[str, str, int]] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch.isdigit():
            start = i
            while i < n and text[i].isdigit():
                i += 1
            tokens.append((_INT, text[start:i], start + 1))
            continue
        if ch.isalpha():
            if not ch.islower():
                raise ParseError(f"unexpected character {ch!r}", i + 1)
            start = i
            while i < n and (text[i].islower() or text[i].isdigit()
                             or text[i] == "_"):
                i += 1
            if i < n and text[i].isalpha():
                raise ParseError(f"unexpected character {text[i]!r}", i + 1)
            tokens.append((_IDENT, text[start:i], start + 1))
            continue
        if ch in "+-*^/()":
            tokens.append((_OP, ch, i + 1))
            i += 1
            continue
        raise ParseError(f"unexpected character {ch!r}", i + 1)
    tokens.append((_EOF, "", n + 1))
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str, int]]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def advance(self) -> tuple[str, str, int]:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_op(self, symbol: str) -> None:
        kind, text, col = self.peek()
        if kind != _OP or text != symbol:
            raise ParseError(f"expected {symbol!r}", col)
        self.advance()

    def parse(self) -> ParamPoly:
        value = self.expr()
        kind, text, col = self.peek()
        if kind != _EOF:
            raise ParseError(f"unexpected {text!r}", col)
        return value

    def expr(self) -> ParamPoly:
        value = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == _OP and text in "+-":
                self.advance()
                rhs = self.term()
                value = value + rhs if text == "+" else value - rhs
            else:
                return value

    def term(self) -> ParamPoly:
        value = self.factor()
        while True:
            kind, text, _ = self.peek()
            if kind == _OP and text == "*":
                self.advance()
                value = value * self.factor()
            else:
                return value

    def factor(self) -> ParamPoly:
        kind, text, _ = self.peek()
        if kind == _OP and text == "-":
            self.advance()
            return -self.factor()
        return self.power()

    def power(self) -> ParamPoly:
        base = self.atom()
        kind, text, _ = self.peek()
        if kind == _OP and text == "^":
            self.advance()
            ekind, etext, ecol = self.peek()
            if ekind != _INT:
                raise ParseError("exponent must be a nonnegative integer", ecol)
            self.advance()
            return base ** int(etext)
        return base

    def atom(self) -> ParamPoly:
        kind, text, col = self.advance()
        if kind == _INT:
            nkind, ntext, _ = self.peek()
            if nkind == _OP and ntext == "/":
                self.advance()
                dkind, dtext, dcol = self.peek()
                if dkind != _INT:
                    raise ParseError("expected integer denominator", dcol)
                self.advance()
                if int(dtext) == 0:
                    raise ParseError("zero denominator", dcol)
                return ParamPoly.const(Fraction(int(text), int(dtext)))
            return ParamPoly.const(int(text))
        if kind == _IDENT:
            return ParamPoly.variable(text)
        if kind == _OP and text == "(":
            value = self.expr()
            self.expect_op(")")
            return value
        if kind == _EOF:
            raise ParseError("unexpected end of input", col)
        raise ParseError(f"unexpected {text!r}", col)


def parse(text: str) -> ParamPoly:
    """Parse a polynomial string in the canonical grammar."""
    return _Parser(_tokenize(text)).parse()


def format_poly(poly: ParamPoly) -> str:
    """Canonical string form (same grammar that parse() accepts)."""
    return str(poly)


__all__ = ["ParseError", "parse", "format_poly", "FORMAL_VARS"]
