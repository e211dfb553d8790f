"""Polynomial grammar: parse/print round trips and error positions."""

from fractions import Fraction

import pytest
from hypothesis import given, settings

from zlca import grammar
from zlca.poly import D, X, Y, ParamPoly, const, param

from test_poly import polys


def test_basic_forms():
    assert grammar.parse("d + 2*x") == D + 2 * X
    assert grammar.parse("3/2*d^2*x") == Fraction(3, 2) * D ** 2 * X
    assert grammar.parse("-d - 2*x") == -D - 2 * X
    assert grammar.parse("0") == ParamPoly.zero()
    assert grammar.parse("y^2 - s") == Y ** 2 - param("s")


def test_parentheses_and_products():
    assert grammar.parse("(d + 2*s)*(d + x)") == (D + 2 * param("s")) * (D + X)
    assert grammar.parse("-(d + x)^2") == -(D + X) ** 2


def test_precedence():
    assert grammar.parse("1 + 2*d^2") == 1 + 2 * D ** 2
    assert grammar.parse("-d^2") == -(D ** 2)
    assert grammar.parse("2 - 3 - 1") == const(-2)


def test_rational_literals():
    assert grammar.parse("1/2") == const(Fraction(1, 2))
    assert grammar.parse("-1/2*x") == Fraction(-1, 2) * X


def test_adjacency_requires_star():
    with pytest.raises(grammar.ParseError) as info:
        grammar.parse("d + 2x")
    assert info.value.column == 6


def test_error_positions():
    with pytest.raises(grammar.ParseError) as info:
        grammar.parse("d + ")
    assert info.value.column == 5
    with pytest.raises(grammar.ParseError):
        grammar.parse("d / 2")
    with pytest.raises(grammar.ParseError):
        grammar.parse("D + x")
    with pytest.raises(grammar.ParseError):
        grammar.parse("(d + x")
    with pytest.raises(grammar.ParseError):
        grammar.parse("d^x")
    with pytest.raises(grammar.ParseError):
        grammar.parse("1/0")


@settings(max_examples=80)
@given(polys())
def test_parse_after_print_is_identity(p):
    assert grammar.parse(str(p)) == p


@settings(max_examples=80)
@given(polys())
def test_print_after_parse_is_identity(p):
    text = str(p)
    assert str(grammar.parse(text)) == text


def test_canonical_strings_stay_canonical():
    for text in ("d^3 + 3/2*d^2*x - 3/2*d*x^2 - x^3",
                 "d + 2*x",
                 "-b*d + x*b - 2*s",
                 "0",
                 "d*x - 3*x^2"):
        parsed = grammar.parse(text)
        assert str(parsed) == str(grammar.parse(str(parsed)))
