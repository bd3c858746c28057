"""The plain-text polynomial syntax."""

from fractions import Fraction

import pytest

from ecomu3.polyparse import ParseError, parse_polynomial, parse_tensor

F = Fraction


def test_basic():
    assert parse_polynomial("x1 + x2 + x3") == {
        (1, 0, 0): F(1), (0, 1, 0): F(1), (0, 0, 1): F(1)}
    assert parse_polynomial("x1^2 - x2*x3") == {
        (2, 0, 0): F(1), (0, 1, 1): F(-1)}
    assert parse_polynomial("2*x1 - 1/3") == {
        (1, 0, 0): F(2), (0, 0, 0): F(-1, 3)}


def test_tensor():
    t = parse_tensor("x1*x2 * y2*y3")
    assert t == {((1, 1, 0), (0, 1, 1)): F(1)}
    t = parse_tensor("x1^2*x2 * y3^2*y2 - 3 * x1 * y1")
    assert t[((2, 1, 0), (0, 1, 2))] == F(1)
    assert t[((1, 0, 0), (1, 0, 0))] == F(-3)


def test_parentheses_and_signs():
    t = parse_polynomial("(x1 + x2)^2 - -x3")
    assert t[(2, 0, 0)] == F(1) and t[(1, 1, 0)] == F(2)
    assert t[(0, 0, 1)] == F(1)


def test_cancellation():
    assert parse_polynomial("x1 - x1") == {}


def test_errors():
    with pytest.raises(ParseError):
        parse_polynomial("x9")
    with pytest.raises(ParseError):
        parse_polynomial("x1 +")
    with pytest.raises(ParseError):
        parse_polynomial("(x1")
    with pytest.raises(ParseError):
        parse_polynomial("x1 y1")  # juxtaposition needs *
    with pytest.raises(ParseError):
        parse_polynomial("y1")     # y not allowed in plain polynomials
