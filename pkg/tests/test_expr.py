import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as hs

from bihom.errors import DivisionByZero, ExprSyntaxError, UnknownIdentifier
from bihom.expr import eval_expr, parse_scalar, print_scalar
from bihom.scalar import ZERO, Scalar, var

import strategies as st


def test_identifier():
    assert parse_scalar("c11_1", ["c11_1"]) == var("c11_1")


def test_quotient():
    assert parse_scalar("c21_1/b11", ["c21_1", "b11"]) == var("c21_1") / var("b11")


def test_binomial_cancels():
    assert parse_scalar("(a+b)^2 - a^2 - 2*a*b - b^2", ["a", "b"]).is_zero()


@pytest.mark.parametrize(
    "text, value",
    [
        ("1 - 2 - 3", -4),
        ("8 / 4 / 2", 1),
        ("-2^2", -4),
        ("2*3^2", 18),
        ("-(1/2)", Fraction(-1, 2)),
        ("3/6", Fraction(1, 2)),
        ("0.5", Fraction(1, 2)),
    ],
)
def test_precedence_and_associativity(text, value):
    assert parse_scalar(text) == Scalar.from_rational(Fraction(value))
    assert eval_expr(text, {}) == value


def test_print_examples():
    assert print_scalar(ZERO) == "0"
    assert print_scalar(Scalar.from_rational(Fraction(5, 6))) == "5/6"
    s = var("c21_1") / var("b11")
    text = print_scalar(s)
    assert text == "c21_1/b11"
    assert parse_scalar(text) == s


def test_syntax_error_carries_offset():
    with pytest.raises(ExprSyntaxError) as info:
        parse_scalar("a + * b", ["a", "b"])
    assert info.value.offset == 4


def test_unknown_identifier_named():
    with pytest.raises(UnknownIdentifier) as info:
        parse_scalar("a + zz", ["a"])
    assert info.value.name == "zz"


def test_literal_zero_denominator():
    with pytest.raises(DivisionByZero):
        parse_scalar("a/0", ["a"])


def test_empty_text():
    with pytest.raises(ExprSyntaxError):
        parse_scalar("")


def test_round_trip_random():
    rng = random.Random(5)
    for _ in range(200):
        s = st.random_scalar(rng)
        t = parse_scalar(print_scalar(s), st.VARS)
        assert t.num.terms == s.num.terms and t.den.terms == s.den.terms


def test_eval_agrees_with_symbolic():
    rng = random.Random(8)
    for _ in range(100):
        s = st.random_scalar(rng)
        p = st.random_point(rng)
        try:
            expected = s.evaluate(p)
        except ZeroDivisionError:
            continue
        assert eval_expr(print_scalar(s), p) == expected


@given(hs.integers(-50, 50), hs.integers(1, 50))
def test_rational_literals_round_trip(p, q):
    s = Scalar.from_rational(Fraction(p, q))
    assert parse_scalar(print_scalar(s)) == s
