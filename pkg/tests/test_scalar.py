import math
from fractions import Fraction

import pytest
from hypothesis import given

from symplabic.errors import ConstantNotSquare, DivisionByZero, ParseError, UnboundVariable
from symplabic.scalar import (
    ONE,
    SQRT2,
    Scalar,
    derive,
    eval as eval_expr,
    eval_float,
    format_scalar,
    grad_many,
    parse_scalar,
    probably_equal,
    sign,
    try_sqrt,
    var,
)

from conftest import scalars


def test_sqrt2_squares_to_two():
    assert SQRT2 * SQRT2 == Scalar(2)


def test_literal_examples():
    assert parse_scalar("1/2 + 3/4 r2") == Scalar(Fraction(1, 2), Fraction(3, 4))
    assert parse_scalar("-1/2") == Scalar(Fraction(-1, 2))
    assert parse_scalar("3 r2") == Scalar(0, 3)
    assert parse_scalar("1/2 - 3/4 r2") == Scalar(Fraction(1, 2), Fraction(-3, 4))
    assert format_scalar(Scalar(Fraction(1, 2), Fraction(-3, 4))) == "1/2 - 3/4 r2"
    assert format_scalar(Scalar(5)) == "5"


@pytest.mark.parametrize("text", ["", "abc", "1/0", "1/2 3/4 r2", "r3"])
def test_bad_literals(text):
    with pytest.raises(ParseError):
        parse_scalar(text)


@given(scalars())
def test_format_parse_roundtrip(s):
    assert parse_scalar(format_scalar(s)) == s


@given(scalars(), scalars(), scalars())
def test_field_laws(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert x * (y + z) == x * y + x * z
    assert x * y == y * x
    assert x - x == Scalar(0)


@given(scalars(nonzero=True))
def test_inverse(x):
    assert x * (1 / x) == ONE
    assert x.norm() == (x * x.conjugate()).a


@given(scalars(), scalars())
def test_order_agrees_with_floats(x, y):
    if abs(float(x) - float(y)) > 1e-9:
        assert (x < y) == (float(x) < float(y))
    assert sign(x) == (0 if not x else (1 if float(x) > 0 else -1))


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        ONE / Scalar(0)
    with pytest.raises(ZeroDivisionError):
        Scalar(0).inverse()


def test_square_roots():
    assert Scalar(Fraction(1, 2)).sqrt() == SQRT2 / 2
    assert Scalar(3, 2).sqrt() == 1 + SQRT2  # (1 + r2)^2 = 3 + 2 r2
    assert try_sqrt(Scalar(3)) is None
    with pytest.raises(ConstantNotSquare):
        Scalar(3).sqrt()


@given(scalars())
def test_square_root_of_square(x):
    r = (x * x).sqrt()
    assert r * r == x * x
    assert r >= 0


def test_expr_evaluation_and_identity():
    a, b = var("a"), var("b")
    e = (a + b) * (a - b)
    assert probably_equal(e, a * a - b * b)
    assert not probably_equal(e, a * a + b * b)
    assert eval_expr(e, {"a": Scalar(3), "b": SQRT2}) == Scalar(7)
    with pytest.raises(UnboundVariable):
        eval_expr(e, {"a": ONE})


def test_gradient_matches_closed_form():
    # d/da of a^2 b / (1 + a) = b (a^2 + 2a) / (1 + a)^2
    a, b = var("a"), var("b")
    e = a * a * b / (1 + a)
    env = {"a": Scalar(Fraction(3, 2)), "b": Scalar(2, 1)}
    (value,), (g,) = grad_many([e], ["a", "b"], env)
    av, bv = env["a"], env["b"]
    assert value == av * av * bv / (1 + av)
    assert g[0] == bv * (av * av + 2 * av) / ((1 + av) ** 2)
    assert g[1] == av * av / (1 + av)
    assert derive(e, "b", env) == g[1]


def test_gradient_against_finite_differences():
    a, b = var("a"), var("b")
    e = (a * b + 3) / (a - b * b)
    env = {"a": Scalar(5), "b": Scalar(Fraction(1, 3))}
    (_v,), (g,) = grad_many([e], ["a", "b"], env)
    h = 1e-6
    f = lambda x, y: eval_float(e, {"a": x, "b": y})
    da = (f(5 + h, 1 / 3) - f(5 - h, 1 / 3)) / (2 * h)
    db = (f(5, 1 / 3 + h) - f(5, 1 / 3 - h)) / (2 * h)
    assert math.isclose(float(g[0]), da, rel_tol=1e-6)
    assert math.isclose(float(g[1]), db, rel_tol=1e-6)
