import pytest
from hypothesis import given

from algebroids.literal import LiteralSyntaxError, UnknownVariableError, parse_scalar
from algebroids.scalar import Scalar, to_literal

from strategies import exp_polynomials, fractions_of_polys

x = Scalar.var("x")


@pytest.mark.parametrize(
    "text, expected",
    [
        ("3", Scalar.const(3)),
        ("-1/2", Scalar.const(-1) / 2),
        ("x^2 + 2*x + 1", (x + 1) ** 2),
        ("(x+1)*(x-1)", x * x - 1),
        ("  x   *  x ", x * x),
        ("exp(-2*t)", Scalar.exp(-2)),
        ("exp(3*t) * exp(-3*t)", Scalar.one()),
        ("-1*x", -x),
        ("−1*x", -x),
        ("1/x", x.inverse()),
    ],
)
def test_parse(text, expected):
    assert parse_scalar(text) == expected


@pytest.mark.parametrize("bad", ["exp(x*t)", "exp(t*2)", "x^", "(x+1", "x**", "2x", "x^y", "@", ""])
def test_syntax_errors(bad):
    with pytest.raises(LiteralSyntaxError):
        parse_scalar(bad)


def test_error_carries_position():
    with pytest.raises(LiteralSyntaxError) as exc:
        parse_scalar("x + exp(x*t)", line=4, column=10)
    assert exc.value.line == 4
    assert exc.value.column > 10


def test_unknown_variable():
    with pytest.raises(UnknownVariableError):
        parse_scalar("x + z", variables=("x", "y"))


def test_division_by_zero_literal():
    with pytest.raises((LiteralSyntaxError, ZeroDivisionError)):
        parse_scalar("1/0")


@given(fractions_of_polys())
def test_round_trip_rational_functions(a):
    assert parse_scalar(to_literal(a)) == a


@given(exp_polynomials())
def test_round_trip_exp_polynomials(a):
    assert parse_scalar(to_literal(a)) == a
