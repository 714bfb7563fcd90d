from fractions import Fraction

import pytest

from calabi.errors import DimensionError, DslSyntaxError, UnknownIdentifierError
from calabi.jets import evaluate, parse
from calabi.jets.expr import BinOp, Call, Const, Neg, Pow, Var


def test_paraboloid_text_infers_dimension():
    spec = parse("0.5*(x1^2+x2^2)")

    assert spec.dim == 2
    assert evaluate(spec, [3.0, 4.0]) == pytest.approx(12.5)


def test_q_surface_text():
    spec = parse("-ln(x1)+0.5*x2^2")

    assert spec.dim == 2
    assert isinstance(spec.expr, BinOp)
    assert spec.expr.left == Neg(Call("ln", Var(1)))
    assert evaluate(spec, [1.0, 2.0]) == pytest.approx(2.0)


def test_unclosed_call_reports_offset():
    with pytest.raises(DslSyntaxError) as excinfo:
        parse("ln(")

    assert excinfo.value.position == 3


@pytest.mark.parametrize(
    "text, position",
    [
        ("x1 +", 4),
        ("x1 ^ 1.5", 5),
        ("(x1", 3),
        ("x1 $ x2", 3),
        ("x0 + x1", 0),
        ("x1 x2", 3),
    ],
)
def test_syntax_errors_carry_position(text, position):
    with pytest.raises(DslSyntaxError) as excinfo:
        parse(text)

    assert excinfo.value.position == position


def test_unknown_identifier():
    with pytest.raises(UnknownIdentifierError) as excinfo:
        parse("sin(x1)")

    assert excinfo.value.name == "sin"
    assert excinfo.value.position == 0


def test_constant_only_text_needs_dimension():
    with pytest.raises(DimensionError):
        parse("1+2")

    assert parse("1+2", dim=3).dim == 3


def test_explicit_dimension_must_cover_variables():
    with pytest.raises(DimensionError):
        parse("x3^2", dim=2)


def test_constant_quotients_are_exact_rationals():
    spec = parse("1/3*x1^2")

    assert spec.expr == BinOp("*", Const(Fraction(1, 3)), Pow(Var(1), 2))


def test_negative_constant_folds_and_exponent_sign():
    spec = parse("-2*x1^-2")

    assert spec.expr == BinOp("*", Const(Fraction(-2)), Pow(Var(1), -2))
    assert evaluate(spec, [2.0]) == pytest.approx(-0.5)


def test_whitespace_is_insignificant():
    assert parse(" exp ( x1 )  +  x2 ^ 2 ").expr == parse("exp(x1)+x2^2").expr


def test_text_round_trip_preserves_values():
    original = parse("-1/2*ln(x1^2-x2^2-x3^2)+x1*(x2-x3)/5")
    again = parse(original.text, dim=original.dim)

    point = [2.0, 0.5, 0.25]
    assert evaluate(again, point) == pytest.approx(evaluate(original, point), rel=1e-15)


def test_unary_minus_binds_looser_than_power():
    spec = parse("-x1^2")

    assert spec.expr == Neg(Pow(Var(1), 2))
    assert evaluate(spec, [3.0]) == pytest.approx(-9.0)
    assert evaluate(parse("(-x1)^2"), [3.0]) == pytest.approx(9.0)
    assert evaluate(parse("-2^2", dim=1), [0.0]) == pytest.approx(-4.0)
    assert evaluate(parse("x1*-x2"), [2.0, 3.0]) == pytest.approx(-6.0)


@pytest.mark.parametrize(
    "text, point",
    [
        ("-x1^2", [3.0]),
        ("-(x1^2)+x2^2", [3.0, 1.0]),
        ("(-x1)^3-x2", [2.0, 1.0]),
        ("-(x1+x2)*x1", [1.5, 0.5]),
        ("x1--x2^2", [1.0, 2.0]),
    ],
)
def test_negated_terms_survive_printing(text, point):
    original = parse(text)
    again = parse(original.text, dim=original.dim)

    assert again.expr == original.expr
    assert evaluate(again, point) == pytest.approx(evaluate(original, point), rel=1e-15)
