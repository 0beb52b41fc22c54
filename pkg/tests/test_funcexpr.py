"""Parsing and evaluation of scalar function expressions in the variable t."""
import math

import pytest

from opmeans import DomainError, UsageError, parse_function


def test_basic_expressions():
    assert parse_function("t^2")(3.0) == 9.0
    assert parse_function("sqrt(t)")(4.0) == 2.0
    assert parse_function("2*t/(1+t)")(3.0) == pytest.approx(1.5)
    f = parse_function("(exp(t)-1)/(exp(1)-1)")
    assert f(1.0) == pytest.approx(1.0, rel=1e-15)
    assert f(0.0) == pytest.approx(0.0, abs=1e-15)


def test_precedence_and_associativity():
    assert parse_function("2+3*4")(0.0) == 14.0
    assert parse_function("2*3^2")(0.0) == 18.0
    assert parse_function("2^3^2")(0.0) == 512.0     # right-associative
    assert parse_function("-t^2")(2.0) == -4.0       # unary binds looser
    assert parse_function("(-t)^2")(2.0) == 4.0
    assert parse_function("2^-1")(0.0) == 0.5
    assert parse_function("6/3/2")(0.0) == 1.0       # left-associative
    assert parse_function("1-2-3")(0.0) == -4.0


def test_constants_and_whitespace():
    assert parse_function("e")(0.0) == math.e
    assert parse_function("pi")(0.0) == math.pi
    assert parse_function("  t +  1 ")(2.0) == 3.0
    assert parse_function("0.5*(t^0.25 + t^0.75)")(1.0) == 1.0


def test_number_formats():
    assert parse_function("1e-3")(0.0) == 1e-3
    assert parse_function("2.5E2")(0.0) == 250.0
    assert parse_function(".5")(0.0) == 0.5


def test_source_is_kept():
    f = parse_function("t^0.3")
    assert f.source == "t^0.3"


def test_parse_errors_carry_position():
    for bad in ("t +", "2 *", "(t", "t)", "", "   ", "t @ 2", "foo(t)",
                "sqrt", "sqrt 2", "1 2", "t t"):
        with pytest.raises(UsageError):
            parse_function(bad)
    with pytest.raises(UsageError, match="position"):
        parse_function("t + $")
    with pytest.raises(UsageError, match="position"):
        parse_function("t + (t")


def test_unknown_name_rejected_at_parse_time():
    with pytest.raises(UsageError, match="x"):
        parse_function("x + 1")
    with pytest.raises(UsageError):
        parse_function("sin(t)")


def test_domain_errors_at_evaluation():
    with pytest.raises(DomainError):
        parse_function("log(t)")(-1.0)
    with pytest.raises(DomainError):
        parse_function("sqrt(t)")(-4.0)
    with pytest.raises(DomainError):
        parse_function("1/t")(0.0)
    with pytest.raises(DomainError):
        parse_function("exp(t)")(1e6)          # overflow surfaces as domain
    with pytest.raises(DomainError):
        parse_function("t^t")(-0.5)            # complex result rejected


def test_evaluation_is_plain_float():
    v = parse_function("t^2 + 1")(1.5)
    assert isinstance(v, float)
    assert v == 3.25
