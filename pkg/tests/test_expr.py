from fractions import Fraction

import pytest
from conftest import rational_functions
from hypothesis import given

from leonard.errors import ParseError
from leonard.expr import parse_scalar
from leonard.qfield import qpow, rf

q = qpow(1)


@pytest.mark.parametrize("text, want", [
    ("3", rf(3)),
    ("-2/3", rf(Fraction(-2, 3))),
    (" 7 ", rf(7)),
    ("q", q),
    ("q^2 - 1/q", q * q - 1 / q),
    ("q**3", q ** 3),
    ("q^-2", qpow(-2)),
    ("q^(-2)", qpow(-2)),
    ("(q+1)^-2", (q + 1) ** -2),
    ("2q", 2 * q),
    ("3(q-1)", 3 * (q - 1)),
    ("-(q+1)*(q-1)", 1 - q * q),
    ("2^3/4", rf(2)),
    ("1/2/3", rf(Fraction(1, 6))),
])
def test_grammar(text, want):
    assert parse_scalar(text) == want


@pytest.mark.parametrize("text", ["", "3 4", "q^", "(q+1", "q)", "1/0", "1/(q-q)", "x", "2.5",
                                  "q^q", "*3"])
def test_rejects(text):
    with pytest.raises(ParseError):
        parse_scalar(text)


def test_non_strings_pass_through():
    assert parse_scalar(Fraction(1, 3)) == rf(Fraction(1, 3))
    assert parse_scalar(5) == rf(5)


@given(rational_functions())
def test_printed_form_reparses(f):
    assert parse_scalar(str(f)) == f
