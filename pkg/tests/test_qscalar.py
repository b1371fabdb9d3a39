import pytest
from flint import fmpq
from hypothesis import given, settings, strategies as st

from qcasimir.qscalar import (LaurentPoly, QContext, ScalarSyntaxError, as_rational,
                              eval_at, parse_rational, parse_scalar, q_int)

rationals = st.builds(fmpq, st.integers(-30, 30), st.integers(1, 12))
polys = st.dictionaries(st.integers(-8, 8), rationals, max_size=5).map(LaurentPoly)
nonzero_q = rationals.filter(lambda x: x != 0)


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == LaurentPoly()
    assert a * 1 == a


@given(polys, polys, nonzero_q)
def test_evaluation_is_a_homomorphism(a, b, x):
    assert (a + b)(x) == a(x) + b(x)
    assert (a * b)(x) == a(x) * b(x)


@given(polys)
def test_print_parse_round_trip(a):
    assert parse_scalar(str(a)) == a


@given(polys, polys.filter(lambda p: not p.is_zero()))
def test_exact_div_inverts_multiplication(a, b):
    assert (a * b).exact_div(b) == a


def test_exact_div_rejects_remainder():
    one_plus_q = LaurentPoly({0: 1, 1: 1})
    with pytest.raises(ArithmeticError):
        LaurentPoly({0: 1}).exact_div(one_plus_q)


def test_q_integers():
    assert q_int(3) == LaurentPoly({2: 1, 0: 1, -2: 1})
    assert q_int(0).is_zero()
    assert q_int(-2) == -q_int(2)
    assert q_int(2)(fmpq(2)) == fmpq(5, 2)


def test_nu_and_monomials():
    nu = LaurentPoly.nu()
    assert nu * q_int(2) == LaurentPoly.monomial(2) - LaurentPoly.monomial(-2)
    assert LaurentPoly.monomial(-3).inverse_monomial() == LaurentPoly.monomial(3)
    with pytest.raises(ZeroDivisionError):
        nu.inverse_monomial()


@pytest.mark.parametrize("text,value", [
    ("q - q^-1", LaurentPoly.nu()),
    ("(q^2 - 1)/q", LaurentPoly.nu()),
    ("2*q^-1 + 3", LaurentPoly({-1: 2, 0: 3})),
    ("-(q)^2", LaurentPoly({2: -1})),
    ("3/6", LaurentPoly({0: fmpq(1, 2)})),
])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("bad", ["", "q^", "2 +", "(q", "x", "q^q", "1/0", "1/(q + 1)"])
def test_parse_errors_are_reported(bad):
    with pytest.raises((ScalarSyntaxError, ZeroDivisionError, ArithmeticError)):
        parse_scalar(bad)


def test_rational_parsing_and_conversion():
    assert parse_rational("7/5") == fmpq(7, 5)
    assert parse_rational("-3") == fmpq(-3)
    assert as_rational(fmpq(1, 3)) == fmpq(1, 3)
    from fractions import Fraction
    assert as_rational(Fraction(13, 7)) == fmpq(13, 7)


@pytest.mark.parametrize("bad", [0, 1, -1])
def test_context_rejects_special_q(bad):
    with pytest.raises(ValueError):
        QContext(fmpq(bad))


def test_context_values():
    ctx = QContext(fmpq(2))
    assert ctx.nu == fmpq(3, 2)
    assert ctx.qint(3) == fmpq(21, 4)
    assert eval_at(LaurentPoly.q() + 1, ctx) == 3
    assert QContext.parse("13/7").q == fmpq(13, 7)
    with pytest.raises(ValueError):
        QContext.parse("q")
