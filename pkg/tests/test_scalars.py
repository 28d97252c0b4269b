from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from contact_fmethod.scalars import I, ONE, ZERO, GaussScalar, gen_binomial, parse_scalar

fracs = st.builds(Fraction, st.integers(-99, 99), st.integers(1, 50))
scalars = st.builds(GaussScalar, fracs, fracs)
nonzero = scalars.filter(bool)


@given(scalars, scalars, scalars)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == ZERO


@given(scalars, nonzero)
def test_division_inverts(a, b):
    assert (a / b) * b == a


@given(scalars)
def test_conjugate_norm_is_real(a):
    assert (a * a.conjugate()).is_real()


@given(scalars)
def test_str_parse_roundtrip(a):
    assert parse_scalar(str(a)) == a


def test_i_squared():
    assert I * I == -ONE


def test_mixed_arithmetic():
    assert 2 + GaussScalar(1, 1) == GaussScalar(3, 1)
    assert Fraction(1, 2) * I == GaussScalar(0, Fraction(1, 2))
    assert GaussScalar(3) == 3


@pytest.mark.parametrize("text,value", [
    ("3/2", GaussScalar(Fraction(3, 2))),
    ("-1/2*i", GaussScalar(0, Fraction(-1, 2))),
    ("1/3+2/5*i", GaussScalar(Fraction(1, 3), Fraction(2, 5))),
    ("0.25-i", GaussScalar(Fraction(1, 4), -1)),
])
def test_parse(text, value):
    assert parse_scalar(text) == value


@pytest.mark.parametrize("bad", ["", "1/0", "x", "1//2"])
def test_parse_rejects(bad):
    with pytest.raises((ValueError, ZeroDivisionError)):
        parse_scalar(bad)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        ONE / ZERO


@pytest.mark.parametrize("t,k,value", [(Fraction(1, 2), 1, Fraction(1, 2)),
                                       (Fraction(3, 2), 2, Fraction(3, 8)),
                                       (5, 2, 10), (7, 0, 1), (2, 5, 0)])
def test_gen_binomial(t, k, value):
    assert gen_binomial(t, k) == value


@given(fracs, st.integers(0, 6))
def test_gen_binomial_pascal(t, k):
    assert gen_binomial(t + 1, k + 1) == gen_binomial(t, k + 1) + gen_binomial(t, k)
