from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from latticealg.scalars import boltzmann_field, exact, fmt, numerator_denominator, parse_rational, sabs, sign, smax, smin

from oracle import high_precision

rationals = st.fractions(min_value=-100, max_value=100, max_denominator=50)


def test_parse_rational_accepts_exact_forms():
    assert parse_rational("3/6") == Fraction(1, 2)
    assert parse_rational("-7") == Fraction(-7)
    assert parse_rational(4) == Fraction(4)


@pytest.mark.parametrize("bad", ["0.5", "1e3", "abc", "1/0"])
def test_parse_rational_rejects_inexact_text(bad):
    with pytest.raises(ValueError):
        parse_rational(bad)


def test_exact_canonicalises_constants_of_the_field():
    K, z = boltzmann_field(1)
    assert exact(K(3) / K(6)) == Fraction(1, 2)
    assert isinstance(exact(K(3) / K(6)), Fraction)
    assert exact(z) is not None and not isinstance(exact(z), Fraction)


@given(rationals)
def test_sign_agrees_with_fraction_order(x):
    assert sign(x) == (x > 0) - (x < 0)


@given(st.lists(st.integers(-6, 6), min_size=1, max_size=5), st.lists(st.integers(-6, 6), min_size=1, max_size=5))
def test_sign_of_field_elements_matches_high_precision(num, den):
    K, z = boltzmann_field(2)
    p = sum((c * z**k for k, c in enumerate(num)), K.zero)
    d = sum((c * z**k for k, c in enumerate(den)), K.zero)
    if d == 0:
        return
    x = p / d
    v = high_precision(x) if x != 0 else mpmath.mpf(0)
    expected = 0 if x == 0 else (1 if v > 0 else -1)
    assert sign(x) == expected


def test_sign_separates_nearby_values():
    # 1 - 3z + 3z^2 - z^3 = (1 - z)^3 is tiny but positive for z = exp(-1/50)
    K, z = boltzmann_field(50)
    assert sign((1 - z) ** 3) == 1
    assert sign(z**2 - z) == -1


@given(rationals, rationals)
def test_lattice_helpers(a, b):
    assert smax(a, b) == max(a, b)
    assert smin(a, b) == min(a, b)
    assert sabs(a) == abs(a)


def test_text_forms():
    assert fmt(Fraction(-3, 4)) == "-3/4"
    assert numerator_denominator(Fraction(6, 4)) == ("3", "2")
    K, z = boltzmann_field(1)
    assert fmt(z) == "exp(-1)"
