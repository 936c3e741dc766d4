from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from latticealg.functionals import (
    LocalFunctional,
    dirac,
    is_state,
    positive_and_normalised,
    state,
    total_variation,
    unit_norm_at_unit,
    uniform_state,
)
from latticealg.lattice import Configuration, fixture_a
from latticealg.observables import indicator, unit

U = fixture_a().universe
TOP = U.interior


def test_state_examples():
    assert is_state(dirac(U, [0], 5))
    signed = LocalFunctional(U, TOP, (Fraction(3, 2), Fraction(-1, 2)))
    assert signed(unit(U, TOP)) == 1 and total_variation(signed) == 2
    assert not is_state(signed)
    assert is_state(uniform_state(U, [0, 1]))
    with pytest.raises(ValueError):
        state(U, TOP, (Fraction(3, 2), Fraction(-1, 2)))


def test_dirac_pairings():
    x = Configuration.from_values((1, 2, 3), (1, 1, 0), 2)
    d = dirac(U, [0], x)
    assert d(unit(U, [0])) == 1
    assert d(indicator(U, [0], {1: 1})) == 1
    assert d(indicator(U, [0], {3: 1})) == 0
    with pytest.raises(ValueError):
        dirac(U, [0], Configuration.from_values((2, 3), (1, 0), 2))
    with pytest.raises(ValueError):
        dirac(U, [0], 8)


def test_pairing_needs_a_common_system():
    with pytest.raises(ValueError):
        uniform_state(U, [0])(unit(U, [0, 1]))


weights = st.lists(st.fractions(min_value=-2, max_value=2, max_denominator=6), min_size=4, max_size=4)


@given(weights)
def test_two_characterisations_agree(ws):
    phi = LocalFunctional(U, frozenset([0, 1]), tuple(ws))
    assert positive_and_normalised(phi) == unit_norm_at_unit(phi)


@given(st.lists(st.integers(0, 5), min_size=4, max_size=4).filter(any))
def test_normalised_nonnegative_weights_are_states(ws):
    phi = LocalFunctional(U, frozenset([0, 1]), tuple(Fraction(w, sum(ws)) for w in ws))
    assert is_state(phi)
