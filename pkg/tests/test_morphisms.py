from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from latticealg.functionals import LocalFunctional, dirac, is_state
from latticealg.gibbs import Hamiltonian, gibbs_reference
from latticealg.lattice import fixture_a
from latticealg.morphisms import (
    MorphismFamily,
    dual,
    explicit_reference,
    lift,
    marginal,
    uniform_reference,
    verify_morphism_axioms,
)
from latticealg.observables import LocalObservable, indicator, restrict_to, sup_norm, unit
from latticealg.scalars import sign

import oracle
from oracle import high_precision

FAMILY = fixture_a()
U = FAMILY.universe
PAIRS = FAMILY.pairs()


def pair_couplings():
    m = ((0, 0), (0, 1))
    return Hamiltonian(U, (), {e: m for e in U.edges})


def test_marginal_examples():
    nu = uniform_reference(U)
    assert marginal(nu, [3]) == (Fraction(1, 2), Fraction(1, 2))
    assert marginal(nu, U.sites) == nu.weights
    assert marginal(nu, [0, 2]) == (Fraction(1, 4),) * 4


def test_lift_examples(uniform_a):
    f = indicator(U, [0], {1: 1})
    assert lift(f, [0, 1], uniform_a).table == (Fraction(1, 2),) * 4
    assert lift(f, [0], uniform_a) == f
    g = indicator(U, [0], {3: 1})
    assert lift(g, [0, 1, 2], uniform_a) == restrict_to(g, [0, 1, 2])
    with pytest.raises(ValueError):
        lift(indicator(U, [0, 1], {3: 1}), [0], uniform_a)


def test_dual_examples(uniform_a):
    # outside {0,1} is (2,3); x2=1, x3=0 has code 1
    mu = dirac(U, [0, 1], 1)
    d = dual(mu, [0], uniform_a)
    # outside {0} is (1,2,3): (0,1,0) -> 2 and (1,1,0) -> 3
    assert d.weights == (0, 0, Fraction(1, 2), Fraction(1, 2), 0, 0, 0, 0)
    assert dual(mu, [0, 1], uniform_a) == mu
    signed = LocalFunctional(U, U.interior, (Fraction(3, 2), Fraction(-1, 2)))
    image = dual(signed, [], uniform_a)
    assert any(w < 0 for w in image.weights) and not is_state(image)
    with pytest.raises(ValueError):
        dual(mu, [0, 1, 2], uniform_a)


def _references():
    yield "uniform", uniform_reference(U), oracle.uniform(4, 2)
    H = pair_couplings()
    for beta in ("1/2", "1", "2"):
        yield f"gibbs-{beta}", gibbs_reference(H, Fraction(beta)), None


def test_lift_matches_brute_force_conditional_expectation():
    """Every lift of every point indicator, against a direct conditional sum."""
    H = pair_couplings()
    energy = lambda x: H.energy(x)
    for name, nu, exact_oracle in _references():
        fam = MorphismFamily(nu)
        beta = nu.params.get("beta", 0)
        brute = exact_oracle or oracle.gibbs_numeric(4, 2, energy, beta)
        for s, t in PAIRS:
            n_out = 2 ** len(U.outside(s))
            for c in range(n_out):
                table = [1 if k == c else 0 for k in range(n_out)]
                got = lift(LocalObservable(U, s, tuple(table)), t, fam).table
                want = oracle.conditional_expectation(table, s, t, brute, 4, 2)
                if exact_oracle is not None:
                    assert list(got) == want, (name, s, t, c)
                else:
                    assert all(abs(high_precision(g) - w) < 1e-40 for g, w in zip(got, want)), (name, s, t, c)


def test_dual_matches_brute_force_extension():
    nu = explicit_reference(U, [Fraction(k + 1, 136) for k in range(16)])
    fam = MorphismFamily(nu)
    brute = {x: nu.weights[oracle.code(x, range(4), 2)] for x in oracle.window(4, 2)}
    for s, t in PAIRS:
        n = 2 ** len(U.outside(t))
        w = tuple(Fraction(k + 1, n * (n + 1) // 2) for k in range(n))
        got = dual(LocalFunctional(U, t, w), s, fam).weights
        assert list(got) == oracle.extend_state(w, s, t, brute, 4, 2)


@pytest.mark.parametrize("beta", ["0", "1/2", "1", "2", "4"])
def test_axioms_hold_for_gibbs_references(beta):
    fam = MorphismFamily(gibbs_reference(pair_couplings(), Fraction(beta)))
    report = verify_morphism_axioms(fam, FAMILY)
    assert report.ok, report.as_dict()


def test_axioms_hold_for_uniform_reference(uniform_a):
    assert verify_morphism_axioms(uniform_a, FAMILY).as_dict() == {
        "ok": True,
        "i": {"ok": True, "witness": None},
        "ii": {"ok": True, "witness": None},
        "iii": {"ok": True, "witness": None},
    }


class CorruptedFamily(MorphismFamily):
    """One kernel row rescaled so that it no longer sums to one."""

    def kernel(self, s, t):
        k = super().kernel(s, t)
        if frozenset(s) == frozenset() and frozenset(t) == frozenset([0]):
            return (k[0] * 2,) + k[1:]
        return k


def test_corrupted_kernel_is_caught():
    report = verify_morphism_axioms(CorruptedFamily(uniform_reference(U)), FAMILY)
    assert not report.composition.ok
    assert report.composition.witness["r"] == [] and report.composition.witness["s"] == [0]


def _random_table(draw, s):
    n = 2 ** len(U.outside(s))
    return tuple(draw(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=7), min_size=n, max_size=n)))


@settings(max_examples=40, deadline=None)
@given(st.data())
def test_duality_contraction_and_unit(data):
    fam = MorphismFamily(gibbs_reference(pair_couplings(), 1)) if data.draw(st.booleans()) else MorphismFamily(uniform_reference(U))
    s, t = data.draw(st.sampled_from(PAIRS))
    f = LocalObservable(U, s, _random_table(data.draw, s))
    n_t = 2 ** len(U.outside(t))
    raw = data.draw(st.lists(st.integers(0, 9), min_size=n_t, max_size=n_t).filter(any))
    mu = LocalFunctional(U, t, tuple(Fraction(r, sum(raw)) for r in raw))
    lifted = lift(f, t, fam)
    assert dual(mu, s, fam)(f) == mu(lifted)
    assert sign(sup_norm(f) - sup_norm(lifted)) >= 0
    assert lift(unit(U, s), t, fam) == unit(U, t)
    assert is_state(dual(mu, s, fam))


def test_reference_validation():
    with pytest.raises(ValueError):
        explicit_reference(U, [Fraction(1, 15)] * 15 + [Fraction(0)])
    with pytest.raises(ValueError):
        explicit_reference(U, [Fraction(1, 17)] * 16)
