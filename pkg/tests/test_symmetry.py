from fractions import Fraction
from itertools import product

import pytest

from latticealg.functionals import LocalFunctional, dirac, is_state, uniform_state
from latticealg.geometry import StatePolytope, full_simplex, membership
from latticealg.gibbs import Hamiltonian, gibbs_reference
from latticealg.lattice import Configuration, fixture_a, fixture_b
from latticealg.morphisms import MorphismFamily, dual, lift, uniform_reference
from latticealg.observables import LocalObservable, indicator, sup_norm, unit
from latticealg.symmetry import (
    LatticeSymmetry,
    SymmetryGroup,
    act_configuration,
    act_observable,
    act_state,
    act_state_vector,
    breakdown_report,
    invariant_states,
)

A = fixture_a()
UA = A.universe
B = fixture_b()
UB = B.universe
H = Fraction(1, 2)


def s3():
    r = LatticeSymmetry(UA, (1, 2, 0, 3), (0, 1))
    t = LatticeSymmetry.site_swap(UA, 0, 1)
    return SymmetryGroup([r, t])


def groups():
    flip = LatticeSymmetry.state_flip(UA)
    yield "flip", SymmetryGroup([flip])
    yield "s3", s3()
    yield "s3xflip", SymmetryGroup(list(s3().generators) + [flip])
    yield "swap", SymmetryGroup([LatticeSymmetry.site_swap(UB, 3, 4)])


def test_group_closure():
    sizes = {name: len(G) for name, G in groups()}
    assert sizes == {"flip": 2, "s3": 6, "s3xflip": 12, "swap": 2}
    G = s3()
    for a in G:
        assert a.inverse() in G
        for b in G:
            assert a * b in G
    assert LatticeSymmetry.identity(UA) in G


def test_symmetries_must_keep_the_core():
    with pytest.raises(ValueError):
        LatticeSymmetry.site_swap(UA, 2, 3)
    with pytest.raises(ValueError):
        LatticeSymmetry(UA, (0, 1, 2, 3), (0, 0))


def test_action_examples():
    flip = LatticeSymmetry.state_flip(UA)
    ident = LatticeSymmetry.identity(UA)
    f = indicator(UA, [0], {1: 1})
    assert act_observable(ident, f) == f
    assert act_observable(flip, f) == indicator(UA, [0], {1: 0})
    assert act_observable(flip, unit(UA, [0])) == unit(UA, [0])
    top = UA.interior
    assert act_state(ident, dirac(UA, top, 1)) == dirac(UA, top, 1)
    assert act_state(flip, dirac(UA, [], 0)) == dirac(UA, [], 15)
    assert act_state(flip, uniform_state(UA, [0])) == uniform_state(UA, [0])


def test_configuration_action_matches_definition():
    r = LatticeSymmetry(UA, (1, 2, 0, 3), (1, 0))
    for vals in product((0, 1), repeat=4):
        x = Configuration.from_values(UA.sites, vals, 2)
        y = act_configuration(r, x)
        assert all(y[r.site_perm[i]] == r.state_perm[vals[i]] for i in range(4))


def _functionals(u, system):
    n = u.size(u.outside(system))
    yield tuple(Fraction(k + 1, n * (n + 1) // 2) for k in range(n))
    yield tuple(Fraction(1 if k == n - 1 else 0) for k in range(n))


def _observables(u, system):
    n = u.size(u.outside(system))
    yield tuple(Fraction(k * k - 3, 7) for k in range(n))
    yield tuple(1 if k % 3 == 0 else 0 for k in range(n))


def test_group_action_contracts_exhaustively():
    for name, G in groups():
        u = G.universe
        systems = [frozenset(), u.interior] + [frozenset([i]) for i in sorted(u.interior)]
        for a in G:
            for system in systems:
                for w in _functionals(u, system):
                    mu = LocalFunctional(u, a.image(system), w)
                    assert is_state(act_state(a, mu))
                    for b in G:
                        lhs = act_state(b * a, LocalFunctional(u, (b * a).image(system), w))
                        rhs = act_state(b, act_state(a, LocalFunctional(u, (b * a).image(system), w)))
                        assert lhs == rhs, name
                    for t in _observables(u, system):
                        f = LocalObservable(u, system, t)
                        g = act_observable(a, f)
                        assert sup_norm(g) == sup_norm(f)
                        assert act_state(a, mu)(f) == mu(g), name


def test_action_commutes_with_dual_maps():
    flip = LatticeSymmetry.state_flip(UA)
    fam = MorphismFamily(uniform_reference(UA))
    for s, t in A.pairs():
        n = UA.size(UA.outside(t))
        for k in range(n):
            mu = dirac(UA, t, k)
            assert act_state(flip, dual(mu, s, fam)) == dual(act_state(flip, mu), s, fam)
        for k in range(UA.size(UA.outside(s))):
            f = LocalObservable(UA, s, tuple(1 if c == k else 0 for c in range(UA.size(UA.outside(s)))))
            assert act_observable(flip, lift(f, t, fam)) == lift(act_observable(flip, f), t, fam)


def test_invariant_state_examples():
    fam_a = MorphismFamily(uniform_reference(UA))
    K = full_simplex(2)
    assert invariant_states(SymmetryGroup([], UA), K, fam_a) == K
    flip = invariant_states(SymmetryGroup([LatticeSymmetry.state_flip(UA)]), K, fam_a)
    assert flip.vertices == ((H, H),)
    fam_b = MorphismFamily(uniform_reference(UB))
    swap = invariant_states(SymmetryGroup([LatticeSymmetry.site_swap(UB, 3, 4)]), full_simplex(4), fam_b)
    assert swap.vertices == ((1, 0, 0, 0), (0, H, H, 0), (0, 0, 0, 1))


def test_invariant_polytope_is_the_fixed_point_set():
    fam_b = MorphismFamily(uniform_reference(UB))
    G = SymmetryGroup([LatticeSymmetry.site_swap(UB, 3, 4)])
    K = full_simplex(4)
    inv = invariant_states(G, K, fam_b)
    grid = [Fraction(k, 4) for k in range(5)]
    for w in product(grid, repeat=4):
        if sum(w) != 1:
            continue
        fixed = all(act_state_vector(a, w) == w for a in G)
        assert membership(w, inv) == (membership(w, K) and fixed)


def test_non_invariant_reference_is_rejected():
    gas = Hamiltonian.lattice_gas(UA)
    fam = MorphismFamily(gibbs_reference(gas, 1))
    with pytest.raises(ValueError):
        invariant_states(SymmetryGroup([LatticeSymmetry.state_flip(UA)]), full_simplex(2), fam)


def test_breakdown_examples():
    K2 = StatePolytope([(1, 0), (0, 1)])
    rep = breakdown_report(StatePolytope([(H, H)]), K2)
    assert rep.broken and rep.entries[0].decomposition.weights == (H, H)
    same = breakdown_report(K2, K2)
    assert not same.broken and all(e.verdict == "persists" for e in same.entries)
    fam_b = MorphismFamily(uniform_reference(UB))
    full = full_simplex(4)
    K1 = invariant_states(SymmetryGroup([LatticeSymmetry.site_swap(UB, 3, 4)]), full, fam_b)
    rep = breakdown_report(K1, full)
    assert [e.verdict for e in rep.entries] == ["persists", "breaks", "persists"]
    assert rep.entries[1].decomposition.weights == (0, H, H, 0)
    with pytest.raises(ValueError):
        breakdown_report(full, K1)
