"""
Conditional-expectation morphisms and consistent threads
=========================================================

Fixture A: four sites 0-1-2-3 in a path, two states per site, site 3 is the
boundary core.  Regions are the empty system, {0}, {0,1} and the interior.
"""
from fractions import Fraction

from latticealg import (
    Hamiltonian,
    LocalFunctional,
    MorphismFamily,
    fixture_a,
    gibbs_reference,
    lift,
    point_indicator,
    thread_from_top,
    uniform_reference,
    verify_morphism_axioms,
    verify_thread,
)
from latticealg.scalars import fmt, to_float

family = fixture_a()
u = family.universe
print("regions:", [sorted(r) for r in family])

# On the empty system an observable sees every site.  Code 1 is the
# configuration x0=1 with all other sites empty.  Lifting it to the interior
# averages sites 0..2 out, given the boundary site 3.
f = point_indicator(u, [], 1)
for name, nu in [("uniform", uniform_reference(u)), ("gibbs", gibbs_reference(Hamiltonian.lattice_gas(u), 1))]:
    fam = MorphismFamily(nu)
    lifted = lift(f, family.top, fam)
    print(name, "lift of [x0=1] to Out(T):", [fmt(v) for v in lifted.table])
    print(name, "axioms hold:", verify_morphism_axioms(fam, family).ok)

# A thread is a compatible family of states, one per region.
fam = MorphismFamily(gibbs_reference(Hamiltonian.lattice_gas(u), 1))
top = LocalFunctional(u, family.top, (Fraction(1, 3), Fraction(2, 3)))
th = thread_from_top(top, fam, family)
for r in family:
    print(sorted(r), [round(to_float(w), 4) for w in th[r].weights])
print("thread verified:", verify_thread(th, fam).ok)
