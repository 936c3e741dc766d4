"""
Gibbs references and the DLR check
==================================

Nearest-neighbour lattice gas on the Fixture A path.  The thread built from
the Gibbs reference is consistent with its own morphisms at every beta; the
same boundary marginals fail against uniform morphisms unless beta = 0.
"""
from fractions import Fraction

from latticealg import Hamiltonian, dlr_verify, fixture_a

family = fixture_a()
H = Hamiltonian.lattice_gas(family.universe)
for beta in (0, Fraction(1, 2), 1, 2, 4):
    rep = dlr_verify(H, beta, family)
    print(f"beta={str(beta):>4}  axioms={rep.axioms.ok}  own={rep.own_thread.ok}  uniform={rep.uniform_thread.ok}")
