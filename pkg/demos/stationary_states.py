"""
Stationary boundary states from constants of motion
===================================================

On Fixture B the lattice gas with a single bond on the core edge (3, 4) has
three joint values of energy and particle density on the core.  Each level
set carries a microcanonical state; together they span a simplex.
"""
from latticealg import (
    Hamiltonian,
    density_observables,
    fixture_b,
    gibbs_boundary_state,
    gibbs_decomposition_check,
    level_set_probabilities,
    stationary_analysis,
)
from latticealg.scalars import to_float

H = Hamiltonian.lattice_gas(fixture_b().universe, edges=[(3, 4)])
rep = stationary_analysis(density_observables(H))
ens = rep.ensemble
for value, codes in zip(ens.values, ens.level_sets):
    print("(g, n) =", tuple(str(x) for x in value), "configs", list(codes))
print("simplex:", rep.simplex, " |X_K| =", rep.spectrum_size, " boolean lattice:", rep.boolean_lattice)

phi = gibbs_boundary_state(H, 1)
print("Gibbs level-set masses at beta=1:", [round(to_float(p), 4) for p in level_set_probabilities(phi, ens)])
print("Choquet weights match:", gibbs_decomposition_check(H, 1, rep).ok)
