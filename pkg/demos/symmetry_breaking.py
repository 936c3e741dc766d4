"""
Invariant states and their ergodic decomposition
================================================
"""
from latticealg import (
    LatticeSymmetry,
    MorphismFamily,
    SymmetryGroup,
    breakdown_report,
    fixture_a,
    fixture_b,
    full_simplex,
    invariant_states,
    uniform_reference,
)

# Flipping every spin on Fixture A.  The only invariant boundary state is the
# even mixture, and it splits into the two point masses on x3 = 0 and x3 = 1.
u = fixture_a().universe
flip = SymmetryGroup([LatticeSymmetry.state_flip(u)])
K = full_simplex(2)
inv = invariant_states(flip, K, MorphismFamily(uniform_reference(u)))
rep = breakdown_report(inv, K)
for e in rep.entries:
    print([str(x) for x in e.vertex], e.verdict, [str(w) for w in e.decomposition.weights])
print("broken:", rep.broken)

# Swapping the two core sites of Fixture B leaves a triangle of invariant states.
ub = fixture_b().universe
swap = SymmetryGroup([LatticeSymmetry.site_swap(ub, 3, 4)])
inv = invariant_states(swap, full_simplex(4), MorphismFamily(uniform_reference(ub)))
print("swap-invariant vertices:")
for v in inv.vertices:
    print("  ", [str(x) for x in v])
