"""
Boundary states as barycentres
==============================

The boundary state of a thread is a point of a polytope K of states on the
boundary configurations.  When K is a simplex every point is a unique mixture
of extreme states; the square shows what goes wrong otherwise.
"""
from fractions import Fraction

from latticealg import (
    MorphismFamily,
    QuasilocalElement,
    StatePolytope,
    alternative_decompositions,
    choquet_decompose,
    cx_expectation,
    fixture_b,
    full_simplex,
    is_simplex,
    kadison,
    p_E_norm,
    point_indicator,
    uniform_reference,
)

half = Fraction(1, 2)

# Fixture B has a two-site boundary core, so boundary states live in a 3-simplex.
family = fixture_b()
u = family.universe
K = full_simplex(4)
phi = (Fraction(1, 8), Fraction(1, 4), Fraction(1, 8), Fraction(1, 2))
d = choquet_decompose(phi, K)
print("simplex:", is_simplex(K), "unique:", d.unique, "weights:", [str(w) for w in d.weights])

# Quasilocal observables become functions on the vertices of K.
fam = MorphismFamily(uniform_reference(u))
q = QuasilocalElement.of(family, point_indicator(u, family.top, 3).scale(2))
F = kadison(q, K, fam)
print("kadison image:", [str(v) for v in F.values], " p_E norm:", p_E_norm(q, fam))
print("<zeta, F> =", cx_expectation(d.state, F))

# The square is not a simplex, and its centre has two decompositions.
square = StatePolytope([(half, half, 0, 0), (0, half, half, 0), (0, 0, half, half), (half, 0, 0, half)])
centre = (Fraction(1, 4),) * 4
print("square simplex:", is_simplex(square), "unique:", choquet_decompose(centre, square).unique)
for z in alternative_decompositions(centre, square):
    print("  ", [str(w) for w in z.weights], "over", [[str(x) for x in v] for v in square.vertices])
