"""Compact convex sets of algebraic states and their function algebras.

An algebraic state is determined by the top component of its thread, i.e. a
probability vector over boundary-core configurations; here such vectors are
called state vectors.  A compact convex set of states is a polytope given by
generators; its extreme points ``X`` index the finite function algebra
``C(X)`` in which every quasilocal observable is represented by its values
at the extreme states.

Every verdict is computed with exact LP or exact rank, never a tolerance.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .lp import feasible_point, linprog_eq, rank, solve
from .morphisms import MorphismFamily
from .quasilocal import QuasilocalElement, normal_form
from .scalars import Scalar, exact, sign
from .threads import Thread

StateVector = tuple

__all__ = [
    "StateVector",
    "StatePolytope",
    "CxFunction",
    "CxState",
    "ChoquetDecomposition",
    "state_vector",
    "full_simplex",
    "extreme_points",
    "membership",
    "choquet_decompose",
    "decomposition_range",
    "alternative_decompositions",
    "is_simplex",
    "kadison",
    "kadison_injective",
    "cx_indicator",
    "cx_unit",
    "multiply",
    "cx_join",
    "cx_meet",
    "is_multiplicative",
    "cx_expectation",
    "point_mass",
]


def _vector(v: Iterable) -> StateVector:
    return tuple(exact(x) for x in v)


def _compare_desc(a: StateVector, b: StateVector) -> int:
    for x, y in zip(a, b):
        s = sign(x - y)
        if s:
            return -s
    return 0


def canonical_order(vectors: Iterable[StateVector]) -> list[StateVector]:
    """Sort descending lexicographically, so Dirac vectors follow their codes."""
    return sorted(vectors, key=functools.cmp_to_key(_compare_desc))


def state_vector(source) -> StateVector:
    """Coordinates of an algebraic state: a thread or a top-system functional."""
    if isinstance(source, Thread):
        source = source.top
    weights = getattr(source, "weights", source)
    return _vector(weights)


def _hull_system(points: Sequence[StateVector], target: StateVector):
    dim = len(target)
    A = [[p[k] for p in points] for k in range(dim)]
    A.append([exact(1)] * len(points))
    b = list(target) + [exact(1)]
    return A, b


def _in_hull(target: StateVector, points: Sequence[StateVector]) -> bool:
    if not points:
        return False
    A, b = _hull_system(points, target)
    return feasible_point(A, b) is not None


def extreme_points(generators: Iterable[Iterable]) -> list[StateVector]:
    """Irredundant subset of the generators with the same convex hull."""
    gens: list[StateVector] = []
    for g in generators:
        g = _vector(g)
        if g not in gens:
            gens.append(g)
    if not gens:
        raise ValueError("need at least one generator")
    dims = {len(g) for g in gens}
    if len(dims) != 1:
        raise ValueError("generators have different dimensions")
    keep = [g for i, g in enumerate(gens) if not _in_hull(g, gens[:i] + gens[i + 1 :])]
    return canonical_order(keep)


class StatePolytope:
    """Convex hull of finitely many state vectors; vertices in canonical order."""

    def __init__(self, generators: Iterable[Iterable]):
        self.generators = tuple(_vector(g) for g in generators)
        self.vertices = tuple(extreme_points(self.generators))
        self.dim = len(self.vertices[0])

    def __repr__(self) -> str:
        return f"StatePolytope({len(self.vertices)} vertices in dimension {self.dim})"

    def __len__(self) -> int:
        return len(self.vertices)

    def __eq__(self, other):
        return isinstance(other, StatePolytope) and set(self.vertices) == set(other.vertices)

    def __hash__(self):
        return hash(frozenset(self.vertices))

    def index(self, v: Iterable) -> int:
        return self.vertices.index(_vector(v))


def full_simplex(dim: int) -> StatePolytope:
    """All states on ``dim`` boundary configurations (hull of the Dirac vectors)."""
    return StatePolytope(tuple(1 if k == i else 0 for k in range(dim)) for i in range(dim))


def membership(phi: Iterable, K: StatePolytope) -> bool:
    phi = _vector(phi)
    if len(phi) != K.dim:
        raise ValueError(f"state vector has dimension {len(phi)}, polytope {K.dim}")
    return _in_hull(phi, K.vertices)


def is_simplex(K: StatePolytope) -> bool:
    """Vertices affinely independent, checked by exact rank."""
    v0 = K.vertices[0]
    diffs = [[a - b for a, b in zip(v, v0)] for v in K.vertices[1:]]
    return rank(diffs) == len(diffs) if diffs else True


def kadison_injective(K: StatePolytope) -> bool:
    """Whether distinct normal forms always have distinct images in ``C(X_K)``."""
    return rank([list(v) for v in K.vertices]) == K.dim


@dataclass(frozen=True)
class CxFunction:
    polytope: StatePolytope
    values: tuple

    def __post_init__(self):
        values = tuple(exact(v) for v in self.values)
        if len(values) != len(self.polytope.vertices):
            raise ValueError("one value per extreme point is required")
        object.__setattr__(self, "values", values)


@dataclass(frozen=True)
class CxState:
    polytope: StatePolytope
    weights: tuple

    def __post_init__(self):
        weights = tuple(exact(w) for w in self.weights)
        if len(weights) != len(self.polytope.vertices):
            raise ValueError("one weight per extreme point is required")
        if any(sign(w) < 0 for w in weights) or sum(weights, exact(0)) != 1:
            raise ValueError("weights must form a probability vector")
        object.__setattr__(self, "weights", weights)

    def resultant(self) -> StateVector:
        """Barycentre of the weighted extreme points."""
        V = self.polytope.vertices
        return tuple(sum((w * v[k] for w, v in zip(self.weights, V)), exact(0)) for k in range(self.polytope.dim))


@dataclass(frozen=True)
class ChoquetDecomposition:
    state: CxState
    unique: bool

    @property
    def weights(self) -> tuple:
        return self.state.weights


def point_mass(K: StatePolytope, index: int) -> CxState:
    return CxState(K, tuple(1 if i == index else 0 for i in range(len(K))))


def decomposition_range(phi: Iterable, K: StatePolytope, index: int) -> tuple[Scalar, Scalar]:
    """Least and greatest weight vertex ``index`` can carry in a decomposition of ``phi``."""
    phi = _vector(phi)
    A, b = _hull_system(K.vertices, phi)
    c = [exact(1) if i == index else exact(0) for i in range(len(K))]
    lo = linprog_eq(c, A, b)
    hi = linprog_eq([-v for v in c], A, b)
    if lo.status != "optimal":
        raise ValueError("state is not in the polytope")
    return lo.value, -hi.value


def alternative_decompositions(phi: Iterable, K: StatePolytope) -> list[CxState]:
    """Distinct extremal decompositions found by pushing each weight to its bounds."""
    phi = _vector(phi)
    A, b = _hull_system(K.vertices, phi)
    found: list[tuple] = []
    for i in range(len(K)):
        for s in (1, -1):
            c = [exact(s) if j == i else exact(0) for j in range(len(K))]
            res = linprog_eq(c, A, b)
            if res.status != "optimal":
                raise ValueError("state is not in the polytope")
            if res.x not in found:
                found.append(res.x)
    return [CxState(K, x) for x in found]


def choquet_decompose(phi: Iterable, K: StatePolytope) -> ChoquetDecomposition:
    """Write ``phi`` as a mixture of the extreme points of ``K``.

    On a simplex the weights are the barycentric coordinates (found by an
    exact linear solve).  Otherwise one basic decomposition is returned and
    ``unique`` reports whether every weight is pinned by the LP.
    """
    phi = _vector(phi)
    if len(phi) != K.dim:
        raise ValueError(f"state vector has dimension {len(phi)}, polytope {K.dim}")
    A, b = _hull_system(K.vertices, phi)
    if is_simplex(K):
        w = solve(A, b)
        if w is None or any(sign(x) < 0 for x in w):
            raise ValueError("state is not in the polytope")
        return ChoquetDecomposition(CxState(K, w), True)
    w = feasible_point(A, b)
    if w is None:
        raise ValueError("state is not in the polytope")
    unique = True
    for i in range(len(K)):
        lo, hi = decomposition_range(phi, K, i)
        if lo != hi:
            unique = False
            break
    return ChoquetDecomposition(CxState(K, w), unique)


def kadison(q: QuasilocalElement, K: StatePolytope, fam: MorphismFamily) -> CxFunction:
    """Represent ``q`` as the function ``x -> x(q)`` on the extreme points of ``K``."""
    nf = normal_form(q, fam)
    if len(nf.table) != K.dim:
        raise ValueError("polytope dimension does not match the boundary core")
    values = tuple(
        sum((w * v for w, v in zip(x, nf.table) if w != 0 and v != 0), exact(0)) for x in K.vertices
    )
    return CxFunction(K, values)


def cx_unit(K: StatePolytope) -> CxFunction:
    return CxFunction(K, (1,) * len(K))


def cx_indicator(K: StatePolytope, subset: Iterable[int]) -> CxFunction:
    """The idempotent ``chi_F`` for a set ``F`` of vertex indices."""
    subset = set(subset)
    return CxFunction(K, tuple(1 if i in subset else 0 for i in range(len(K))))


def _same_space(f, g) -> None:
    if f.polytope is not g.polytope and f.polytope != g.polytope:
        raise ValueError("functions live on different extreme-point sets")


def multiply(f: CxFunction, g: CxFunction) -> CxFunction:
    _same_space(f, g)
    return CxFunction(f.polytope, tuple(a * b for a, b in zip(f.values, g.values)))


def cx_join(f: CxFunction, g: CxFunction) -> CxFunction:
    _same_space(f, g)
    return CxFunction(f.polytope, tuple(a if sign(a - b) >= 0 else b for a, b in zip(f.values, g.values)))


def cx_meet(f: CxFunction, g: CxFunction) -> CxFunction:
    _same_space(f, g)
    return CxFunction(f.polytope, tuple(a if sign(a - b) <= 0 else b for a, b in zip(f.values, g.values)))


def cx_expectation(zeta: CxState, f: CxFunction) -> Scalar:
    _same_space(zeta, f)
    return sum((w * v for w, v in zip(zeta.weights, f.values)), exact(0))


def is_multiplicative(zeta: CxState) -> bool:
    """``zeta(fg) == zeta(f) zeta(g)`` over all pairs of vertex indicators."""
    K = zeta.polytope
    basis = [cx_indicator(K, [i]) for i in range(len(K))]
    for f, g in combinations_with_replacement(basis, 2):
        if cx_expectation(zeta, multiply(f, g)) != cx_expectation(zeta, f) * cx_expectation(zeta, g):
            return False
    return True
