"""Lattice symmetries, invariant states and symmetry breakdown.

A symmetry permutes sites (keeping the boundary core and the interior each
in place) and relabels single-site values.  It moves a configuration ``x``
to ``a x`` with ``(a x)[sigma(i)] = pi(x[i])``.

Products are written left to right: ``a * b`` applies ``a`` first, then
``b``.  With this convention the state action is a homomorphism,
``act_state(a * b, mu) == act_state(a, act_state(b, mu))``, while the
observable action reverses the order.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .functionals import LocalFunctional
from .geometry import StatePolytope, choquet_decompose, membership, CxState
from .lattice import Configuration, Universe, Verdict, decode, encode
from .lp import basic_feasible_solutions
from .morphisms import MorphismFamily
from .observables import LocalObservable
from .scalars import exact

__all__ = [
    "LatticeSymmetry",
    "SymmetryGroup",
    "act_configuration",
    "act_observable",
    "act_state",
    "boundary_permutation",
    "act_state_vector",
    "reference_invariance",
    "reference_is_invariant",
    "invariant_states",
    "BreakdownEntry",
    "BreakdownReport",
    "breakdown_report",
]


@dataclass(frozen=True)
class LatticeSymmetry:
    universe: Universe
    site_perm: tuple[int, ...]
    state_perm: tuple[int, ...]

    def __post_init__(self):
        u = self.universe
        sp, vp = tuple(self.site_perm), tuple(self.state_perm)
        if sorted(sp) != list(u.sites):
            raise ValueError("site_perm must be a permutation of the sites")
        if sorted(vp) != list(range(u.q)):
            raise ValueError("state_perm must be a permutation of 0..q-1")
        if frozenset(sp[i] for i in u.boundary_core) != u.boundary_core:
            raise ValueError("symmetries must map the boundary core onto itself")
        object.__setattr__(self, "site_perm", sp)
        object.__setattr__(self, "state_perm", vp)

    @classmethod
    def identity(cls, universe: Universe) -> "LatticeSymmetry":
        return cls(universe, universe.sites, tuple(range(universe.q)))

    @classmethod
    def state_flip(cls, universe: Universe) -> "LatticeSymmetry":
        """Relabel every site value ``v -> q - 1 - v`` (for ``q = 2``, ``0 <-> 1``)."""
        return cls(universe, universe.sites, tuple(reversed(range(universe.q))))

    @classmethod
    def site_swap(cls, universe: Universe, i: int, j: int) -> "LatticeSymmetry":
        perm = list(universe.sites)
        perm[i], perm[j] = j, i
        return cls(universe, tuple(perm), tuple(range(universe.q)))

    def __mul__(self, other: "LatticeSymmetry") -> "LatticeSymmetry":
        if other.universe != self.universe:
            raise ValueError("symmetries of different universes")
        return LatticeSymmetry(
            self.universe,
            tuple(other.site_perm[self.site_perm[i]] for i in self.universe.sites),
            tuple(other.state_perm[self.state_perm[v]] for v in range(self.universe.q)),
        )

    def inverse(self) -> "LatticeSymmetry":
        sp = [0] * len(self.site_perm)
        for i, j in enumerate(self.site_perm):
            sp[j] = i
        vp = [0] * len(self.state_perm)
        for v, w in enumerate(self.state_perm):
            vp[w] = v
        return LatticeSymmetry(self.universe, tuple(sp), tuple(vp))

    def image(self, sites: Iterable[int]) -> frozenset:
        return frozenset(self.site_perm[i] for i in sites)

    def preimage(self, sites: Iterable[int]) -> frozenset:
        return self.inverse().image(sites)


def act_configuration(a: LatticeSymmetry, x: Configuration) -> Configuration:
    values = x.as_dict()
    return Configuration.from_mapping({a.site_perm[i]: a.state_perm[v] for i, v in values.items()}, x.q)


@functools.lru_cache(maxsize=1024)
def _code_map(a: LatticeSymmetry, sites: tuple[int, ...]) -> tuple[int, ...]:
    """Code of ``a x`` on ``sigma(sites)`` for every code ``x`` on ``sites``."""
    q = a.universe.q
    target = tuple(sorted(a.site_perm[i] for i in sites))
    pos = {s: k for k, s in enumerate(target)}
    out = []
    for code in range(q ** len(sites)):
        vals = decode(code, len(sites), q)
        new = [0] * len(sites)
        for i, v in zip(sites, vals):
            new[pos[a.site_perm[i]]] = a.state_perm[v]
        out.append(encode(new, q))
    return tuple(out)


def _check_universe(a: LatticeSymmetry, universe: Universe) -> None:
    if a.universe != universe:
        raise ValueError("symmetry does not act on this universe")


def act_observable(a: LatticeSymmetry, f: LocalObservable) -> LocalObservable:
    """``(a f)(y) = f(a^-1 y)``, an observable on the image system."""
    _check_universe(a, f.universe)
    system = a.image(f.system)
    if system & f.universe.boundary_core:
        raise ValueError("symmetry moves the system into the boundary core")
    cmap = _code_map(a, f.outside)
    table: list = [None] * len(f.table)
    for c, v in enumerate(f.table):
        table[cmap[c]] = v
    return LocalObservable(f.universe, system, tuple(table))


def act_state(a: LatticeSymmetry, mu: LocalFunctional) -> LocalFunctional:
    """``(a mu)(f) = mu(a f)``: a functional on the preimage system."""
    _check_universe(a, mu.universe)
    u = mu.universe
    system = a.preimage(mu.system)
    cmap = _code_map(a, u.outside(system))
    return LocalFunctional(u, system, tuple(mu.weights[cmap[z]] for z in range(len(mu.weights))))


def boundary_permutation(a: LatticeSymmetry) -> tuple[int, ...]:
    """The induced map ``z -> a z`` on boundary-core configuration codes."""
    return _code_map(a, tuple(sorted(a.universe.boundary_core)))


def act_state_vector(a: LatticeSymmetry, phi: Sequence) -> tuple:
    perm = boundary_permutation(a)
    return tuple(exact(phi[perm[z]]) for z in range(len(phi)))


class SymmetryGroup:
    """Finite group generated by lattice symmetries (closure computed eagerly)."""

    def __init__(self, generators: Iterable[LatticeSymmetry], universe: Universe | None = None):
        self.generators = tuple(generators)
        if universe is None:
            if not self.generators:
                raise ValueError("an empty generator list needs the universe")
            universe = self.generators[0].universe
        self.universe = universe
        identity = LatticeSymmetry.identity(universe)
        elements = [identity]
        frontier = [identity]
        while frontier:
            nxt = []
            for g in frontier:
                for h in self.generators:
                    for k in (g * h, h * g):
                        if k not in elements:
                            elements.append(k)
                            nxt.append(k)
            frontier = nxt
        self.elements = tuple(elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, a) -> bool:
        return a in self.elements


def reference_invariance(G: SymmetryGroup, fam: MorphismFamily) -> Verdict:
    """Whether every element preserves the reference; the witness names one that does not."""
    nu = fam.reference
    u = nu.universe
    for a in G:
        cmap = _code_map(a, u.sites)
        for x in range(len(nu.weights)):
            if nu.weights[cmap[x]] != nu.weights[x]:
                return Verdict(
                    False,
                    {"site_perm": list(a.site_perm), "state_perm": list(a.state_perm), "config": x, "image": cmap[x]},
                )
    return Verdict(True)


def reference_is_invariant(G: SymmetryGroup, fam: MorphismFamily) -> bool:
    return reference_invariance(G, fam).ok


def invariant_states(G: SymmetryGroup, K: StatePolytope, fam: MorphismFamily) -> StatePolytope:
    """The states of ``K`` fixed by every element of ``G``.

    Computed as ``K`` intersected with the fixed subspace: the vertices of the
    weight polytope ``{w >= 0, sum w = 1, V w fixed}`` are enumerated and
    mapped back, then reduced to extreme points.
    """
    if not reference_is_invariant(G, fam):
        raise ValueError("the group does not preserve the reference measure; its action on quasilocal states is undefined")
    V = K.vertices
    m = len(V)
    A = [[exact(1)] * m]
    b = [exact(1)]
    for g in G.generators or (LatticeSymmetry.identity(G.universe),):
        perm = boundary_permutation(g)
        for z in range(K.dim):
            row = [v[perm[z]] - v[z] for v in V]
            if any(x != 0 for x in row):
                A.append(row)
                b.append(exact(0))
    points = []
    for w in basic_feasible_solutions(A, b):
        points.append(tuple(sum((wi * v[k] for wi, v in zip(w, V)), exact(0)) for k in range(K.dim)))
    if not points:
        raise ValueError("no invariant state lies in K")
    return StatePolytope(points)


@dataclass(frozen=True)
class BreakdownEntry:
    vertex: tuple
    persists: bool
    decomposition: CxState | None = None

    @property
    def verdict(self) -> str:
        return "persists" if self.persists else "breaks"


@dataclass(frozen=True)
class BreakdownReport:
    invariant: StatePolytope
    available: StatePolytope
    entries: tuple[BreakdownEntry, ...]

    @property
    def broken(self) -> bool:
        return any(not e.persists for e in self.entries)


def breakdown_report(K1: StatePolytope, K2: StatePolytope) -> BreakdownReport:
    """Which extreme states of ``K1`` stay extreme in the larger set ``K2``.

    A vertex of ``K1`` that is not a vertex of ``K2`` breaks into its
    decomposition over the extreme points of ``K2``.
    """
    for v in K1.vertices:
        if not membership(v, K2):
            raise ValueError(f"K1 is not contained in K2 (vertex {v})")
    entries = []
    for v in K1.vertices:
        if v in K2.vertices:
            entries.append(BreakdownEntry(v, True))
        else:
            entries.append(BreakdownEntry(v, False, choquet_decompose(v, K2).state))
    return BreakdownReport(K1, K2, tuple(entries))
