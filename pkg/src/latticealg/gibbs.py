"""Hamiltonians, Gibbs reference measures and stationary states.

Boltzmann weights ``exp(-beta H(x))`` are kept exact: with every
``beta * H(x)`` a multiple of ``1/D``, each weight is a power of the
transcendental number ``z = exp(-1/D)`` and all derived quantities
(marginals, kernels, thread components) live in the field ``Q(z)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import chain, combinations
from typing import Iterable, Mapping, Sequence

from .geometry import (
    CxFunction,
    StatePolytope,
    choquet_decompose,
    cx_indicator,
    cx_join,
    cx_unit,
    is_simplex,
    kadison,
    multiply,
)
from .lattice import RegionFamily, Universe, Verdict, decode
from .morphisms import (
    MorphismFamily,
    MorphismReport,
    ReferenceMeasure,
    marginal,
    uniform_reference,
    verify_morphism_axioms,
)
from .observables import LocalObservable
from .quasilocal import QuasilocalElement
from .scalars import Scalar, boltzmann_field, exact
from .threads import tl_identify

__all__ = [
    "Hamiltonian",
    "gibbs_reference",
    "DLRReport",
    "dlr_verify",
    "DensityPair",
    "density_observables",
    "MicrocanonicalEnsemble",
    "microcanonical_states",
    "StationaryReport",
    "stationary_analysis",
    "gibbs_boundary_state",
    "level_set_probabilities",
    "gibbs_decomposition_check",
]


@dataclass(frozen=True)
class Hamiltonian:
    """``H(x) = sum_i field[i][x_i] + sum_edges coupling[e][x_i][x_j]``."""

    universe: Universe
    field: tuple
    couplings: Mapping

    def __post_init__(self):
        u = self.universe
        fld = self.field or tuple((0,) * u.q for _ in u.sites)
        fld = tuple(tuple(exact(v) for v in row) for row in fld)
        if len(fld) != u.n_sites or any(len(row) != u.q for row in fld):
            raise ValueError("field must give q energies for every site")
        couplings = {}
        for edge, matrix in dict(self.couplings).items():
            i, j = int(edge[0]), int(edge[1])
            if (min(i, j), max(i, j)) not in u.edges:
                raise ValueError(f"({i}, {j}) is not an edge of the universe")
            m = tuple(tuple(exact(v) for v in row) for row in matrix)
            if len(m) != u.q or any(len(row) != u.q for row in m):
                raise ValueError("coupling matrices must be q x q")
            if i > j:
                i, j, m = j, i, tuple(zip(*m))
            couplings[(i, j)] = m
        object.__setattr__(self, "field", fld)
        object.__setattr__(self, "couplings", couplings)

    def __hash__(self):
        return hash((self.universe, self.field, tuple(sorted(self.couplings.items()))))

    @classmethod
    def zero(cls, universe: Universe) -> "Hamiltonian":
        return cls(universe, (), {})

    @classmethod
    def lattice_gas(
        cls,
        universe: Universe,
        coupling=-1,
        chemical_potential=0,
        edges: Iterable[tuple[int, int]] | None = None,
    ) -> "Hamiltonian":
        """Occupied sites (value != 0) attract with energy ``coupling`` per bond."""
        q = universe.q
        J = exact(coupling)
        mu = exact(chemical_potential)
        matrix = tuple(tuple(J if (a and b) else 0 for b in range(q)) for a in range(q))
        fld = tuple(tuple(-mu if v else 0 for v in range(q)) for _ in universe.sites)
        edges = universe.edges if edges is None else edges
        return cls(universe, fld, {e: matrix for e in edges})

    def energy(self, values: Sequence[int]) -> Fraction:
        e = sum((self.field[i][v] for i, v in enumerate(values)), Fraction(0))
        for (i, j), m in self.couplings.items():
            e += m[values[i]][values[j]]
        return e

    def restricted_energy(self, values: Mapping[int, int]) -> Fraction:
        """Energy of the sites in ``values`` and the edges among them."""
        e = sum((self.field[i][v] for i, v in values.items()), Fraction(0))
        for (i, j), m in self.couplings.items():
            if i in values and j in values:
                e += m[values[i]][values[j]]
        return e

    def energies(self) -> tuple[Fraction, ...]:
        u = self.universe
        return tuple(self.energy(decode(c, u.n_sites, u.q)) for c in range(u.size(u.sites)))


def gibbs_reference(H: Hamiltonian, beta) -> ReferenceMeasure:
    beta = exact(beta)
    u = H.universe
    params = {"beta": beta, "hamiltonian": H}
    if beta == 0:
        n = u.size(u.sites)
        return ReferenceMeasure(u, (Fraction(1, n),) * n, kind="gibbs", params=params)
    scaled = [beta * e for e in H.energies()]
    D = math.lcm(*(s.denominator for s in scaled))
    exps = [int(s * D) for s in scaled]
    lo = min(exps)
    K, z = boltzmann_field(D)
    raw = [z ** (k - lo) for k in exps]
    Z = sum(raw, K.zero)
    return ReferenceMeasure(u, tuple(w / Z for w in raw), kind="gibbs", params=params)


@dataclass
class DLRReport:
    beta: Fraction
    axioms: MorphismReport
    own_thread: Verdict
    uniform_thread: Verdict

    @property
    def ok(self) -> bool:
        return self.axioms.ok and self.own_thread.ok

    def as_dict(self) -> dict:
        return {
            "beta": str(self.beta),
            "ok": self.ok,
            "axioms": self.axioms.as_dict(),
            "own_thread": self.own_thread._asdict(),
            "uniform_thread": self.uniform_thread._asdict(),
        }


def dlr_verify(H: Hamiltonian, beta, family: RegionFamily) -> DLRReport:
    """Gibbs kernels as a morphism family, and the Gibbs marginals as its thread.

    ``uniform_thread`` records, for contrast, whether the same marginals are
    a thread of the plain annulus-averaging family.
    """
    nu = gibbs_reference(H, beta)
    fam = MorphismFamily(nu)
    axioms = verify_morphism_axioms(fam, family)
    _, own = tl_identify(nu, fam, family)
    _, uni = tl_identify(nu, MorphismFamily(uniform_reference(H.universe)), family)
    return DLRReport(exact(beta), axioms, own, uni)


@dataclass(frozen=True)
class DensityPair:
    """Energy and particle densities per boundary-core site, on the top system."""

    energy: LocalObservable
    particles: LocalObservable

    def value(self, code: int) -> tuple[Scalar, Scalar]:
        return self.energy.table[code], self.particles.table[code]


def density_observables(H: Hamiltonian) -> DensityPair:
    u = H.universe
    core = tuple(sorted(u.boundary_core))
    size = len(core)
    g, n = [], []
    for code in range(u.size(core)):
        values = dict(zip(core, decode(code, size, u.q)))
        g.append(H.restricted_energy(values) / size)
        n.append(Fraction(sum(1 for v in values.values() if v), size))
    top = u.interior
    return DensityPair(LocalObservable(u, top, tuple(g)), LocalObservable(u, top, tuple(n)))


@dataclass(frozen=True)
class MicrocanonicalEnsemble:
    values: tuple  # (g, n) per level set
    level_sets: tuple  # boundary codes per level set
    states: tuple  # uniform state vector per level set

    def __len__(self) -> int:
        return len(self.level_sets)


def microcanonical_states(d: DensityPair) -> MicrocanonicalEnsemble:
    """Uniform states on the level sets of the density pair, by first code."""
    levels: dict[tuple, list[int]] = {}
    for code in range(len(d.energy.table)):
        levels.setdefault(d.value(code), []).append(code)
    values = tuple(levels)
    sets = tuple(tuple(levels[v]) for v in values)
    dim = len(d.energy.table)
    states = tuple(
        tuple(Fraction(1, len(s)) if c in s else Fraction(0) for c in range(dim)) for s in sets
    )
    return MicrocanonicalEnsemble(values, sets, states)


def _subsets(n: int):
    return chain.from_iterable(combinations(range(n), k) for k in range(n + 1))


@dataclass
class StationaryReport:
    ensemble: MicrocanonicalEnsemble
    polytope: StatePolytope
    simplex: bool
    vertices_are_mc: bool
    spectrum_size: int
    subset_checks: list  # (subset, ok)
    boolean_lattice: bool

    @property
    def ok(self) -> bool:
        return (
            self.simplex
            and self.vertices_are_mc
            and self.spectrum_size == len(self.ensemble)
            and all(ok for _, ok in self.subset_checks)
            and self.boolean_lattice
        )


def stationary_analysis(d: DensityPair) -> StationaryReport:
    """Stationary hull of the microcanonical states and its finite spectrum.

    For every set ``F`` of extreme states the indicator of the union of their
    level sets is a genuine observable whose image in ``C(X_K)`` is the
    idempotent ``chi_F``.
    """
    ens = microcanonical_states(d)
    K = StatePolytope(ens.states)
    u = d.energy.universe
    top = u.interior
    family = RegionFamily(u, (top,))
    fam = MorphismFamily(uniform_reference(u))
    # vertex index of each level set
    order = [K.index(s) for s in ens.states]

    checks = []
    idempotents: dict[frozenset, CxFunction] = {}
    for F in _subsets(len(K)):
        levels = [k for k, idx in enumerate(order) if idx in F]
        codes = {c for k in levels for c in ens.level_sets[k]}
        chi = LocalObservable(u, top, tuple(1 if c in codes else 0 for c in range(K.dim)))
        image = kadison(QuasilocalElement.of(family, chi), K, fam)
        target = cx_indicator(K, F)
        checks.append((F, image == target))
        idempotents[frozenset(F)] = image

    full = frozenset(range(len(K)))
    lattice_ok = idempotents[full] == cx_unit(K) and idempotents[frozenset()] == cx_indicator(K, ())
    for A, fa in idempotents.items():
        lattice_ok &= multiply(fa, fa) == fa
        lattice_ok &= CxFunction(K, tuple(1 - v for v in fa.values)) == idempotents[full - A]
        for B, fb in idempotents.items():
            lattice_ok &= multiply(fa, fb) == idempotents[A & B]
            lattice_ok &= cx_join(fa, fb) == idempotents[A | B]

    return StationaryReport(
        ensemble=ens,
        polytope=K,
        simplex=is_simplex(K),
        vertices_are_mc=set(K.vertices) == set(ens.states),
        spectrum_size=len(K),
        subset_checks=checks,
        boolean_lattice=bool(lattice_ok),
    )


def gibbs_boundary_state(H: Hamiltonian, beta) -> tuple:
    """Marginal of the Gibbs measure on the boundary core."""
    nu = gibbs_reference(H, beta)
    return marginal(nu, H.universe.boundary_core)


def level_set_probabilities(phi: Sequence, ens: MicrocanonicalEnsemble) -> tuple:
    return tuple(sum((exact(phi[c]) for c in s), exact(0)) for s in ens.level_sets)


def gibbs_decomposition_check(H: Hamiltonian, beta, report: StationaryReport) -> Verdict:
    """Choquet weights of the canonical boundary state versus its level-set masses."""
    phi = gibbs_boundary_state(H, beta)
    K = report.polytope
    try:
        dec = choquet_decompose(phi, K)
    except ValueError:
        return Verdict(False, {"reason": "boundary state is not a mixture of microcanonical states"})
    probs = level_set_probabilities(phi, report.ensemble)
    for k, s in enumerate(report.ensemble.states):
        if dec.weights[K.index(s)] != probs[k]:
            return Verdict(False, {"level_set": list(report.ensemble.level_sets[k])})
    return Verdict(True)
