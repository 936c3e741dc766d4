"""Morphisms between local algebras and their duals on states.

A strictly positive reference measure ``nu`` on the window induces, for every
pair of systems ``s <= t``, the conditional kernel

    pi(a | y) = nu_{out(s)}(a, y) / nu_{out(t)}(y)

over configurations ``a`` of the annulus ``t - s`` given the outside ``y``
of ``t``.  Lifting averages an observable of ``s`` against this kernel.  The
chain rule for conditionals makes the lifts compose exactly; with the
uniform reference the kernel is ``1 / q**|t - s|`` and the lift is the plain
annulus average.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .functionals import LocalFunctional
from .lattice import RegionFamily, Universe, Verdict, projection_codes
from .observables import LocalObservable, extend_to, point_indicator, restrict_to
from .scalars import Scalar, exact, sign

__all__ = [
    "ReferenceMeasure",
    "MorphismFamily",
    "MorphismReport",
    "uniform_reference",
    "explicit_reference",
    "marginal",
    "lift",
    "dual",
    "verify_morphism_axioms",
]


@dataclass(frozen=True, eq=False)
class ReferenceMeasure:
    """Strictly positive probability weights on full-window configurations.

    ``kind``/``params`` only record provenance for serialisation.
    """

    universe: Universe
    weights: tuple
    kind: str = "explicit"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        weights = tuple(exact(w) for w in self.weights)
        if len(weights) != self.universe.size(self.universe.sites):
            raise ValueError("one weight per window configuration is required")
        for code, w in enumerate(weights):
            if sign(w) <= 0:
                raise ValueError(f"reference weight at code {code} is not strictly positive")
        if sum(weights, exact(0)) != 1:
            raise ValueError("reference weights must sum to exactly 1")
        object.__setattr__(self, "weights", weights)

    def __eq__(self, other):
        return (
            isinstance(other, ReferenceMeasure)
            and self.universe == other.universe
            and self.weights == other.weights
        )

    def __hash__(self):
        return hash((self.universe, self.weights))


def uniform_reference(universe: Universe) -> ReferenceMeasure:
    n = universe.size(universe.sites)
    return ReferenceMeasure(universe, (exact(1) / n,) * n, kind="uniform")


def explicit_reference(universe: Universe, weights) -> ReferenceMeasure:
    return ReferenceMeasure(universe, tuple(weights), kind="explicit")


def marginal(nu: ReferenceMeasure, sites: Iterable[int]) -> tuple:
    """Weights of ``nu`` pushed onto configurations of ``sites``."""
    u = nu.universe
    sub = tuple(sorted(u.check_region(sites)))
    if nu.kind == "uniform":
        n = u.size(sub)
        return (exact(1) / n,) * n
    proj = projection_codes(u.sites, sub, u.q)
    out: list = [exact(0)] * u.size(sub)
    for code, w in zip(proj, nu.weights):
        out[code] += w
    return tuple(exact(w) for w in out)


class MorphismFamily:
    """Lifts and dual maps generated by a reference measure.

    Marginals and kernels are memoised on first use; the memo never changes
    a result, so instances behave as immutable values.
    """

    def __init__(self, reference: ReferenceMeasure):
        self.reference = reference
        self.universe = reference.universe
        self._marginals: dict[tuple, tuple] = {}
        self._kernels: dict[tuple, tuple] = {}

    def __repr__(self) -> str:
        return f"MorphismFamily(kind={self.reference.kind!r})"

    def marginal(self, sites: Iterable[int]) -> tuple:
        key = tuple(sorted(frozenset(sites)))
        if key not in self._marginals:
            self._marginals[key] = marginal(self.reference, key)
        return self._marginals[key]

    def kernel(self, s: frozenset, t: frozenset) -> tuple:
        """``pi(a|y)`` indexed by the code of ``(a, y)`` on ``outside(s)``."""
        s, t = frozenset(s), frozenset(t)
        if not s <= t:
            raise ValueError(f"{sorted(s)} is not contained in {sorted(t)}")
        key = (s, t)
        if key not in self._kernels:
            u = self.universe
            out_s, out_t = u.outside(s), u.outside(t)
            m_s, m_t = self.marginal(out_s), self.marginal(out_t)
            proj = projection_codes(out_s, out_t, u.q)
            self._kernels[key] = tuple(exact(m_s[c] / m_t[y]) for c, y in enumerate(proj))
        return self._kernels[key]


def lift(f: LocalObservable, t: Iterable[int], fam: MorphismFamily) -> LocalObservable:
    """Carry ``f`` on ``s`` to the physically equivalent observable on ``t >= s``."""
    t = frozenset(t)
    s = f.system
    if not s <= t:
        raise ValueError(f"cannot lift from {sorted(s)} to {sorted(t)}")
    u = f.universe
    kern = fam.kernel(s, t)
    out_t = u.outside(t)
    proj = projection_codes(f.outside, out_t, u.q)
    table: list = [exact(0)] * u.size(out_t)
    for c, (y, v) in enumerate(zip(proj, f.table)):
        if v != 0:
            table[y] += kern[c] * v
    return LocalObservable(u, t, tuple(table))


def dual(mu: LocalFunctional, s: Iterable[int], fam: MorphismFamily) -> LocalFunctional:
    """``mu o lift``: the functional on ``s`` induced by ``mu`` on ``t >= s``."""
    s = frozenset(s)
    t = mu.system
    if not s <= t:
        raise ValueError(f"cannot pull back from {sorted(t)} to {sorted(s)}")
    u = mu.universe
    kern = fam.kernel(s, t)
    out_s = u.outside(s)
    proj = projection_codes(out_s, mu.outside, u.q)
    return LocalFunctional(u, s, tuple(k * mu.weights[y] for k, y in zip(kern, proj)))


@dataclass
class MorphismReport:
    identity_on_measurable: Verdict
    identity_on_same_system: Verdict
    composition: Verdict

    @property
    def ok(self) -> bool:
        return bool(self.identity_on_measurable and self.identity_on_same_system and self.composition)

    def as_dict(self) -> dict:
        return {
            "ok": self.ok,
            "i": self.identity_on_measurable._asdict(),
            "ii": self.identity_on_same_system._asdict(),
            "iii": self.composition._asdict(),
        }


def _check_measurable(fam: MorphismFamily, family: RegionFamily) -> Verdict:
    u = family.universe
    for s, t in family.pairs():
        for code in range(u.size(u.outside(t))):
            g = point_indicator(u, t, code)
            f = extend_to(g, s)
            lifted = lift(f, t, fam)
            if lifted != restrict_to(f, t):
                return Verdict(False, {"s": sorted(s), "t": sorted(t), "config": code})
    return Verdict(True)


def _check_same_system(fam: MorphismFamily, family: RegionFamily) -> Verdict:
    u = family.universe
    for t in family:
        for code in range(u.size(u.outside(t))):
            f = point_indicator(u, t, code)
            if lift(f, t, fam) != f:
                return Verdict(False, {"t": sorted(t), "config": code})
    return Verdict(True)


def _check_composition(fam: MorphismFamily, family: RegionFamily) -> Verdict:
    u = family.universe
    for r, s, t in family.chains():
        for code in range(u.size(u.outside(r))):
            f = point_indicator(u, r, code)
            if lift(lift(f, s, fam), t, fam) != lift(f, t, fam):
                return Verdict(False, {"r": sorted(r), "s": sorted(s), "t": sorted(t), "config": code})
    return Verdict(True)


def verify_morphism_axioms(fam: MorphismFamily, family: RegionFamily) -> MorphismReport:
    """Exhaustive exact check of the three morphism properties over ``family``.

    Properties are checked on the point-indicator basis, which spans every
    local algebra, so linearity extends each verdict to all observables.
    """
    return MorphismReport(
        _check_measurable(fam, family),
        _check_same_system(fam, family),
        _check_composition(fam, family),
    )
