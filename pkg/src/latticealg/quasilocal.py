"""Quasilocal observables as formal sums of local observables.

A quasilocal element is a finite sum of local observables tagged by systems
of the region family.  Two sums are identified when they differ by
combinations of ``(s, f) - (t, lift(f, t))``.  Because the family has a top
system, every class has a canonical representative: the sum of all
summands lifted to the top.  That representative (a table over the
boundary core) is the normal form, and its sup norm is the order-unit norm.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .lattice import RegionFamily
from .morphisms import MorphismFamily, lift
from .observables import LocalObservable, constant, join, meet, sup_norm, unit
from .scalars import Scalar, exact, sign
from .threads import Thread

NormalForm = LocalObservable

__all__ = [
    "QuasilocalElement",
    "NormalForm",
    "normal_form",
    "order_unit_e",
    "p_E_norm",
    "pair",
    "equivalent",
    "rewrite",
    "collect",
    "is_positive",
    "qjoin",
    "qmeet",
]


@dataclass(frozen=True)
class QuasilocalElement:
    family: RegionFamily
    summands: tuple[LocalObservable, ...] = ()

    def __post_init__(self):
        summands = tuple(self.summands)
        for f in summands:
            if f.universe != self.family.universe:
                raise ValueError("summand from a different universe")
            if f.system not in self.family:
                raise ValueError(f"tag {sorted(f.system)} is not a system of the family")
        object.__setattr__(self, "summands", summands)

    @classmethod
    def of(cls, family: RegionFamily, *observables: LocalObservable) -> "QuasilocalElement":
        return cls(family, tuple(observables))

    def __add__(self, other: "QuasilocalElement") -> "QuasilocalElement":
        if other.family != self.family:
            raise ValueError("elements over different region families")
        return QuasilocalElement(self.family, self.summands + other.summands)

    def __neg__(self) -> "QuasilocalElement":
        return self.scale(-1)

    def __sub__(self, other: "QuasilocalElement") -> "QuasilocalElement":
        return self + (-other)

    def scale(self, c) -> "QuasilocalElement":
        return QuasilocalElement(self.family, tuple(f.scale(c) for f in self.summands))

    def __len__(self) -> int:
        return len(self.summands)


def normal_form(q: QuasilocalElement, fam: MorphismFamily) -> NormalForm:
    top = q.family.top
    if top not in q.family:
        raise ValueError("the region family has no top system")
    out = constant(q.family.universe, top, 0)
    for f in q.summands:
        out = out + lift(f, top, fam)
    return out


def order_unit_e(fam: MorphismFamily, family: RegionFamily, t: Iterable[int] | None = None) -> NormalForm:
    """Normal form of the unit observable of ``t`` (any system gives the same)."""
    t = family.top if t is None else frozenset(t)
    return normal_form(QuasilocalElement.of(family, unit(family.universe, t)), fam)


def p_E_norm(q: QuasilocalElement, fam: MorphismFamily) -> Scalar:
    return sup_norm(normal_form(q, fam))


def pair(thread: Thread, q: QuasilocalElement) -> Scalar:
    """Expectation of ``q`` in the algebraic state defined by ``thread``.

    Each summand is paired with the thread component on its own system; the
    result does not depend on the chosen representative.
    """
    if thread.family != q.family:
        raise ValueError("thread and element use different region families")
    return sum((thread[f.system](f) for f in q.summands), exact(0))


def equivalent(q1: QuasilocalElement, q2: QuasilocalElement, fam: MorphismFamily) -> bool:
    return normal_form(q1, fam) == normal_form(q2, fam)


def rewrite(q: QuasilocalElement, index: int, t: Iterable[int], fam: MorphismFamily) -> QuasilocalElement:
    """Replace summand ``index`` (on ``s``) by its lift to ``t >= s``."""
    t = frozenset(t)
    summands = list(q.summands)
    summands[index] = lift(summands[index], t, fam)
    return QuasilocalElement(q.family, tuple(summands))


def collect(q: QuasilocalElement) -> QuasilocalElement:
    """Merge summands sharing a tag: one summand per system, in family order."""
    by_tag: dict[frozenset, LocalObservable] = {}
    for f in q.summands:
        by_tag[f.system] = by_tag[f.system] + f if f.system in by_tag else f
    return QuasilocalElement(q.family, tuple(by_tag[r] for r in q.family if r in by_tag))


def is_positive(q: QuasilocalElement) -> bool:
    """Every summand of the collected representative is pointwise nonnegative."""
    return all(all(sign(v) >= 0 for v in f.table) for f in collect(q).summands)


def qjoin(q1: QuasilocalElement, q2: QuasilocalElement, fam: MorphismFamily) -> QuasilocalElement:
    """Lattice join, computed on normal forms."""
    return QuasilocalElement.of(q1.family, join(normal_form(q1, fam), normal_form(q2, fam)))


def qmeet(q1: QuasilocalElement, q2: QuasilocalElement, fam: MorphismFamily) -> QuasilocalElement:
    return QuasilocalElement.of(q1.family, meet(normal_form(q1, fam), normal_form(q2, fam)))
