"""Local observables: functions from the outside of a system.

An observable on system ``s`` is a table over configurations of
``outside(s)``; it cannot see the sites of ``s`` at all.  Tables are dense
tuples of exact scalars in canonical code order.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .lattice import Configuration, Universe, projection_codes, restrict_configuration
from .scalars import Scalar, exact, sabs, sign, smax, smin

__all__ = [
    "LocalObservable",
    "constant",
    "unit",
    "indicator",
    "point_indicator",
    "from_function",
    "evaluate",
    "affine",
    "join",
    "meet",
    "combine",
    "sup_norm",
    "measurable_in",
    "is_nonnegative",
    "restrict_to",
    "extend_to",
]


@dataclass(frozen=True)
class LocalObservable:
    universe: Universe
    system: frozenset
    table: tuple

    def __post_init__(self):
        system = self.universe.check_region(self.system)
        if system & self.universe.boundary_core:
            raise ValueError("systems must lie in the interior")
        object.__setattr__(self, "system", system)
        table = tuple(exact(v) for v in self.table)
        expected = self.universe.size(self.outside)
        if len(table) != expected:
            raise ValueError(f"table has {len(table)} entries, expected {expected}")
        object.__setattr__(self, "table", table)

    @property
    def outside(self) -> tuple[int, ...]:
        return self.universe.outside(self.system)

    def __add__(self, other: "LocalObservable") -> "LocalObservable":
        return affine(self, other, 1, 1)

    def __sub__(self, other: "LocalObservable") -> "LocalObservable":
        return affine(self, other, 1, -1)

    def __neg__(self) -> "LocalObservable":
        return self.scale(-1)

    def __mul__(self, c) -> "LocalObservable":
        return self.scale(c)

    __rmul__ = __mul__

    def __or__(self, other: "LocalObservable") -> "LocalObservable":
        return join(self, other)

    def __and__(self, other: "LocalObservable") -> "LocalObservable":
        return meet(self, other)

    def scale(self, c) -> "LocalObservable":
        c = exact(c)
        return LocalObservable(self.universe, self.system, tuple(c * v for v in self.table))

    def __repr__(self) -> str:
        return f"LocalObservable(system={sorted(self.system)}, table=[{', '.join(map(str, self.table))}])"


def constant(universe: Universe, system: Iterable[int], value) -> LocalObservable:
    system = frozenset(system)
    v = exact(value)
    return LocalObservable(universe, system, (v,) * universe.size(universe.outside(system)))


def unit(universe: Universe, system: Iterable[int] = ()) -> LocalObservable:
    """The order unit (all-ones table) on ``system``."""
    return constant(universe, system, 1)


def indicator(universe: Universe, system: Iterable[int], event: Configuration | Mapping[int, int]) -> LocalObservable:
    """Indicator of the cylinder ``{x : x agrees with event}``.

    ``event`` must live outside ``system``; anything else would not be a
    function from the outside.
    """
    system = frozenset(system)
    if not isinstance(event, Configuration):
        event = Configuration.from_mapping(dict(event), universe.q)
    if event.region & system:
        raise ValueError(f"event sites {sorted(event.region & system)} lie inside the system")
    outside = universe.outside(system)
    proj = projection_codes(outside, event.sites, universe.q)
    return LocalObservable(universe, system, tuple(1 if c == event.code else 0 for c in proj))


def point_indicator(universe: Universe, system: Iterable[int], code: int) -> LocalObservable:
    """Indicator of a single outside configuration, given by its code."""
    system = frozenset(system)
    n = universe.size(universe.outside(system))
    return LocalObservable(universe, system, tuple(1 if c == code else 0 for c in range(n)))


def from_function(universe: Universe, system: Iterable[int], fn: Callable[[dict], object]) -> LocalObservable:
    """Tabulate ``fn`` over outside configurations (passed as site->value dicts)."""
    system = frozenset(system)
    configs = universe.configurations(universe.outside(system))
    return LocalObservable(universe, system, tuple(fn(c.as_dict()) for c in configs))


def evaluate(f: LocalObservable, x: Configuration) -> Scalar:
    if x.region != frozenset(f.universe.sites):
        raise ValueError("evaluate needs a configuration on the whole window")
    return f.table[restrict_configuration(x, f.outside).code]


def _check_same_system(f: LocalObservable, g: LocalObservable) -> None:
    if f.universe != g.universe or f.system != g.system:
        raise ValueError("observables live on different systems; lift them first")


def affine(f: LocalObservable, g: LocalObservable, a=1, b=1) -> LocalObservable:
    _check_same_system(f, g)
    a, b = exact(a), exact(b)
    return LocalObservable(f.universe, f.system, tuple(a * x + b * y for x, y in zip(f.table, g.table)))


def join(f: LocalObservable, g: LocalObservable) -> LocalObservable:
    _check_same_system(f, g)
    return LocalObservable(f.universe, f.system, tuple(smax(x, y) for x, y in zip(f.table, g.table)))


def meet(f: LocalObservable, g: LocalObservable) -> LocalObservable:
    _check_same_system(f, g)
    return LocalObservable(f.universe, f.system, tuple(smin(x, y) for x, y in zip(f.table, g.table)))


def combine(f: LocalObservable, g: LocalObservable, op) -> LocalObservable:
    """``op`` is ``"join"``, ``"meet"`` or ``("affine", a, b)``."""
    if op == "join":
        return join(f, g)
    if op == "meet":
        return meet(f, g)
    if isinstance(op, tuple) and len(op) == 3 and op[0] == "affine":
        return affine(f, g, op[1], op[2])
    raise ValueError(f"unknown operation {op!r}")


def sup_norm(f: LocalObservable) -> Scalar:
    best = exact(0)
    for v in f.table:
        best = smax(best, sabs(v))
    return best


def is_nonnegative(f: LocalObservable) -> bool:
    return all(sign(v) >= 0 for v in f.table)


def measurable_in(f: LocalObservable, t: Iterable[int]) -> bool:
    """Whether ``f`` (on ``s``) does not depend on the sites of ``t - s``.

    Such an ``f`` is an observable of the larger system ``t`` seen inside
    the algebra of ``s``.
    """
    t = frozenset(t)
    if not f.system <= t:
        raise ValueError("t must contain the system of f")
    outside_t = f.universe.outside(t)
    proj = projection_codes(f.outside, outside_t, f.universe.q)
    seen: dict[int, Scalar] = {}
    for code, v in zip(proj, f.table):
        if code in seen and seen[code] != v:
            return False
        seen.setdefault(code, v)
    return True


def restrict_to(f: LocalObservable, t: Iterable[int]) -> LocalObservable:
    """Re-index an ``f`` measurable in ``t`` as an observable on ``t``."""
    t = frozenset(t)
    if not measurable_in(f, t):
        raise ValueError("observable depends on sites inside t")
    outside_t = f.universe.outside(t)
    proj = projection_codes(f.outside, outside_t, f.universe.q)
    table: list = [None] * f.universe.size(outside_t)
    for code, v in zip(proj, f.table):
        table[code] = v
    return LocalObservable(f.universe, t, tuple(table))


def extend_to(f: LocalObservable, s: Iterable[int]) -> LocalObservable:
    """View ``f`` on ``t`` as an element of the larger algebra of ``s <= t``."""
    s = frozenset(s)
    if not s <= f.system:
        raise ValueError("s must be contained in the system of f")
    outside_s = f.universe.outside(s)
    proj = projection_codes(outside_s, f.outside, f.universe.q)
    return LocalObservable(f.universe, s, tuple(f.table[c] for c in proj))
