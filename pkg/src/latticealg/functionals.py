"""Linear functionals on a local algebra, represented by weight vectors.

At finite scale the dual of the sup-normed table space is the space of
weight vectors with the total-variation norm, so a functional is just a
signed weight per outside configuration.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .lattice import Configuration, Universe
from .observables import LocalObservable
from .scalars import Scalar, exact, sabs, sign

__all__ = [
    "LocalFunctional",
    "state",
    "uniform_state",
    "dirac",
    "is_state",
    "positive_and_normalised",
    "unit_norm_at_unit",
    "total_variation",
]


@dataclass(frozen=True)
class LocalFunctional:
    universe: Universe
    system: frozenset
    weights: tuple

    def __post_init__(self):
        system = self.universe.check_region(self.system)
        object.__setattr__(self, "system", system)
        weights = tuple(exact(w) for w in self.weights)
        expected = self.universe.size(self.outside)
        if len(weights) != expected:
            raise ValueError(f"{len(weights)} weights given, expected {expected}")
        object.__setattr__(self, "weights", weights)

    @property
    def outside(self) -> tuple[int, ...]:
        return self.universe.outside(self.system)

    def __call__(self, f: LocalObservable) -> Scalar:
        if f.universe != self.universe or f.system != self.system:
            raise ValueError("functional and observable live on different systems")
        return sum((w * v for w, v in zip(self.weights, f.table) if w != 0 and v != 0), exact(0))

    pair = __call__

    def __repr__(self) -> str:
        return f"LocalFunctional(system={sorted(self.system)}, weights=[{', '.join(map(str, self.weights))}])"


def total_variation(phi: LocalFunctional) -> Scalar:
    return sum((sabs(w) for w in phi.weights), exact(0))


def positive_and_normalised(phi: LocalFunctional) -> bool:
    return all(sign(w) >= 0 for w in phi.weights) and sum(phi.weights, exact(0)) == 1


def unit_norm_at_unit(phi: LocalFunctional) -> bool:
    """``||phi|| == phi(1) == 1``, with the total-variation norm."""
    return total_variation(phi) == 1 and sum(phi.weights, exact(0)) == 1


def is_state(phi: LocalFunctional) -> bool:
    """Positive and normalised, cross-checked against ``||phi|| = phi(1) = 1``."""
    by_order = positive_and_normalised(phi)
    if by_order != unit_norm_at_unit(phi):  # pragma: no cover - would be an arithmetic bug
        raise AssertionError("order and norm characterisations of states disagree")
    return by_order


def state(universe: Universe, system: Iterable[int], weights) -> LocalFunctional:
    """Build a functional and insist that it is a state."""
    phi = LocalFunctional(universe, frozenset(system), tuple(weights))
    if not is_state(phi):
        raise ValueError("weights do not define a state")
    return phi


def uniform_state(universe: Universe, system: Iterable[int] = ()) -> LocalFunctional:
    system = frozenset(system)
    n = universe.size(universe.outside(system))
    return LocalFunctional(universe, system, (exact(1) / n,) * n)


def dirac(universe: Universe, system: Iterable[int], x: Configuration | int) -> LocalFunctional:
    """Point mass at an outside configuration (a ``Configuration`` or a code)."""
    system = frozenset(system)
    outside = universe.outside(system)
    n = universe.size(outside)
    if isinstance(x, Configuration):
        if x.sites != outside or x.q != universe.q:
            raise ValueError("point must be a configuration on the outside of the system")
        code = x.code
    else:
        code = int(x)
        if not 0 <= code < n:
            raise ValueError(f"code {code} out of range")
    return LocalFunctional(universe, system, tuple(1 if c == code else 0 for c in range(n)))
