"""Threads: consistent families of local states, one per system.

A thread assigns a state to every system of the region family such that
smaller systems see exactly what the dual morphisms produce from larger
ones.  With a top system present, the top component determines the rest.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .functionals import LocalFunctional, is_state
from .lattice import RegionFamily, Verdict, projection_codes
from .morphisms import MorphismFamily, ReferenceMeasure, dual
from .scalars import exact, sign

__all__ = [
    "Thread",
    "thread_from_top",
    "verify_thread",
    "restrict_state",
    "tl_identify",
    "marginal_thread",
]


@dataclass(frozen=True)
class Thread:
    family: RegionFamily
    components: Mapping[frozenset, LocalFunctional]

    def __post_init__(self):
        comps = {frozenset(k): v for k, v in dict(self.components).items()}
        missing = [sorted(r) for r in self.family if r not in comps]
        if missing:
            raise ValueError(f"thread lacks components for {missing}")
        for r, mu in comps.items():
            if mu.system != r:
                raise ValueError(f"component keyed {sorted(r)} lives on {sorted(mu.system)}")
        object.__setattr__(self, "components", comps)

    def __getitem__(self, r: Iterable[int]) -> LocalFunctional:
        return self.components[frozenset(r)]

    @property
    def top(self) -> LocalFunctional:
        return self.components[self.family.top]

    def replace(self, r: Iterable[int], mu: LocalFunctional) -> "Thread":
        comps = dict(self.components)
        comps[frozenset(r)] = mu
        return Thread(self.family, comps)

    def __hash__(self):
        return hash((self.family, tuple(self.components[r] for r in self.family)))


def thread_from_top(mu_top: LocalFunctional, fam: MorphismFamily, family: RegionFamily) -> Thread:
    """The unique thread whose top component is ``mu_top``."""
    if mu_top.system != family.top:
        raise ValueError("state must live on the top system")
    if not is_state(mu_top):
        raise ValueError("top component is not a state")
    return Thread(family, {s: dual(mu_top, s, fam) for s in family})


def verify_thread(thread: Thread, fam: MorphismFamily) -> Verdict:
    """Check ``mu_s == dual(mu_t, s)`` for every comparable pair.

    The witness names the pair and the outside configuration whose point
    indicator tells the two functionals apart.
    """
    for s, t in thread.family.pairs():
        expected = dual(thread[t], s, fam)
        got = thread[s]
        if got.weights != expected.weights:
            code = next(c for c, (a, b) in enumerate(zip(got.weights, expected.weights)) if a != b)
            return Verdict(False, {"s": sorted(s), "t": sorted(t), "config": code})
    return Verdict(True)


def restrict_state(mu: LocalFunctional, t: Iterable[int]) -> LocalFunctional:
    """Restrict a functional on ``s`` to the smaller algebra of ``t >= s``."""
    t = frozenset(t)
    if not mu.system <= t:
        raise ValueError(f"{sorted(t)} does not contain {sorted(mu.system)}")
    u = mu.universe
    out_t = u.outside(t)
    proj = projection_codes(mu.outside, out_t, u.q)
    weights: list = [exact(0)] * u.size(out_t)
    for y, w in zip(proj, mu.weights):
        weights[y] += w
    return LocalFunctional(u, t, tuple(weights))


def marginal_thread(weights, family: RegionFamily) -> Thread:
    """Family of marginals of a window distribution, one per system (unchecked)."""
    u = family.universe
    if isinstance(weights, ReferenceMeasure):
        weights = weights.weights
    weights = tuple(exact(w) for w in weights)
    if len(weights) != u.size(u.sites):
        raise ValueError("one weight per window configuration is required")
    if any(sign(w) < 0 for w in weights) or sum(weights, exact(0)) != 1:
        raise ValueError("window weights must form a probability vector")
    comps = {}
    for s in family:
        out = u.outside(s)
        m: list = [exact(0)] * u.size(out)
        for y, w in zip(projection_codes(u.sites, out, u.q), weights):
            m[y] += w
        comps[s] = LocalFunctional(u, s, tuple(m))
    return Thread(family, comps)


def tl_identify(weights, fam: MorphismFamily, family: RegionFamily) -> tuple[Thread, Verdict]:
    """Marginals of a full-window distribution and whether they form a thread under ``fam``."""
    thread = marginal_thread(weights, family)
    return thread, verify_thread(thread, fam)
