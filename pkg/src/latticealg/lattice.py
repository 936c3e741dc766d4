"""Finite lattice window, regions, configurations and the region family.

The infinite lattice is truncated to ``n`` sites.  A nonempty *boundary
core* ``B`` stands in for the infinite surround: systems are subsets of the
interior ``sites - B``, so the outside of every system contains ``B`` and the
largest system (the interior, called the top) still has a nontrivial
outside.

Configurations on a region are stored as a single integer code in
mixed-radix form: the lowest site index is the least significant digit.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple, Sequence

Region = frozenset

__all__ = [
    "Region",
    "Universe",
    "Configuration",
    "RegionFamily",
    "Verdict",
    "region",
    "encode",
    "decode",
    "enumerate_configurations",
    "merge_configurations",
    "restrict_configuration",
    "verify_directed_family",
    "projection_codes",
    "fixture_a",
    "fixture_b",
]


class Verdict(NamedTuple):
    """Outcome of a check: ``ok`` plus the first witness of failure, if any."""

    ok: bool
    witness: object = None

    def __bool__(self) -> bool:
        return self.ok


def region(sites: Iterable[int] = ()) -> frozenset:
    return frozenset(int(i) for i in sites)


def encode(values: Sequence[int], q: int) -> int:
    code = 0
    for v in reversed(values):
        if not 0 <= v < q:
            raise ValueError(f"site value {v} outside 0..{q - 1}")
        code = code * q + v
    return code


def decode(code: int, length: int, q: int) -> tuple[int, ...]:
    values = []
    for _ in range(length):
        code, v = divmod(code, q)
        values.append(v)
    return tuple(values)


@dataclass(frozen=True)
class Configuration:
    """A configuration on ``sites`` (sorted), identified by its code."""

    sites: tuple[int, ...]
    q: int
    code: int

    def __post_init__(self):
        if tuple(sorted(set(self.sites))) != tuple(self.sites):
            raise ValueError("configuration sites must be sorted and distinct")
        if not 0 <= self.code < self.q ** len(self.sites):
            raise ValueError(f"code {self.code} out of range for {len(self.sites)} sites")

    @classmethod
    def from_mapping(cls, mapping: Mapping[int, int], q: int) -> "Configuration":
        sites = tuple(sorted(mapping))
        return cls(sites, q, encode([mapping[i] for i in sites], q))

    @classmethod
    def from_values(cls, sites: Iterable[int], values: Sequence[int], q: int) -> "Configuration":
        sites = tuple(sites)
        return cls.from_mapping(dict(zip(sites, values, strict=True)), q)

    @property
    def region(self) -> frozenset:
        return frozenset(self.sites)

    @property
    def values(self) -> tuple[int, ...]:
        return decode(self.code, len(self.sites), self.q)

    def as_dict(self) -> dict[int, int]:
        return dict(zip(self.sites, self.values))

    def __getitem__(self, site: int) -> int:
        return self.as_dict()[site]


def enumerate_configurations(sites: Iterable[int], q: int) -> list[Configuration]:
    ordered = tuple(sorted(set(sites)))
    return [Configuration(ordered, q, c) for c in range(q ** len(ordered))]


def merge_configurations(a: Configuration, b: Configuration) -> Configuration:
    if a.q != b.q:
        raise ValueError("cannot merge configurations with different q")
    if a.region & b.region:
        raise ValueError(f"overlapping regions {sorted(a.region & b.region)}")
    mapping = a.as_dict()
    mapping.update(b.as_dict())
    return Configuration.from_mapping(mapping, a.q)


def restrict_configuration(c: Configuration, sub: Iterable[int]) -> Configuration:
    sub = frozenset(sub)
    if not sub <= c.region:
        raise ValueError(f"sites {sorted(sub - c.region)} not in configuration region")
    values = c.as_dict()
    return Configuration.from_mapping({i: values[i] for i in sub}, c.q)


@functools.lru_cache(maxsize=4096)
def projection_codes(sites: tuple[int, ...], sub: tuple[int, ...], q: int) -> tuple[int, ...]:
    """For every code on ``sites`` (ascending), the code of its restriction to ``sub``."""
    positions = [sites.index(i) for i in sub]
    weights = [q**k for k in range(len(sub))]
    n = len(sites)
    out = []
    for code in range(q**n):
        digits = decode(code, n, q)
        out.append(sum(digits[p] * w for p, w in zip(positions, weights)))
    return tuple(out)


@dataclass(frozen=True)
class Universe:
    n_sites: int
    q: int
    edges: frozenset = frozenset()
    boundary_core: frozenset = frozenset()

    def __post_init__(self):
        if self.n_sites < 1:
            raise ValueError("universe needs at least one site")
        if self.q < 2:
            raise ValueError("q must be at least 2")
        edges = frozenset(tuple(sorted((int(i), int(j)))) for i, j in self.edges)
        for i, j in edges:
            if i == j or not (0 <= i < self.n_sites and 0 <= j < self.n_sites):
                raise ValueError(f"invalid edge ({i}, {j})")
        object.__setattr__(self, "edges", edges)
        core = region(self.boundary_core)
        if not core:
            raise ValueError("boundary core must be nonempty")
        if not core < frozenset(self.sites):
            raise ValueError("boundary core must be a proper subset of the sites")
        object.__setattr__(self, "boundary_core", core)

    @property
    def sites(self) -> tuple[int, ...]:
        return tuple(range(self.n_sites))

    @property
    def interior(self) -> frozenset:
        return frozenset(self.sites) - self.boundary_core

    def outside(self, system: Iterable[int]) -> tuple[int, ...]:
        system = frozenset(system)
        return tuple(i for i in self.sites if i not in system)

    def check_region(self, sites: Iterable[int]) -> frozenset:
        r = region(sites)
        bad = sorted(r - frozenset(self.sites))
        if bad:
            raise ValueError(f"sites {bad} not in universe")
        return r

    def configurations(self, sites: Iterable[int] | None = None) -> list[Configuration]:
        return enumerate_configurations(self.sites if sites is None else sites, self.q)

    def size(self, sites: Iterable[int]) -> int:
        return self.q ** len(frozenset(sites))

    @classmethod
    def path(cls, n_sites: int, q: int, boundary_core: Iterable[int]) -> "Universe":
        return cls(n_sites, q, frozenset((i, i + 1) for i in range(n_sites - 1)), region(boundary_core))

    @classmethod
    def cycle(cls, n_sites: int, q: int, boundary_core: Iterable[int]) -> "Universe":
        edges = {(i, (i + 1) % n_sites) for i in range(n_sites)} if n_sites > 2 else {(0, 1)}
        return cls(n_sites, q, frozenset(edges), region(boundary_core))


def _region_key(r: frozenset):
    return (len(r), tuple(sorted(r)))


@dataclass(frozen=True)
class RegionFamily:
    """Finite family of systems, ordered by inclusion (the index set)."""

    universe: Universe
    regions: tuple[frozenset, ...]

    def __post_init__(self):
        rs = []
        for r in self.regions:
            r = self.universe.check_region(r)
            if r & self.universe.boundary_core:
                raise ValueError(f"region {sorted(r)} meets the boundary core")
            if r not in rs:
                rs.append(r)
        object.__setattr__(self, "regions", tuple(sorted(rs, key=_region_key)))

    @property
    def top(self) -> frozenset:
        return self.universe.interior

    def __contains__(self, r) -> bool:
        return frozenset(r) in self.regions

    def __iter__(self):
        return iter(self.regions)

    def __len__(self) -> int:
        return len(self.regions)

    def pairs(self) -> list[tuple[frozenset, frozenset]]:
        """All comparable pairs ``(s, t)`` with ``s <= t``."""
        return [(s, t) for s in self.regions for t in self.regions if s <= t]

    def chains(self) -> list[tuple[frozenset, frozenset, frozenset]]:
        return [
            (r, s, t)
            for r in self.regions
            for s in self.regions
            for t in self.regions
            if r <= s <= t
        ]


def verify_directed_family(family: RegionFamily) -> Verdict:
    """Check the family contains the top and is closed under pairwise union."""
    if family.top not in family.regions:
        return Verdict(False, {"missing_top": sorted(family.top)})
    for a, b in combinations(family.regions, 2):
        if a | b not in family.regions:
            return Verdict(False, {"left": sorted(a), "right": sorted(b), "union": sorted(a | b)})
    return Verdict(True)


def fixture_a() -> RegionFamily:
    """Path 0-1-2-3, q=2, core {3}, chain of systems up to {0,1,2}."""
    u = Universe.path(4, 2, [3])
    return RegionFamily(u, (region(), region([0]), region([0, 1]), region([0, 1, 2])))


def fixture_b() -> RegionFamily:
    """Path 0-1-2-3-4, q=2, core {3,4}, chain of systems up to {0,1,2}."""
    u = Universe.path(5, 2, [3, 4])
    return RegionFamily(u, (region(), region([0]), region([0, 1]), region([0, 1, 2])))
