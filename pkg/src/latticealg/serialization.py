"""JSON encodings of the package's values.

Rationals travel as strings ``"p/q"`` (plain integers are accepted on
input).  Boltzmann field elements are written as sympy expressions in
``exp(-1/D)``; they are output-only.
"""
from __future__ import annotations

from typing import Any

from .functionals import LocalFunctional
from .geometry import CxState, StatePolytope
from .gibbs import Hamiltonian, gibbs_reference
from .lattice import RegionFamily, Universe, Verdict
from .morphisms import ReferenceMeasure, explicit_reference, uniform_reference
from .observables import LocalObservable
from .quasilocal import QuasilocalElement
from .scalars import exact, fmt, numerator_denominator
from .symmetry import BreakdownReport, LatticeSymmetry
from .threads import Thread

__all__ = [
    "family_to_json",
    "family_from_json",
    "observable_to_json",
    "observable_from_json",
    "reference_to_json",
    "reference_from_json",
    "hamiltonian_to_json",
    "hamiltonian_from_json",
    "functional_to_json",
    "functional_from_json",
    "thread_to_json",
    "thread_from_json",
    "quasilocal_to_json",
    "quasilocal_from_json",
    "polytope_to_json",
    "polytope_from_json",
    "symmetry_to_json",
    "symmetry_from_json",
    "verdict_to_json",
    "weights_to_json",
    "breakdown_to_json",
]


def _sites(xs) -> list[int]:
    return sorted(int(i) for i in xs)


def _scalars(xs) -> list[str]:
    return [fmt(x) for x in xs]


def family_to_json(family: RegionFamily) -> dict:
    u = family.universe
    return {
        "q": u.q,
        "sites": u.n_sites,
        "edges": [list(e) for e in sorted(u.edges)],
        "boundary_core": _sites(u.boundary_core),
        "regions": [_sites(r) for r in family],
    }


def family_from_json(data: dict) -> RegionFamily:
    u = Universe(
        int(data["sites"]),
        int(data["q"]),
        frozenset(tuple(e) for e in data.get("edges", [])),
        frozenset(data["boundary_core"]),
    )
    regions = data.get("regions")
    if regions is None:
        regions = [[], sorted(u.interior)]
    return RegionFamily(u, tuple(frozenset(r) for r in regions))


def observable_to_json(f: LocalObservable) -> dict:
    return {"system": _sites(f.system), "table": _scalars(f.table)}


def observable_from_json(data: dict, universe: Universe) -> LocalObservable:
    return LocalObservable(universe, frozenset(data["system"]), tuple(exact(v) for v in data["table"]))


def hamiltonian_to_json(H: Hamiltonian) -> dict:
    return {
        "field": [_scalars(row) for row in H.field],
        "couplings": [
            {"edge": list(e), "matrix": [_scalars(row) for row in m]} for e, m in sorted(H.couplings.items())
        ],
    }


def hamiltonian_from_json(data: dict, universe: Universe) -> Hamiltonian:
    if data.get("kind") == "lattice_gas":
        return Hamiltonian.lattice_gas(
            universe,
            exact(data.get("coupling", -1)),
            exact(data.get("chemical_potential", 0)),
            edges=[tuple(e) for e in data["edges"]] if "edges" in data else None,
        )
    field = data.get("field") or ()
    couplings = {tuple(c["edge"]): c["matrix"] for c in data.get("couplings", [])}
    return Hamiltonian(universe, tuple(tuple(row) for row in field), couplings)


def reference_to_json(nu: ReferenceMeasure) -> dict:
    if nu.kind == "uniform":
        return {"kind": "uniform"}
    if nu.kind == "gibbs":
        return {
            "kind": "gibbs",
            "beta": fmt(nu.params["beta"]),
            "hamiltonian": hamiltonian_to_json(nu.params["hamiltonian"]),
        }
    return {"kind": "explicit", "weights": _scalars(nu.weights)}


def reference_from_json(data: dict | None, universe: Universe) -> ReferenceMeasure:
    data = data or {"kind": "uniform"}
    kind = data.get("kind")
    if kind == "uniform":
        return uniform_reference(universe)
    if kind == "gibbs":
        return gibbs_reference(hamiltonian_from_json(data["hamiltonian"], universe), exact(data["beta"]))
    if kind == "explicit":
        return explicit_reference(universe, tuple(exact(w) for w in data["weights"]))
    raise ValueError(f"unknown reference kind {kind!r}")


def functional_to_json(mu: LocalFunctional) -> dict:
    return {"system": _sites(mu.system), "weights": _scalars(mu.weights)}


def functional_from_json(data: dict, universe: Universe) -> LocalFunctional:
    return LocalFunctional(universe, frozenset(data["system"]), tuple(exact(w) for w in data["weights"]))


def thread_to_json(thread: Thread) -> dict:
    return {"components": [functional_to_json(thread[r]) for r in thread.family]}


def thread_from_json(data: dict, family: RegionFamily) -> Thread:
    comps = {}
    for c in data["components"]:
        mu = functional_from_json(c, family.universe)
        comps[mu.system] = mu
    return Thread(family, comps)


def quasilocal_to_json(q: QuasilocalElement) -> dict:
    return {"summands": [observable_to_json(f) for f in q.summands]}


def quasilocal_from_json(data: dict, family: RegionFamily) -> QuasilocalElement:
    return QuasilocalElement(
        family, tuple(observable_from_json(s, family.universe) for s in data["summands"])
    )


def polytope_to_json(K: StatePolytope) -> dict:
    return {"generators": [_scalars(v) for v in K.generators], "vertices": [_scalars(v) for v in K.vertices]}


def polytope_from_json(data: dict) -> StatePolytope:
    return StatePolytope([tuple(exact(x) for x in g) for g in data["generators"]])


def symmetry_to_json(a: LatticeSymmetry) -> dict:
    return {"site_perm": list(a.site_perm), "state_perm": list(a.state_perm)}


def symmetry_from_json(data: dict, universe: Universe) -> LatticeSymmetry:
    return LatticeSymmetry(universe, tuple(data["site_perm"]), tuple(data["state_perm"]))


def _plain(x: Any):
    if isinstance(x, (frozenset, set)):
        return _sites(x)
    if isinstance(x, tuple):
        return [_plain(v) for v in x]
    if isinstance(x, list):
        return [_plain(v) for v in x]
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    return x


def verdict_to_json(v: Verdict) -> dict:
    return {"ok": bool(v.ok), "witness": _plain(v.witness)}


def weights_to_json(weights) -> list[dict]:
    """Rows ``{"vertex_id", "num", "den"}`` for a weight vector over vertices."""
    rows = []
    for i, w in enumerate(weights):
        num, den = numerator_denominator(w)
        rows.append({"vertex_id": i, "num": num, "den": den})
    return rows


def cx_state_to_json(zeta: CxState) -> list[dict]:
    return weights_to_json(zeta.weights)


def breakdown_to_json(report: BreakdownReport) -> dict:
    return {
        "invariant_vertices": [_scalars(v) for v in report.invariant.vertices],
        "available_vertices": [_scalars(v) for v in report.available.vertices],
        "entries": [
            {
                "vertex": _scalars(e.vertex),
                "verdict": e.verdict,
                "decomposition": None if e.decomposition is None else cx_state_to_json(e.decomposition),
            }
            for e in report.entries
        ],
        "broken": report.broken,
    }
