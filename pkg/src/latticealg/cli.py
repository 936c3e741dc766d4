"""Command-line front end.

    latticealg <task> <scenario.json> [--format json|csv] [--out PATH]

Exit codes: 0 when every check of the task passes, 1 when a check fails
(the report names it and carries a witness), 2 on input errors.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from importlib import resources
from typing import Any, Callable

import jsonschema

from .functionals import is_state
from .geometry import (
    StatePolytope,
    alternative_decompositions,
    choquet_decompose,
    full_simplex,
    is_simplex,
    membership,
)
from .gibbs import (
    density_observables,
    dlr_verify,
    gibbs_boundary_state,
    gibbs_decomposition_check,
    level_set_probabilities,
    stationary_analysis,
)
from .lattice import RegionFamily, verify_directed_family
from .morphisms import MorphismFamily, verify_morphism_axioms
from .scalars import exact, fmt
from .serialization import (
    breakdown_to_json,
    family_from_json,
    family_to_json,
    functional_from_json,
    hamiltonian_from_json,
    hamiltonian_to_json,
    polytope_from_json,
    reference_from_json,
    reference_to_json,
    symmetry_from_json,
    thread_from_json,
    thread_to_json,
    verdict_to_json,
    weights_to_json,
)
from .symmetry import SymmetryGroup, boundary_permutation, breakdown_report, invariant_states, reference_invariance
from .threads import thread_from_top, verify_thread

__all__ = ["main", "run", "export", "to_csv", "load_scenario", "InputError", "TASKS"]


class InputError(Exception):
    """Unreadable, malformed or inconsistent scenario."""


def _schema() -> dict:
    text = resources.files("latticealg").joinpath("schemas/scenario.schema.json").read_text()
    return json.loads(text)


def _validate(instance: Any, schema: dict, ref: str | None = None) -> None:
    if ref is not None:
        schema = {"$ref": f"#/$defs/{ref}", "$defs": schema["$defs"]}
    validator = jsonschema.Draft202012Validator(schema)
    error = jsonschema.exceptions.best_match(validator.iter_errors(instance))
    if error is not None:
        where = "/".join(str(p) for p in error.absolute_path) or "<root>"
        raise InputError(f"schema violation at {where}: {error.message}")


def load_scenario(path: str, task: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: malformed JSON: {exc.msg}") from exc
    schema = _schema()
    _validate(data, schema)
    if data.get("task", task) != task:
        raise InputError(f"scenario is for task {data['task']!r}, not {task!r}")
    _validate(data.get("params", {}), schema, f"params-{task}")
    return data


def _check(name: str, verdict) -> dict:
    return {"invariant": name, **verdict_to_json(verdict)}


def _plain_check(name: str, ok: bool, witness=None) -> dict:
    return {"invariant": name, "ok": bool(ok), "witness": witness}


# Each task takes (scenario, family, fam) and returns (checks, data).


def _task_verify_axioms(sc, family: RegionFamily, fam: MorphismFamily):
    report = verify_morphism_axioms(fam, family)
    checks = [
        _check("directed_family", verify_directed_family(family)),
        _check("i", report.identity_on_measurable),
        _check("ii", report.identity_on_same_system),
        _check("iii", report.composition),
    ]
    return checks, {}


def _task_thread_check(sc, family, fam):
    params = sc.get("params", {})
    u = family.universe
    if "top_state" in params:
        top = functional_from_json({"system": sorted(family.top), "weights": params["top_state"]}, u)
        thread = thread_from_top(top, fam, family)
    else:
        thread = thread_from_json(params["thread"], family)
    bad = [sorted(r) for r in family if not is_state(thread[r])]
    checks = [
        _plain_check("components_are_states", not bad, {"systems": bad} if bad else None),
        _check("thread", verify_thread(thread, fam)),
    ]
    return checks, {"thread": thread_to_json(thread)}


def _polytope(params: dict, key: str, dim: int) -> StatePolytope:
    K = polytope_from_json(params[key]) if key in params else full_simplex(dim)
    if K.dim != dim:
        raise ValueError(f"{key} has dimension {K.dim}, the boundary core has {dim} configurations")
    return K


def _task_choquet(sc, family, fam):
    params = sc["params"]
    u = family.universe
    dim = u.size(u.boundary_core)
    K = _polytope(params, "polytope", dim)
    phi = tuple(exact(x) for x in params["state"])
    if len(phi) != dim:
        raise ValueError(f"state has {len(phi)} entries, expected {dim}")
    data = {
        "vertices": [[fmt(x) for x in v] for v in K.vertices],
        "simplex": is_simplex(K),
    }
    if not membership(phi, K):
        return [_plain_check("membership", False, {"state": [fmt(x) for x in phi]})], data
    dec = choquet_decompose(phi, K)
    data["unique"] = dec.unique
    data["decomposition"] = weights_to_json(dec.weights)
    if not dec.unique:
        data["alternatives"] = [[fmt(w) for w in z.weights] for z in alternative_decompositions(phi, K)]
    resultant = dec.state.resultant()
    checks = [
        _plain_check("membership", True),
        _plain_check("centroid", resultant == phi, None if resultant == phi else {"resultant": [fmt(x) for x in resultant]}),
    ]
    return checks, data


def _task_symmetry_breakdown(sc, family, fam):
    params = sc["params"]
    u = family.universe
    gens = [symmetry_from_json(s, u) for s in params["symmetries"]]
    G = SymmetryGroup(gens, u)
    K2 = _polytope(params, "available", u.size(u.boundary_core))
    data: dict = {"group_order": len(G)}
    invariance = reference_invariance(G, fam)
    if not invariance.ok:
        return [_check("reference_invariance", invariance)], data
    K1 = invariant_states(G, K2, fam)
    report = breakdown_report(K1, K2)
    unfixed = [
        [fmt(x) for x in v]
        for v in K1.vertices
        if any(tuple(v[p] for p in boundary_permutation(g)) != v for g in G)
    ]
    checks = [
        _plain_check("reference_invariance", True),
        _plain_check("fixed_points", not unfixed, {"vertices": unfixed} if unfixed else None),
    ]
    data["breakdown"] = breakdown_to_json(report)
    return checks, data


def _task_dlr_check(sc, family, fam):
    params = sc["params"]
    H = hamiltonian_from_json(params["hamiltonian"], family.universe)
    checks, runs = [], []
    for beta in params["betas"]:
        rep = dlr_verify(H, exact(beta), family)
        runs.append(
            {
                "beta": fmt(rep.beta),
                "axioms": {
                    "i": verdict_to_json(rep.axioms.identity_on_measurable),
                    "ii": verdict_to_json(rep.axioms.identity_on_same_system),
                    "iii": verdict_to_json(rep.axioms.composition),
                },
                "own_thread": verdict_to_json(rep.own_thread),
                "uniform_thread": verdict_to_json(rep.uniform_thread),
            }
        )
        witness = None
        if not rep.ok:
            witness = {"axioms": runs[-1]["axioms"], "own_thread": runs[-1]["own_thread"]}
        checks.append(_plain_check(f"dlr[beta={fmt(rep.beta)}]", rep.ok, witness))
    return checks, {"hamiltonian": hamiltonian_to_json(H), "runs": runs}


def _task_stationary(sc, family, fam):
    params = sc["params"]
    H = hamiltonian_from_json(params["hamiltonian"], family.universe)
    report = stationary_analysis(density_observables(H))
    ens, K = report.ensemble, report.polytope
    bad_subsets = [list(F) for F, ok in report.subset_checks if not ok]
    checks = [
        _plain_check("simplex", report.simplex),
        _plain_check("vertices_are_microcanonical", report.vertices_are_mc),
        _plain_check(
            "spectrum_size",
            report.spectrum_size == len(ens),
            None if report.spectrum_size == len(ens) else {"vertices": report.spectrum_size, "level_sets": len(ens)},
        ),
        _plain_check("subset_indicators", not bad_subsets, {"subsets": bad_subsets} if bad_subsets else None),
        _plain_check("boolean_lattice", report.boolean_lattice),
    ]
    levels = []
    for k, ((g, n), codes) in enumerate(zip(ens.values, ens.level_sets)):
        levels.append(
            {
                "level_id": k,
                "vertex_id": K.index(ens.states[k]),
                "energy_density": fmt(g),
                "particle_density": fmt(n),
                "configs": list(codes),
            }
        )
    data: dict = {"spectrum_size": report.spectrum_size, "subset_checks": len(report.subset_checks), "level_sets": levels}
    if "beta" in params:
        beta = exact(params["beta"])
        verdict = gibbs_decomposition_check(H, beta, report)
        checks.append(_check("gibbs_decomposition", verdict))
        probs = level_set_probabilities(gibbs_boundary_state(H, beta), ens)
        data["gibbs"] = {"beta": fmt(beta), "level_set_probabilities": [fmt(p) for p in probs]}
    return checks, data


TASKS: dict[str, Callable] = {
    "verify-axioms": _task_verify_axioms,
    "thread-check": _task_thread_check,
    "choquet": _task_choquet,
    "symmetry-breakdown": _task_symmetry_breakdown,
    "dlr-check": _task_dlr_check,
    "stationary": _task_stationary,
}


def run(task: str, path: str) -> dict:
    """Load and execute a scenario; raises ``InputError`` on bad input."""
    sc = load_scenario(path, task)
    try:
        family = family_from_json(sc["universe"])
        fam = MorphismFamily(reference_from_json(sc.get("reference"), family.universe))
        checks, data = TASKS[task](sc, family, fam)
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"invalid scenario: {exc}") from exc
    failed = [c["invariant"] for c in checks if not c["ok"]]
    return {
        "task": task,
        "ok": not failed,
        "failed": failed,
        "universe": family_to_json(family),
        "reference": reference_to_json(fam.reference),
        "checks": checks,
        **data,
    }


def _rows(report: dict) -> tuple[list[str], list[list]]:
    if "decomposition" in report:
        return ["vertex_id", "weight_num", "weight_den"], [
            [r["vertex_id"], r["num"], r["den"]] for r in report["decomposition"]
        ]
    if "level_sets" in report:
        header = ["level_id", "vertex_id", "energy_density", "particle_density", "size", "configs"]
        return header, [
            [r["level_id"], r["vertex_id"], r["energy_density"], r["particle_density"], len(r["configs"]),
             " ".join(str(c) for c in r["configs"])]
            for r in report["level_sets"]
        ]
    if "breakdown" in report:
        header = ["vertex_id", "verdict", "available_vertex_id", "weight_num", "weight_den"]
        rows = []
        for i, e in enumerate(report["breakdown"]["entries"]):
            if e["decomposition"] is None:
                rows.append([i, e["verdict"], "", "", ""])
            else:
                rows.extend([i, e["verdict"], r["vertex_id"], r["num"], r["den"]] for r in e["decomposition"])
        return header, rows
    return ["invariant", "ok"], [[c["invariant"], str(c["ok"]).lower()] for c in report.get("checks", [])]


def to_csv(report: dict) -> str:
    header, rows = _rows(report)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def export(report: dict, fmt_name: str = "json", out: str | None = None) -> str:
    """Render ``report``; write it to ``out`` when given.  Returns the text."""
    if fmt_name == "json":
        text = json.dumps(report, indent=2) + "\n"
    elif fmt_name == "csv":
        text = to_csv(report)
    else:
        raise ValueError(f"unknown format {fmt_name!r}")
    if out is not None:
        try:
            with open(out, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {out}: {exc.strerror or exc}") from exc
    return text


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="latticealg",
        description="Exact checks on finite lattice scenarios.",
        epilog="exit status: 0 all checks pass, 1 a check failed, 2 bad input",
    )
    p.add_argument("task", choices=sorted(TASKS))
    p.add_argument("scenario", help="scenario JSON file")
    p.add_argument("--format", choices=["json", "csv"], default="json", help="report format (default: json)")
    p.add_argument("--out", default=None, help="write the report here instead of stdout")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        report = run(args.task, args.scenario)
        text = export(report, args.format, args.out)
    except InputError as exc:
        print(f"latticealg: error: {exc}", file=sys.stderr)
        return 2
    if args.out is None:
        sys.stdout.write(text)
    return 0 if report["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
