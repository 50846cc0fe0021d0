"""JSON encodings of lattices, posets, systems, morphisms and models.

Lattice:   {"elements": [...], "covers": [[x, y], ...]}  or  {"elements": [...], "leq": [...]}
Poset:     {"points": [...], "leq": [[x, y], ...]}
System:    {"lattice": <lattice>, "points": [...], "sat": {point: [elements...]}}
Morphism:  {"f1": {x: y, ...}, "f2": {b: a, ...}}
Model:     {"worlds": [...], "leq": [[w, u], ...], "val": {world: [atoms...]}}

A pair ``[x, y]`` always means ``x <= y``.  Writers emit keys in the order
above so output is byte-stable.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .duality import SpectrumPoset
from .errors import InputError
from .kripke import KripkeModel
from .lattice import (
    BoundedDistributiveLattice,
    HeytingAlgebra,
    HomCandidate,
    LatticeSpec,
    build_lattice,
    residuate,
)
from .posets import FinitePoset
from .topsys import ITopSystem, SystemMorphism, system_from_sets


def load_json(path: str | Path) -> Any:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from exc


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def _require(doc: Any, key: str, kind: type):
    if not isinstance(doc, dict) or key not in doc:
        raise InputError(f"missing key {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise InputError(f"{key!r} must be a {kind.__name__}")
    return value


def _pairs(raw: list, key: str) -> list[tuple[str, str]]:
    out = []
    for pair in raw:
        if not isinstance(pair, list) or len(pair) != 2 or not all(isinstance(x, str) for x in pair):
            raise InputError(f"entries of {key!r} must be [name, name] pairs")
        out.append((pair[0], pair[1]))
    return out


def lattice_spec_from_json(doc: Any) -> LatticeSpec:
    elements = _require(doc, "elements", list)
    if "covers" in doc and "leq" in doc:
        raise InputError("give either 'covers' or 'leq', not both")
    if "covers" in doc:
        return LatticeSpec(elements, _pairs(_require(doc, "covers", list), "covers"), covers=True)
    if "leq" in doc:
        return LatticeSpec(elements, _pairs(_require(doc, "leq", list), "leq"), covers=False)
    raise InputError("lattice needs 'covers' or 'leq'")


def algebra_from_json(doc: Any) -> HeytingAlgebra:
    return residuate(build_lattice(lattice_spec_from_json(doc)))


def lattice_to_json(L: BoundedDistributiveLattice | HeytingAlgebra) -> dict:
    lat = L.lattice if isinstance(L, HeytingAlgebra) else L
    return {
        "elements": list(lat.names),
        "covers": [[lat.names[x], lat.names[y]] for x, y in lat.covers()],
    }


def poset_from_json(doc: Any) -> FinitePoset:
    points = _require(doc, "points", list)
    leq = _pairs(doc.get("leq", []), "leq") if isinstance(doc, dict) else []
    return FinitePoset.from_pairs(points, leq)


def poset_to_json(P: FinitePoset) -> dict:
    return {"points": list(P.names), "leq": [list(p) for p in P.pairs()]}


def spectrum_to_json(S: SpectrumPoset) -> dict:
    doc = poset_to_json(S.poset)
    doc["elements"] = list(S.algebra.names)
    doc["bits"] = {name: list(h.bits) for name, h in zip(S.names, S.homs)}
    doc["filters"] = {name: [a for a, b in zip(S.algebra.names, h.bits) if b]
                      for name, h in zip(S.names, S.homs)}
    return doc


def system_from_json(doc: Any) -> ITopSystem:
    A = algebra_from_json(_require(doc, "lattice", dict))
    points = _require(doc, "points", list)
    sat = _require(doc, "sat", dict)
    for p, elems in sat.items():
        if p not in points:
            raise InputError(f"'sat' mentions unknown point {p!r}")
        if not isinstance(elems, list):
            raise InputError(f"'sat' entry of {p!r} must be a list")
    return system_from_sets(points, A, sat)


def system_to_json(S: ITopSystem) -> dict:
    return {
        "lattice": lattice_to_json(S.algebra),
        "points": list(S.points),
        "sat": {p: [a for a, v in zip(S.algebra.names, row) if v]
                for p, row in zip(S.points, S.sat)},
    }


def morphism_from_json(doc: Any, source: ITopSystem, target: ITopSystem) -> SystemMorphism:
    f1 = _require(doc, "f1", dict)
    f2 = _require(doc, "f2", dict)
    try:
        point_map = tuple(target.points.index(f1[x]) for x in source.points)
    except (KeyError, ValueError) as exc:
        raise InputError(f"'f1' must map every source point to a target point ({exc})") from exc
    hom = HomCandidate.from_names(target.algebra, source.algebra, f2)
    return SystemMorphism(source, target, point_map, hom)


def morphism_to_json(m: SystemMorphism) -> dict:
    return {
        "f1": {m.source.points[x]: m.target.points[y] for x, y in enumerate(m.f1)},
        "f2": m.f2.as_names(),
    }


def model_from_json(doc: Any) -> KripkeModel:
    worlds = _require(doc, "worlds", list)
    frame = FinitePoset.from_pairs(worlds, _pairs(doc.get("leq", []), "leq"))
    val = doc.get("val", {})
    if not isinstance(val, dict):
        raise InputError("'val' must be an object")
    atoms = doc.get("atoms")
    return KripkeModel.from_sets(frame, val, atoms)


def model_to_json(M: KripkeModel) -> dict:
    return {
        "worlds": list(M.worlds),
        "leq": [list(p) for p in M.frame.pairs()],
        "val": {w: M.true_atoms(w) for w in M.worlds},
    }


def load(path: str | Path):
    """Sniff the structure kind from the keys of a JSON file."""
    doc = load_json(path)
    if not isinstance(doc, dict):
        raise InputError(f"{path}: expected a JSON object")
    if "lattice" in doc:
        return system_from_json(doc)
    if "elements" in doc:
        return algebra_from_json(doc)
    if "worlds" in doc:
        return model_from_json(doc)
    if "points" in doc:
        return poset_from_json(doc)
    raise InputError(f"{path}: cannot tell what structure this is")
