"""JSON round-trip for complexes and graph descriptions.

Complex layout::

    {"name": ..., "maxdim": n, "group": <descriptor>,
     "generators": {"1": [...], "2": [...], ...},
     "phi": {x: label}, "relators": {r: "x x y^-1"},
     "boundaries": {"3": {g: [[r, eps, "word"], ...]}, "4": {g: {y: {label: coeff}}}},
     "lift": {...} | null, "meta": {...}}
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .crossed import ComplexError, CrossedComplex, Dim2Elem, ModuleElem, lift_from_json
from .groups import (CyclicGroup, GraphSpec, Group, GroupRingElem, group_from_descriptor,
                     named_group)
from .words import Word


def module_to_json(m: ModuleElem) -> dict:
    G = m.group
    return {x: {G.format(g): c for g, c in r.terms.items()} for x, r in m.terms.items()}


def module_from_json(G: Group, data: Mapping) -> ModuleElem:
    terms = {}
    for x, coeffs in data.items():
        r: dict = {}
        for lab, c in coeffs.items():
            g = G.parse(lab)
            r[g] = r.get(g, 0) + int(c)
        terms[x] = GroupRingElem(G, r)
    return ModuleElem(G, terms)


def complex_to_json(C: CrossedComplex) -> dict:
    G = C.group
    boundaries: dict[str, Any] = {}
    for n in range(3, C.maxdim + 1):
        bd = C.boundaries.get(n, {})
        if n == 3:
            boundaries["3"] = {x: bd[x].to_json() for x in C.basis(3)}
        else:
            boundaries[str(n)] = {x: module_to_json(bd[x]) for x in C.basis(n)}
    return {
        "name": C.name,
        "maxdim": C.maxdim,
        "group": G.descriptor(),
        "generators": {str(n): list(C.basis(n)) for n in range(1, C.maxdim + 1)},
        "phi": {x: G.format(C.phi[x]) for x in C.alphabet},
        "relators": {r: str(w) for r, w in C.relators.items()},
        "boundaries": boundaries,
        "lift": C.lift.to_json(G) if C.lift is not None and hasattr(C.lift, "to_json") else None,
        "meta": C.meta,
    }


def complex_from_json(data: Mapping) -> CrossedComplex:
    try:
        G = group_from_descriptor(data["group"])
        gens = {int(n): list(v) for n, v in data["generators"].items()}
        maxdim = int(data.get("maxdim", max(gens) if gens else 2))
        alphabet = gens.get(1, [])
        phi = {x: G.parse(lab) for x, lab in data["phi"].items()}
        relators = {r: Word.parse(w) for r, w in data.get("relators", {}).items()}
        if list(relators) != gens.get(2, list(relators)):
            raise ComplexError("relator names disagree with the dimension-2 generators")
        bases = {n: v for n, v in gens.items() if n >= 3}
        boundaries: dict[int, dict] = {}
        for n_text, bd in data.get("boundaries", {}).items():
            n = int(n_text)
            if n == 3:
                boundaries[3] = {x: Dim2Elem.from_json(v) for x, v in bd.items()}
            else:
                boundaries[n] = {x: module_from_json(G, v) for x, v in bd.items()}
        lift = lift_from_json(data["lift"], G) if data.get("lift") else None
    except (KeyError, TypeError) as exc:
        raise ComplexError(f"malformed complex JSON: {exc!r}") from exc
    return CrossedComplex(G, alphabet, phi, relators, bases, boundaries, maxdim, lift,
                          name=data.get("name", ""), meta=data.get("meta") or {})


def dump_complex(C: CrossedComplex, path: str | Path | None = None) -> str:
    text = json.dumps(complex_to_json(C), indent=1, sort_keys=False)
    if path is not None:
        Path(path).write_text(text + "\n", encoding="utf-8")
    return text


def load_complex(path: str | Path) -> CrossedComplex:
    return complex_from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def group_spec(value) -> Group:
    """A vertex group given by name (``"Cinf"``, ``"C3"``, ...) or by descriptor."""
    if isinstance(value, str):
        if value == "Cinf":
            return CyclicGroup(0)
        if value[:1] == "C" and value[1:].isdigit():
            return CyclicGroup(int(value[1:]))
        return named_group(value)
    return group_from_descriptor(value)


def load_graph(path: str | Path) -> tuple[GraphSpec, dict[str, Group], dict[str, str]]:
    """Graph JSON: vertices, edges, optional vertex_group (default Cinf) and generators."""
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return graph_from_json(data)


def graph_from_json(data: Mapping) -> tuple[GraphSpec, dict[str, Group], dict[str, str]]:
    try:
        graph = GraphSpec.build(data["vertices"], [tuple(e) for e in data.get("edges", [])])
    except KeyError as exc:
        raise ComplexError(f"malformed graph JSON: {exc!r}") from exc
    groups_raw = data.get("vertex_group", {})
    groups = {v: group_spec(groups_raw.get(v, "Cinf")) for v in graph.vertices}
    names = {v: data.get("generators", {}).get(v, v) for v in graph.vertices}
    return graph, groups, names
