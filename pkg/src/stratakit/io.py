"""JSON schemas and (de)serialization for every exchange format.

Categories and stratified spaces constructed in memory carry structured
ids (tuples); on export these are densely renumbered with the original
ids kept as string labels, so round-trips are stable and diffable.
Schema violations are reported with JSON pointer paths.
"""

from __future__ import annotations

import json
from fractions import Fraction

import jsonschema

from .arrangement import Arrangement
from .category import AcyclicCategory
from .css import CombinatorialCSS
from .delta import DeltaComplex
from .graphconf import Graph
from .homology import HomologyResult
from .poset import Poset

__all__ = [
    "SCHEMAS",
    "detect_kind",
    "validate_payload",
    "load_poset",
    "dump_poset",
    "load_category",
    "dump_category",
    "load_css",
    "dump_css",
    "load_delta",
    "dump_delta",
    "load_arrangement",
    "dump_arrangement",
    "load_graph",
    "dump_graph",
    "dump_homology",
    "canonical_json",
]

_ID = {"type": ["integer", "string"]}

SCHEMAS = {
    "poset": {
        "type": "object",
        "required": ["elements", "covers"],
        "properties": {
            "elements": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["id"],
                    "properties": {
                        "id": {"type": "integer"},
                        "grade": {"type": "integer"},
                        "label": {"type": "string"},
                    },
                },
            },
            "covers": {
                "type": "array",
                "items": {
                    "type": "array",
                    "items": {"type": "integer"},
                    "minItems": 2,
                    "maxItems": 2,
                },
            },
        },
    },
    "category": {
        "type": "object",
        "required": ["objects", "morphisms", "compose"],
        "properties": {
            "objects": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["id"],
                    "properties": {"id": _ID, "grade": {"type": "integer"}},
                },
            },
            "morphisms": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["id", "src", "dst"],
                    "properties": {"id": _ID, "src": _ID, "dst": _ID},
                },
            },
            "compose": {
                "type": "array",
                "items": {"type": "array", "minItems": 3, "maxItems": 3},
            },
        },
    },
    "delta": {
        "type": "object",
        "required": ["cells", "faces"],
        "properties": {
            "cells": {"type": "array", "items": {"type": "array"}},
            "faces": {
                "type": "object",
                "additionalProperties": {
                    "type": "array",
                    "items": {"type": "array", "items": {"type": "integer"}},
                },
            },
        },
    },
    "arrangement": {
        "type": "object",
        "required": ["n", "hyperplanes"],
        "properties": {
            "n": {"type": "integer", "minimum": 1},
            "hyperplanes": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["a", "b"],
                    "properties": {
                        "a": {
                            "type": "array",
                            "items": {"type": ["string", "integer"]},
                        },
                        "b": {"type": ["string", "integer"]},
                    },
                },
            },
        },
    },
    "graph": {
        "type": "object",
        "required": ["vertices", "edges"],
        "properties": {
            "vertices": {"type": "array", "items": _ID},
            "edges": {
                "type": "array",
                "items": {
                    "type": "object",
                    "required": ["id", "ends"],
                    "properties": {
                        "id": _ID,
                        "ends": {
                            "type": "array",
                            "minItems": 2,
                            "maxItems": 2,
                        },
                    },
                },
            },
        },
    },
}
SCHEMAS["css"] = {
    "type": "object",
    "required": ["objects", "morphisms", "compose", "dims", "closed"],
    "properties": {
        **SCHEMAS["category"]["properties"],
        "dims": {"type": "object", "additionalProperties": {"type": "integer"}},
        "closed": {
            "type": "object",
            "additionalProperties": {"type": "boolean"},
        },
    },
}


def detect_kind(payload: dict) -> str:
    if "hyperplanes" in payload:
        return "arrangement"
    if "vertices" in payload and "edges" in payload:
        return "graph"
    if "covers" in payload:
        return "poset"
    if "dims" in payload and "objects" in payload:
        return "css"
    if "objects" in payload and "morphisms" in payload:
        return "category"
    if "cells" in payload and "faces" in payload:
        return "delta"
    raise ValueError("unrecognized input format")


def validate_payload(payload: dict, kind: str) -> list[str]:
    validator = jsonschema.Draft202012Validator(SCHEMAS[kind])
    return [
        f"{'/' + '/'.join(str(p) for p in err.absolute_path)}: {err.message}"
        for err in sorted(validator.iter_errors(payload), key=str)
    ]


def _hashable(v):
    return tuple(_hashable(x) for x in v) if isinstance(v, list) else v


def load_poset(payload: dict) -> Poset:
    elements = tuple(e["id"] for e in payload["elements"])
    grades = {e["id"]: e["grade"] for e in payload["elements"] if "grade" in e}
    labels = {e["id"]: e["label"] for e in payload["elements"] if "label" in e}
    covers = tuple((lo, hi) for lo, hi in payload["covers"])
    return Poset(elements, covers, grades, labels)


def dump_poset(p: Poset) -> dict:
    elements = []
    for e in p.elements:
        entry: dict = {"id": e}
        if e in p.grades:
            entry["grade"] = p.grades[e]
        if e in p.labels:
            entry["label"] = str(p.labels[e])
        elements.append(entry)
    return {"elements": elements, "covers": [list(c) for c in p.covers]}


def load_category(payload: dict) -> AcyclicCategory:
    objects = tuple(o["id"] for o in payload["objects"])
    grades = {o["id"]: o["grade"] for o in payload["objects"] if "grade" in o}
    mids = tuple(m["id"] for m in payload["morphisms"])
    src = {m["id"]: m["src"] for m in payload["morphisms"]}
    dst = {m["id"]: m["dst"] for m in payload["morphisms"]}
    compose = {
        (_hashable(g), _hashable(f)): _hashable(gf)
        for g, f, gf in payload["compose"]
    }
    return AcyclicCategory(objects, mids, src, dst, compose, grades)


def _renumbered(c: AcyclicCategory):
    oid = {x: i for i, x in enumerate(c.objects)}
    mid = {m: i for i, m in enumerate(c.morphisms)}
    return oid, mid


def dump_category(c: AcyclicCategory) -> dict:
    oid, mid = _renumbered(c)
    objects = []
    for x in c.objects:
        entry: dict = {"id": oid[x], "label": str(x)}
        if x in c.grades:
            entry["grade"] = c.grades[x]
        objects.append(entry)
    morphisms = [
        {"id": mid[m], "src": oid[c.src[m]], "dst": oid[c.dst[m]], "label": str(m)}
        for m in c.morphisms
    ]
    compose = [
        [mid[g], mid[f], mid[gf]]
        for (g, f), gf in sorted(
            c.compose.items(), key=lambda kv: (mid[kv[0][0]], mid[kv[0][1]])
        )
    ]
    return {"objects": objects, "morphisms": morphisms, "compose": compose}


def load_css(payload: dict) -> CombinatorialCSS:
    c = load_category(payload)
    dims = {}
    closed = {}
    by_key = {str(x): x for x in c.objects}
    for key, v in payload["dims"].items():
        if key not in by_key:
            raise ValueError(f"/dims/{key}: unknown object")
        dims[by_key[key]] = v
    for key, v in payload["closed"].items():
        if key not in by_key:
            raise ValueError(f"/closed/{key}: unknown object")
        closed[by_key[key]] = v
    cat = AcyclicCategory(
        c.objects, c.morphisms, c.src, c.dst, c.compose, dims
    )
    return CombinatorialCSS(cat, closed)


def dump_css(x: CombinatorialCSS) -> dict:
    out = dump_category(x.cat)
    oid, _ = _renumbered(x.cat)
    out["dims"] = {str(oid[v]): x.cat.grades[v] for v in x.cells()}
    out["closed"] = {str(oid[v]): x.closed[v] for v in x.cells()}
    return out


def load_delta(payload: dict) -> DeltaComplex:
    cells = tuple(tuple(_hashable(c) for c in layer) for layer in payload["cells"])
    faces = []
    for n in range(1, len(cells)):
        rows = payload["faces"].get(str(n))
        if rows is None:
            raise ValueError(f"/faces/{n}: missing face table")
        faces.append(tuple(tuple(r) for r in rows))
    return DeltaComplex(cells, tuple(faces))


def dump_delta(k: DeltaComplex) -> dict:
    return {
        "cells": [[str(c) for c in layer] for layer in k.cells],
        "faces": {
            str(n): [list(r) for r in k.faces[n - 1]]
            for n in range(1, k.dim() + 1)
        },
    }


def load_arrangement(payload: dict) -> Arrangement:
    rows = [
        ([Fraction(str(v)) for v in h["a"]], Fraction(str(h["b"])))
        for h in payload["hyperplanes"]
    ]
    return Arrangement.from_lists(payload["n"], rows)


def dump_arrangement(arr: Arrangement) -> dict:
    return {
        "n": arr.n,
        "hyperplanes": [
            {"a": [str(v) for v in a], "b": str(b)} for a, b in arr.forms
        ],
    }


def load_graph(payload: dict) -> Graph:
    return Graph(
        tuple(_hashable(v) for v in payload["vertices"]),
        tuple(
            (_hashable(e["id"]), (_hashable(e["ends"][0]), _hashable(e["ends"][1])))
            for e in payload["edges"]
        ),
    )


def dump_graph(g: Graph) -> dict:
    return {
        "vertices": list(g.vertices),
        "edges": [{"id": e, "ends": list(ends)} for e, ends in g.edges],
    }


def dump_homology(h: HomologyResult) -> dict:
    return {
        "betti": list(h.betti),
        "torsion": [list(t) for t in h.torsion],
    }


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"))
