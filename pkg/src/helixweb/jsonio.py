"""JSON encoding of every value the CLI and service exchange.

All numbers are plain integers; encodings are bit-exact and stable, so a
given value always serializes to the same bytes.  Divisor vectors use the
documented basis order: (h, e1, ..., em) on blow-ups, the two rulings
(a, b) on the quadric.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import InputError
from .exceptional import BlockStructure, Collection, ExcObject
from .helices import D, Helix, Levelling
from .lattice import ChernClass, Surface
from .quivers import BMatrix, Quiver


def surface_to_json(s: Surface) -> dict[str, Any]:
    if s.kind == "quadric":
        return {"kind": "quadric"}
    return {"kind": "blowup", "points": s.points}


def surface_from_json(data: Any) -> Surface:
    if not isinstance(data, dict) or "kind" not in data:
        raise InputError("surface must be an object with a 'kind' field")
    kind = data["kind"]
    if kind == "quadric":
        return Surface.quadric()
    if kind == "blowup":
        points = data.get("points", 0)
        if not isinstance(points, int):
            raise InputError("'points' must be an integer")
        return Surface.blowup(points)
    raise InputError(f"unknown surface kind {kind!r}")


def chern_to_json(v: ChernClass) -> dict[str, Any]:
    return {"rank": v.rank, "c1": list(v.c1), "ch2_x2": v.ch2_x2}


def chern_from_json(data: Any) -> ChernClass:
    try:
        return ChernClass(int(data["rank"]), tuple(data["c1"]), int(data["ch2_x2"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed Chern class {data!r}") from exc


def object_to_json(o: ExcObject) -> dict[str, Any]:
    out = chern_to_json(o.cls)
    out["shift"] = o.shift
    return out


def object_from_json(s: Surface, data: Any) -> ExcObject:
    cls = chern_from_json(data)
    shift = data.get("shift", 0)
    if not isinstance(shift, int):
        raise InputError("'shift' must be an integer")
    return ExcObject(s, cls, shift)


def collection_to_json(c: Collection) -> dict[str, Any]:
    return {
        "surface": surface_to_json(c.surface),
        "objects": [object_to_json(o) for o in c.objects],
    }


def collection_from_json(data: Any) -> Collection:
    if not isinstance(data, dict):
        raise InputError("collection must be a JSON object")
    s = surface_from_json(data.get("surface"))
    objs = data.get("objects")
    if not isinstance(objs, list) or not objs:
        raise InputError("collection needs a non-empty 'objects' array")
    return Collection(s, tuple(object_from_json(s, o) for o in objs))


def helix_to_json(h: Helix) -> dict[str, Any]:
    out = collection_to_json(h.thread)
    out["period"] = h.n
    out["d"] = D
    return out


def helix_from_json(data: Any) -> Helix:
    c = collection_from_json(data)
    if "period" in data and data["period"] != len(c):
        raise InputError("'period' differs from the thread length")
    if "d" in data and data["d"] != D:
        raise InputError(f"only d = {D} helices are supported")
    return Helix(c)


def blocks_to_json(b: BlockStructure) -> dict[str, Any]:
    return {"blocks": [list(block) for block in b.blocks]}


def blocks_from_json(data: Any) -> BlockStructure:
    try:
        return BlockStructure(tuple(tuple(int(i) for i in blk) for blk in data["blocks"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed block structure {data!r}") from exc


def bmatrix_to_json(b: BMatrix) -> dict[str, Any]:
    return {"n": b.n, "b": [list(row) for row in b.b]}


def quiver_to_json(q: Quiver) -> dict[str, Any]:
    return {"vertices": list(q.labels()), "arrows": [list(row) for row in q.arrows]}


def levelling_to_json(lev: Levelling) -> list[int]:
    return list(lev.values)


def quiver_to_dot(q: Quiver, name: str = "helix") -> str:
    lines = [f"digraph {name} {{"]
    for i, label in enumerate(q.labels()):
        lines.append(f'  {i} [label="{label}"];')
    for i in range(q.n):
        for j in range(q.n):
            m = q.arrows[i][j]
            if m:
                lines.append(f"  {i} -> {j} [label={m}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps(data: Any) -> str:
    return json.dumps(data, indent=2, sort_keys=False) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from exc
