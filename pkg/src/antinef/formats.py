"""JSON documents for graphs and towers.

Versioned with ``"format": 1``.  Integers stay JSON integers; rational
coefficients are serialized as "p/q" strings so no float ever enters a
document.  ``emit_*`` output is deterministic and round-trip stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional

from .birational import Tower, edge_point, free_point
from .errors import InputError
from .graph import Coeff, Cycle, DualGraph, cycle, dual_graph

FORMAT = 1


@dataclass(frozen=True)
class GraphDocument:
    name: str
    graph: DualGraph
    cycles: dict[str, Cycle] = field(default_factory=dict)
    model: Optional[dict] = None


@dataclass(frozen=True)
class TowerDocument:
    name: str
    tower: Tower
    cycles: dict[str, tuple[int, Cycle]] = field(default_factory=dict)
    model: Optional[dict] = None


def _fail(path: str, msg: str):
    raise InputError(f"{path}: {msg}")


def _need(obj: dict, key: str, path: str) -> Any:
    if not isinstance(obj, dict):
        _fail(path, f"expected an object, got {type(obj).__name__}")
    if key not in obj:
        _fail(path, f"missing required field {key!r}")
    return obj[key]


def _int(value: Any, path: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        _fail(path, f"expected an integer, got {value!r}")
    return value


def _coeff(value: Any, path: str) -> Coeff:
    if isinstance(value, bool):
        _fail(path, f"expected an integer or 'p/q' string, got {value!r}")
    if isinstance(value, int):
        return value
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError):
            _fail(path, f"cannot parse rational {value!r}")
    _fail(path, f"expected an integer or 'p/q' string, got {value!r}")


def _coeff_out(value: Coeff) -> Any:
    if isinstance(value, Fraction):
        return f"{value.numerator}/{value.denominator}"
    return value


def _parse_vertices_edges(obj: dict, path: str) -> DualGraph:
    name = obj.get("name", "graph")
    vs = []
    for i, v in enumerate(_need(obj, "vertices", path)):
        vp = f"{path}.vertices[{i}]"
        vid = str(_need(v, "id", vp))
        self_int = _int(_need(v, "self_int", vp), vp + ".self_int")
        if "kappa" in v and "genus" in v:
            _fail(vp, "give exactly one of 'kappa' or 'genus'")
        if "kappa" in v:
            kappa = _int(v["kappa"], vp + ".kappa")
        elif "genus" in v:
            kappa = 2 * _int(v["genus"], vp + ".genus") - 2 - self_int
        else:
            _fail(vp, "give exactly one of 'kappa' or 'genus'")
        vs.append((vid, self_int, kappa))
    es = []
    for i, e in enumerate(obj.get("edges", [])):
        ep = f"{path}.edges[{i}]"
        a = str(_need(e, "a", ep))
        b = str(_need(e, "b", ep))
        mult = _int(e.get("mult", 1), ep + ".mult")
        es.append((a, b, mult))
    return dual_graph(str(name), vs, es)


def _parse_coeff_map(obj: Any, g: DualGraph, path: str) -> Cycle:
    if not isinstance(obj, dict):
        _fail(path, "cycle must map vertex ids to coefficients")
    return cycle(g, {str(k): _coeff(v, f"{path}.{k}") for k, v in obj.items()})


def _parse_model(obj: Any, path: str) -> Optional[dict]:
    if obj is None:
        return None
    if not isinstance(obj, dict):
        _fail(path, "model must be an object")
    out = {}
    if "pg" in obj:
        out["pg"] = _int(obj["pg"], path + ".pg")
    if "gorenstein" in obj:
        if not isinstance(obj["gorenstein"], bool):
            _fail(path + ".gorenstein", "expected a boolean")
        out["gorenstein"] = obj["gorenstein"]
    if "cohom_cycle" in obj:
        out["cohom_cycle"] = str(obj["cohom_cycle"])
    unknown = set(obj) - {"pg", "gorenstein", "cohom_cycle"}
    if unknown:
        _fail(path, f"unknown model fields: {sorted(unknown)}")
    return out


def parse_graph_document(text: str | dict) -> GraphDocument:
    obj = _load(text)
    if obj.get("format") != FORMAT:
        _fail("$.format", f"expected {FORMAT}, got {obj.get('format')!r}")
    g = _parse_vertices_edges(obj, "$")
    cycles = {
        str(name): _parse_coeff_map(data, g, f"$.cycles.{name}")
        for name, data in obj.get("cycles", {}).items()
    }
    return GraphDocument(
        name=g.name, graph=g, cycles=cycles, model=_parse_model(obj.get("model"), "$.model")
    )


def emit_graph_document(doc: GraphDocument) -> str:
    g = doc.graph
    out: dict[str, Any] = {"format": FORMAT, "name": g.name}
    out["vertices"] = [
        {"id": v.id, "self_int": v.self_int, "kappa": v.kappa} for v in g.vertices
    ]
    out["edges"] = [{"a": a, "b": b, "mult": m} for a, b, m in g.edges]
    if doc.cycles:
        out["cycles"] = {
            name: {vid: _coeff_out(c) for vid, c in doc.cycles[name].coeffs}
            for name in sorted(doc.cycles)
        }
    if doc.model is not None:
        model = {}
        for key in ("pg", "gorenstein", "cohom_cycle"):
            if key in doc.model:
                model[key] = doc.model[key]
        out["model"] = model
    return json.dumps(out, indent=2) + "\n"


def parse_tower_document(text: str | dict) -> TowerDocument:
    obj = _load(text)
    if obj.get("format") != FORMAT:
        _fail("$.format", f"expected {FORMAT}, got {obj.get('format')!r}")
    base = _parse_vertices_edges(_need(obj, "base", "$"), "$.base")
    t = Tower.base(base)
    for i, s in enumerate(obj.get("steps", [])):
        sp = f"$.steps[{i}]"
        op = _need(s, "op", sp)
        if op == "blowup_free":
            t = t.blow_up(free_point(str(_need(s, "vertex", sp)), str(_need(s, "new_id", sp))))
        elif op == "blowup_edge":
            t = t.blow_up(
                edge_point(str(_need(s, "a", sp)), str(_need(s, "b", sp)), str(_need(s, "new_id", sp)))
            )
        elif op == "contract":
            vid = str(_need(s, "vertex", sp))
            if t.height == 0 or t.steps[-1].new_id != vid:
                _fail(sp, "contraction in a tower script may only undo the most recent blow-up")
            t = Tower(levels=t.levels[:-1], steps=t.steps[:-1])
        else:
            _fail(sp, f"unknown op {op!r}")
    cycles: dict[str, tuple[int, Cycle]] = {}
    for name, data in obj.get("cycles", {}).items():
        cp = f"$.cycles.{name}"
        level = _int(_need(data, "level", cp), cp + ".level")
        if not 0 <= level <= t.height:
            _fail(cp + ".level", f"tower has levels 0..{t.height}")
        cycles[str(name)] = (level, _parse_coeff_map(_need(data, "coeffs", cp), t.graph(level), cp))
    return TowerDocument(
        name=str(obj.get("name", base.name)),
        tower=t,
        cycles=cycles,
        model=_parse_model(obj.get("model"), "$.model"),
    )


def emit_tower_document(doc: TowerDocument) -> str:
    t = doc.tower
    base = t.levels[0]
    out: dict[str, Any] = {"format": FORMAT, "name": doc.name}
    out["base"] = {
        "name": base.name,
        "vertices": [{"id": v.id, "self_int": v.self_int, "kappa": v.kappa} for v in base.vertices],
        "edges": [{"a": a, "b": b, "mult": m} for a, b, m in base.edges],
    }
    steps = []
    for s in t.steps:
        if len(s.attach) == 1 and s.attach[0][1] == 1:
            steps.append({"op": "blowup_free", "vertex": s.attach[0][0], "new_id": s.new_id})
        elif len(s.attach) == 2 and all(m == 1 for _, m in s.attach):
            steps.append(
                {"op": "blowup_edge", "a": s.attach[0][0], "b": s.attach[1][0], "new_id": s.new_id}
            )
        else:
            raise InputError(
                f"step creating {s.new_id!r} has no blow-up form and cannot be serialized"
            )
    out["steps"] = steps
    if doc.cycles:
        out["cycles"] = {
            name: {
                "level": doc.cycles[name][0],
                "coeffs": {vid: _coeff_out(c) for vid, c in doc.cycles[name][1].coeffs},
            }
            for name in sorted(doc.cycles)
        }
    if doc.model is not None:
        out["model"] = doc.model
    return json.dumps(out, indent=2) + "\n"


def _load(text: str | dict) -> dict:
    if isinstance(text, dict):
        return text
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise InputError("document root must be a JSON object")
    return obj


def parse_inline_cycle(spec: str, g: DualGraph) -> Cycle:
    """Parse the CLI inline syntax "E0:2,E1:3"."""
    data: dict[str, Coeff] = {}
    for part in spec.split(","):
        part = part.strip()
        if not part:
            continue
        if ":" not in part:
            raise InputError(f"inline cycle entry {part!r} must look like 'id:coeff'")
        vid, _, raw = part.partition(":")
        data[vid.strip()] = _coeff(raw.strip() if "/" in raw else _maybe_int(raw), f"cycle[{vid}]")
    return cycle(g, data)


def _maybe_int(raw: str):
    try:
        return int(raw.strip())
    except ValueError:
        return raw.strip()
