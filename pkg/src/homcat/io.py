"""JSON serialization for rings, modules, maps, morphism objects and sequences.

Schemas (field names are fixed):
  ring.json   {"p", "dim", "basis", "unit", "mul"}  or  {"preset", "p", "n"?}
  module.json {"ring": <path or inline ring>, "dim", "side", "action"}
  map.json    {"source": <module>, "target": <module>, "matrix"}
  morph.json  {"ring", "A": <module>, "B": <module>, "f"}
  arseq.json  {"category", "left", "middle", "right", "incl", "proj", "report"}
"""

from __future__ import annotations

import json
import os
from typing import Optional, Tuple

import numpy as np

from .algebra import Algebra, InputError, preset_algebra
from .linalg import Mat
from .modules import Module, ModuleMap
from .morphisms import MorphObject, make_object
from .artheory import ARSequence


def parse_preset_spec(spec: str) -> Algebra:
    """preset:truncated_poly,p=2,n=2 -> the preset algebra."""
    body = spec.split(":", 1)[1] if spec.startswith("preset:") else spec
    parts = body.split(",")
    kind = parts[0]
    kwargs = {}
    for item in parts[1:]:
        if "=" not in item:
            raise InputError("bad preset parameter %r" % item)
        key, val = item.split("=", 1)
        kwargs[key.strip()] = int(val)
    return preset_algebra(kind, kwargs.get("p", 2), kwargs.get("n"))


def ring_from_data(data: dict) -> Algebra:
    if "preset" in data:
        return preset_algebra(data["preset"], int(data.get("p", 2)),
                              int(data["n"]) if "n" in data else None)
    try:
        return Algebra(int(data["p"]), int(data["dim"]), list(data["basis"]),
                       data["unit"], data["mul"])
    except KeyError as exc:
        raise InputError("ring data missing field %s" % exc)


def ring_to_data(a: Algebra) -> dict:
    return {
        "p": int(a.p),
        "dim": int(a.dim),
        "basis": list(a.basis_labels),
        "unit": [int(x) for x in a.unit],
        "mul": [[[int(c) for c in a.mul[i][j]] for j in range(a.dim)] for i in range(a.dim)],
    }


def load_ring(path_or_spec: str) -> Algebra:
    if path_or_spec.startswith("preset:"):
        return parse_preset_spec(path_or_spec)
    with open(path_or_spec) as fh:
        return ring_from_data(json.load(fh))


def _resolve_ring(ring_field, base_dir: str) -> Algebra:
    if isinstance(ring_field, str):
        if ring_field.startswith("preset:"):
            return parse_preset_spec(ring_field)
        path = ring_field if os.path.isabs(ring_field) else os.path.join(base_dir, ring_field)
        with open(path) as fh:
            return ring_from_data(json.load(fh))
    if isinstance(ring_field, dict):
        return ring_from_data(ring_field)
    raise InputError("ring field must be a path, preset spec or inline object")


def module_from_data(data: dict, base_dir: str = ".", ring: Optional[Algebra] = None) -> Module:
    if ring is None:
        ring = _resolve_ring(data.get("ring"), base_dir)
    dim = int(data["dim"])
    side = data.get("side", "right")
    action = data["action"]
    if len(action) != ring.dim:
        raise InputError("module needs one action matrix per ring basis vector")
    acts = [Mat(ring.p, np.asarray(a, dtype=np.int64).reshape(dim, dim)) for a in action]
    try:
        return Module(ring, acts, side=side)
    except InputError:
        raise
    except Exception as exc:
        raise InputError("bad module data: %s" % exc)


def module_to_data(m: Module, inline_ring: bool = True) -> dict:
    out = {
        "dim": int(m.dim),
        "side": m.side,
        "action": [[[int(c) for c in row] for row in a.a] for a in m.action],
    }
    if inline_ring:
        out["ring"] = ring_to_data(m.algebra)
    return out


def load_module(path: str) -> Module:
    with open(path) as fh:
        data = json.load(fh)
    return module_from_data(data, base_dir=os.path.dirname(path) or ".")


def map_from_data(data: dict, base_dir: str = ".") -> ModuleMap:
    source = module_from_data(data["source"], base_dir)
    target = module_from_data(data["target"], base_dir)
    matrix = Mat(source.p, np.asarray(data["matrix"], dtype=np.int64)
                 .reshape(target.dim, source.dim))
    return ModuleMap(source, target, matrix)


def map_to_data(f: ModuleMap) -> dict:
    return {
        "source": module_to_data(f.source),
        "target": module_to_data(f.target),
        "matrix": [[int(c) for c in row] for row in f.matrix.a],
    }


def morph_from_data(data: dict, base_dir: str = ".") -> MorphObject:
    ring = _resolve_ring(data.get("ring"), base_dir)
    a_mod = module_from_data(data["A"], base_dir, ring=ring)
    b_mod = module_from_data(data["B"], base_dir, ring=ring)
    fmat = Mat(ring.p, np.asarray(data["f"], dtype=np.int64).reshape(b_mod.dim, a_mod.dim))
    try:
        return make_object(a_mod, b_mod, fmat, side=data.get("side", "M"))
    except InputError:
        raise
    except Exception as exc:
        raise InputError("bad morphism data: %s" % exc)


def morph_to_data(obj: MorphObject, ops_log: Optional[list] = None) -> dict:
    out = {
        "ring": ring_to_data(obj.base),
        "A": module_to_data(obj.A, inline_ring=False),
        "B": module_to_data(obj.B, inline_ring=False),
        "f": [[int(c) for c in row] for row in obj.f.matrix.a],
        "side": obj.op_side,
    }
    if ops_log is not None:
        out["ops_log"] = ops_log
    return out


def load_morph(path: str) -> MorphObject:
    with open(path) as fh:
        data = json.load(fh)
    return morph_from_data(data, base_dir=os.path.dirname(path) or ".")


def arseq_to_data(seq: ARSequence) -> dict:
    if seq.category == "R":
        left = module_to_data(seq.left)
        middle = module_to_data(seq.middle)
        right = module_to_data(seq.right)
        incl = seq.incl.matrix
        proj = seq.proj.matrix
    else:
        left = morph_to_data(seq.left)
        middle = morph_to_data(seq.middle)
        right = morph_to_data(seq.right)
        incl = seq.incl.lambda_matrix()
        proj = seq.proj.lambda_matrix()
    return {
        "category": seq.category,
        "left": left,
        "middle": middle,
        "right": right,
        "incl": [[int(c) for c in row] for row in incl.a],
        "proj": [[int(c) for c in row] for row in proj.a],
        "report": seq.report,
    }


def arseq_from_data(data: dict, base_dir: str = ".") -> ARSequence:
    cat = data["category"]
    if cat == "R":
        left = module_from_data(data["left"], base_dir)
        middle = module_from_data(data["middle"], base_dir)
        right = module_from_data(data["right"], base_dir)
        incl = ModuleMap(left, middle, Mat(left.p, np.asarray(data["incl"], dtype=np.int64)
                                           .reshape(middle.dim, left.dim)), check=False)
        proj = ModuleMap(middle, right, Mat(left.p, np.asarray(data["proj"], dtype=np.int64)
                                            .reshape(right.dim, middle.dim)), check=False)
        return ARSequence("R", left, middle, right, incl, proj, data.get("report"))
    from .morphisms import MorphMap, morph_map_from_lambda
    left = morph_from_data(data["left"], base_dir)
    middle = morph_from_data(data["middle"], base_dir)
    right = morph_from_data(data["right"], base_dir)
    p = left.base.p
    incl = morph_map_from_lambda(left, middle,
                                 Mat(p, np.asarray(data["incl"], dtype=np.int64)
                                     .reshape(middle.dim, left.dim)), check=False)
    proj = morph_map_from_lambda(middle, right,
                                 Mat(p, np.asarray(data["proj"], dtype=np.int64)
                                     .reshape(right.dim, middle.dim)), check=False)
    return ARSequence(cat, left, middle, right, incl, proj, data.get("report"))


def load_arseq(path: str) -> ARSequence:
    with open(path) as fh:
        data = json.load(fh)
    return arseq_from_data(data, base_dir=os.path.dirname(path) or ".")


def dump_json(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2)
