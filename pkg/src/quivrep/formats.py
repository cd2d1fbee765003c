"""JSON forms for quivers, modules, maps and representations."""

from __future__ import annotations

import json

from .errors import ParseError
from .exactlin import IntMatrix
from .quiver import Arrow, Quiver
from .repcat import Representation
from .zmodcat import FiniteModule, ModuleMap


def quiver_to_json(Q: Quiver) -> dict:
    return {"vertices": list(Q.vertices),
            "arrows": [{"id": a.id, "source": a.source, "target": a.target} for a in Q.arrows]}


def quiver_from_json(obj) -> Quiver:
    try:
        verts = [str(v) for v in obj["vertices"]]
        arrows = [Arrow(str(a["id"]), str(a["source"]), str(a["target"]))
                  for a in obj.get("arrows", [])]
        return Quiver(tuple(verts), tuple(arrows))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad quiver: {exc}") from exc


def module_to_json(M: FiniteModule) -> dict:
    return {"N": M.N, "chain": list(M.chain)}


def module_from_json(obj, N=None) -> FiniteModule:
    try:
        if isinstance(obj, list):
            chain, ring = obj, N
        else:
            chain, ring = obj["chain"], obj.get("N", N)
        if ring is None:
            raise ValueError("ring modulus missing")
        return FiniteModule(int(ring), tuple(int(d) for d in chain))
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad module: {exc}") from exc


def map_to_json(f: ModuleMap) -> dict:
    return {"source": list(f.source.chain), "target": list(f.target.chain),
            "matrix": f.matrix.to_rows()}


def rep_to_json(X: Representation) -> dict:
    return {
        "N": X.N,
        "quiver": quiver_to_json(X.quiver),
        "modules": {v: list(M.chain) for v, M in zip(X.quiver.vertices, X.modules)},
        "maps": {a.id: f.matrix.to_rows() for a, f in zip(X.quiver.arrows, X.maps)},
    }


def rep_from_json(obj, Q: Quiver = None, N: int = None) -> Representation:
    """Parse a representation; the quiver may be embedded or passed in."""
    try:
        if "quiver" in obj:
            Q = quiver_from_json(obj["quiver"])
        if Q is None:
            raise ValueError("no quiver given")
        N = int(obj.get("N", N)) if obj.get("N", N) is not None else None
        if N is None:
            raise ValueError("ring modulus missing")
        mods_in = obj.get("modules", {})
        mods = [FiniteModule(N, tuple(mods_in.get(v, []))) for v in Q.vertices]
        pos = {v: k for k, v in enumerate(Q.vertices)}
        maps_in = obj.get("maps", {})
        maps = []
        for a in Q.arrows:
            src, tgt = mods[pos[a.source]], mods[pos[a.target]]
            rows = maps_in.get(a.id)
            if rows is None:
                maps.append(ModuleMap.zero(src, tgt))
            else:
                maps.append(ModuleMap(src, tgt, IntMatrix.from_rows(rows, src.rank)))
        unknown = set(maps_in) - {a.id for a in Q.arrows}
        if unknown:
            raise ValueError(f"maps for unknown arrows {sorted(unknown)}")
        return Representation(Q, mods, maps, N=N)
    except ParseError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad representation: {exc}") from exc


def load_json(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from exc


def dumps(obj) -> str:
    """Deterministic compact JSON."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)
