"""JSON encoding for chains, divisors, tableaux, skeletons and reports.

Rationals are written as ``"p/q"`` strings everywhere.
"""

import dataclasses
import json
from fractions import Fraction
from pathlib import Path

from .chain import ChainOfCycles, ChipList, Cycle, CyclePoint, Divisor
from .errors import InputError
from .rational import fmt, q
from .tableaux import Tableau


def load_json(path):
    """Read a JSON file; parse errors name the file, line and column."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def dumps(obj):
    """Deterministic JSON text with sorted keys and rationals as strings."""
    return json.dumps(to_plain(obj), sort_keys=True, indent=2)


def to_plain(obj):
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return fmt(obj)
    if isinstance(obj, float):
        return obj
    if isinstance(obj, dict):
        return {str(k) if not isinstance(k, str) else k: to_plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, frozenset, set)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [to_plain(v) for v in items]
    if isinstance(obj, Tableau):
        return obj.to_lists()
    if isinstance(obj, Divisor):
        return divisor_to_json(obj)
    if isinstance(obj, ChipList):
        return chips_to_json(obj)
    if dataclasses.is_dataclass(obj):
        return {f.name: to_plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _field(data, key, where):
    if not isinstance(data, dict) or key not in data:
        raise InputError(f"{where}: missing field {key!r}")
    return data[key]


def _rational(value, where):
    try:
        return q(value)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from exc


def _int(value, where):
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"{where}: expected an integer, got {value!r}")
    return value


# chains --------------------------------------------------------------------

def chain_to_json(chain):
    return {
        "g": chain.g,
        "k": chain.k,
        "cycles": [{"l": fmt(c.l), "m": fmt(c.m), "mu": c.mu} for c in chain.cycles],
        "bridges": [fmt(b) for b in chain.bridges],
    }


def chain_from_json(data, where="chain"):
    cycles_raw = _field(data, "cycles", where)
    if not isinstance(cycles_raw, list):
        raise InputError(f"{where}.cycles: expected a list")
    cycles = []
    for idx, c in enumerate(cycles_raw):
        loc = f"{where}.cycles[{idx}]"
        cycles.append(Cycle(_rational(_field(c, "l", loc), f"{loc}.l"),
                            _rational(_field(c, "m", loc), f"{loc}.m"),
                            _int(_field(c, "mu", loc), f"{loc}.mu")))
    bridges = data.get("bridges")
    if bridges is not None:
        bridges = [_rational(b, f"{where}.bridges[{i}]") for i, b in enumerate(bridges)]
    k = data.get("k")
    if k is not None:
        k = _int(k, f"{where}.k")
    g = data.get("g")
    if g is not None and _int(g, f"{where}.g") != len(cycles):
        raise InputError(f"{where}.g: says {g} but {len(cycles)} cycles are listed")
    try:
        return ChainOfCycles(cycles, bridges, k)
    except InputError as exc:
        raise InputError(f"{where}: {exc}") from exc


# divisors ------------------------------------------------------------------

def divisor_to_json(D):
    return {"normal": {"d": D.d, "xi": [fmt(x) for x in D.xi]}}


def _location_to_json(loc):
    if isinstance(loc, CyclePoint):
        return {"cycle": loc.j, "xi": fmt(loc.xi)}
    return {"bridge": loc.j, "t": fmt(loc.t)}


def chips_to_json(chips):
    return {"chips": [{"at": _location_to_json(loc), "mult": c} for loc, c in chips.items()]}


def _location_from_json(chain, at, where):
    if not isinstance(at, dict):
        raise InputError(f"{where}: expected an object")
    try:
        if "vertex" in at:
            name = at["vertex"]
            if not isinstance(name, str) or len(name) < 2 or name[0] not in "vw":
                raise InputError(f"bad vertex name {name!r}")
            j = int(name[1:])
            return chain.v(j) if name[0] == "v" else chain.w(j)
        if "cycle" in at:
            return chain.point(_int(at["cycle"], f"{where}.cycle"),
                               _rational(_field(at, "xi", where), f"{where}.xi"))
        if "bridge" in at:
            return chain.bridge_point(_int(at["bridge"], f"{where}.bridge"),
                                      _rational(_field(at, "t", where), f"{where}.t"))
    except (InputError, ValueError) as exc:
        raise InputError(f"{where}: {exc}") from exc
    raise InputError(f"{where}: location needs 'cycle', 'vertex' or 'bridge'")


def divisor_from_json(chain, data, where="divisor"):
    """A normal-form ``Divisor`` or a ``ChipList`` depending on the payload."""
    if isinstance(data, dict) and "normal" in data:
        n = data["normal"]
        d = _int(_field(n, "d", f"{where}.normal"), f"{where}.normal.d")
        xi = _field(n, "xi", f"{where}.normal")
        if not isinstance(xi, list):
            raise InputError(f"{where}.normal.xi: expected a list")
        xi = [_rational(x, f"{where}.normal.xi[{i}]") for i, x in enumerate(xi)]
        try:
            return chain.divisor(d, xi)
        except InputError as exc:
            raise InputError(f"{where}: {exc}") from exc
    if isinstance(data, dict) and "chips" in data:
        chips = []
        for idx, c in enumerate(data["chips"]):
            loc = f"{where}.chips[{idx}]"
            chips.append((_location_from_json(chain, _field(c, "at", loc), f"{loc}.at"),
                          _int(c.get("mult", 1), f"{loc}.mult")))
        return ChipList(chips)
    raise InputError(f"{where}: expected 'normal' or 'chips'")


# tableaux ------------------------------------------------------------------

def tableau_from_json(data, where="tableau"):
    try:
        return Tableau(data)
    except (InputError, TypeError, ValueError) as exc:
        raise InputError(f"{where}: {exc}") from exc


# skeletons -----------------------------------------------------------------

def skeleton_to_json(sk):
    cycles = [[e.id for e in sk.cycle_edges(j)] for j in range(1, sk.g + 1)]
    trees = []
    for tree in sk.trees:
        trees.append({
            "base": tree.base,
            "point": {"cycle": tree.point.j, "xi": fmt(tree.point.xi)},
            "leaves": [{"ray": _ray_name(lab), "weight": w, "divisor": name}
                       for lab, w, name in tree.leaves],
            "root_edge": tree.root_edge,
        })
    return {
        "kind": sk.kind,
        "n": sk.n,
        "chain": chain_to_json(sk.chain),
        "rays": {_ray_name(lab): list(v) for lab, v in sk.rays.items()},
        "vertices": [{"id": v.id, "label": v.label, "pos": [fmt(p) for p in v.pos]}
                     for v in sk.vertices],
        "edges": [{"id": e.id, "u": e.u, "v": e.v, "dir": list(e.dir),
                   "len": "inf" if e.length is None else fmt(e.length),
                   "kind": e.kind, "cycle": e.cycle, "tree": e.tree} for e in sk.edges],
        "cycles": cycles,
        "trees": trees,
        "info": {k: v for k, v in sk.info.items()
                 if k in ("tableau", "top", "a", "b", "k", "m", "r")},
    }


def _ray_name(label):
    if isinstance(label, tuple):
        return f"{label[0]}{label[1]}"
    return str(label)


def skeleton_from_json(data, where="skeleton"):
    """Rebuild a skeleton from its JSON; positions are re-integrated and checked."""
    from .tropmap import Edge, Tree, TropicalMapSkeleton, Vertex

    chain = chain_from_json(_field(data, "chain", where), f"{where}.chain")
    n = _int(_field(data, "n", where), f"{where}.n")
    rays = {name: tuple(v) for name, v in data.get("rays", {}).items()}
    sk = TropicalMapSkeleton(n, chain, data.get("kind", "custom"), rays)
    for idx, v in enumerate(_field(data, "vertices", where)):
        loc = f"{where}.vertices[{idx}]"
        if _int(_field(v, "id", loc), f"{loc}.id") != idx:
            raise InputError(f"{loc}: vertex ids must be 0, 1, 2, ...")
        sk.vertices.append(Vertex(idx, "cycle", None, v.get("label", str(idx)),
                                  tuple(_rational(p, f"{loc}.pos") for p in v.get("pos", []))))
    for idx, e in enumerate(_field(data, "edges", where)):
        loc = f"{where}.edges[{idx}]"
        length = _field(e, "len", loc)
        length = None if length == "inf" else _rational(length, f"{loc}.len")
        v = e.get("v")
        sk.edges.append(Edge(idx, _int(_field(e, "u", loc), f"{loc}.u"),
                             None if v is None else _int(v, f"{loc}.v"),
                             tuple(_int(x, f"{loc}.dir") for x in _field(e, "dir", loc)),
                             length, e.get("kind", "arc"), e.get("cycle"), e.get("tree")))
    for j, ids in enumerate(_field(data, "cycles", where), start=1):
        for eid in ids:
            sk.edges[eid].cycle = j
            sk.edges[eid].kind = "arc"
    for e in sk.edges:
        if e.kind == "arc":
            sk.vertices[e.u].cycle = e.cycle
            sk.vertices[e.v].cycle = e.cycle
    for idx, t in enumerate(data.get("trees", [])):
        point = t.get("point", {})
        tree = Tree(idx, t["base"], CyclePoint(point.get("cycle", 0), q(point.get("xi", 0))),
                    [(lf["ray"], lf["weight"], lf["divisor"]) for lf in t.get("leaves", [])],
                    t.get("root_edge"))
        for e in sk.edges:
            if e.tree == idx and e.v is not None:
                tree.nodes.append(e.v)
                sk.vertices[e.v].kind = "node"
                sk.vertices[e.v].cycle = tree.point.j
        sk.trees.append(tree)
    sk.info.update(data.get("info", {}))
    sk.info["v"], sk.info["w"] = {}, {}
    for v in sk.vertices:
        if v.label.startswith(("v", "w")) and v.label[1:].isdigit():
            sk.info[v.label[0]][int(v.label[1:])] = v.id
    if 1 not in sk.info["w"]:
        raise InputError(f"{where}: no vertex labelled w1")
    stored = [v.pos for v in sk.vertices]
    sk.integrate_positions()
    if any(s and s != v.pos for s, v in zip(stored, sk.vertices)):
        raise InputError(f"{where}: stored positions disagree with edge data")
    return sk


def write_text(path, text):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text if text.endswith("\n") else text + "\n")
