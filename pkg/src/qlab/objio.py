"""JSON object files for lattices, quantales, Q-sets, modules, groupoids, actions.

Files carry either a bare payload or a {"kind": ..., "payload": ...} envelope;
the kind of a bare payload is inferred from its discriminating key.  Output is
always enveloped and canonically formatted (sorted keys, two-space indent,
trailing newline), so emitting and re-loading an object is byte-stable.

References to quantales and groupoids inside other payloads are either an
inline payload or a "catalog:NAME" string resolved against the built-in
examples.
"""

from __future__ import annotations

import json

import numpy as np

from .catalog import catalog_entries, catalog_get
from .groupoid import FiniteGroupoid, GroupoidAction
from .hilbert import PreHilbertModule, QModule
from .lattice import SupLattice, build_lattice
from .qmatrix import QSet
from .quantale import Quantale

KINDS = ("lattice", "quantale", "qset", "module", "groupoid", "action")

_INFER = [("covers", "lattice"), ("mul", "quantale"), ("matrix", "qset"),
          ("ip", "module"), ("arrows", "groupoid"), ("act", "action")]


class InputError(ValueError):
    """Malformed file, schema mismatch, or unresolvable reference."""


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=2) + "\n"


def _need(payload: dict, key: str, kind: str):
    if key not in payload:
        raise InputError(f"{kind} payload is missing {key!r}")
    return payload[key]


def _table(raw, kind: str, key: str) -> np.ndarray:
    try:
        arr = np.asarray(raw, dtype=np.intp)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{kind}.{key} is not an integer table: {exc}") from None
    return arr


# ---------------------------------------------------------------- builders

def lattice_from_payload(p: dict) -> SupLattice:
    n = _need(p, "n", "lattice")
    covers = [tuple(c) for c in _need(p, "covers", "lattice")]
    labels = p.get("labels")
    try:
        return build_lattice(int(n), covers, labels)
    except Exception as exc:
        raise InputError(f"bad lattice payload: {exc}") from None


def quantale_from_payload(p: dict) -> Quantale:
    lat = lattice_from_payload(_need(p, "lattice", "quantale"))
    mul = _table(_need(p, "mul", "quantale"), "quantale", "mul")
    inv = _table(_need(p, "inv", "quantale"), "quantale", "inv")
    unit = p.get("unit")
    if mul.shape != (lat.n, lat.n) or inv.shape != (lat.n,):
        raise InputError("quantale table shapes do not match the lattice")
    if mul.size and (mul.min() < 0 or mul.max() >= lat.n or inv.min() < 0 or inv.max() >= lat.n):
        raise InputError("quantale table entries out of range")
    if unit is not None and not 0 <= int(unit) < lat.n:
        raise InputError("quantale unit out of range")
    return Quantale(lat, mul, inv, None if unit is None else int(unit),
                    name=p.get("name"))


def _quantale_ref(ref, context: str) -> Quantale:
    if isinstance(ref, str):
        kind, obj = resolve(ref, expect="quantale")
        return obj
    if isinstance(ref, dict):
        return quantale_from_payload(ref)
    raise InputError(f"{context}.quantale must be a payload or a catalog: reference")


def qset_from_payload(p: dict) -> QSet:
    Q = _quantale_ref(_need(p, "quantale", "qset"), "qset")
    index = [str(x) for x in _need(p, "index", "qset")]
    matrix = _table(_need(p, "matrix", "qset"), "qset", "matrix")
    if matrix.shape != (len(index), len(index)):
        raise InputError("qset matrix shape does not match the index set")
    if matrix.size and (matrix.min() < 0 or matrix.max() >= Q.n):
        raise InputError("qset matrix entries out of range")
    return QSet(Q, matrix, index)


def module_from_payload(p: dict) -> PreHilbertModule:
    Q = _quantale_ref(_need(p, "quantale", "module"), "module")
    carrier = lattice_from_payload(_need(p, "carrier", "module"))
    action = _table(_need(p, "action", "module"), "module", "action")
    ip = _table(_need(p, "ip", "module"), "module", "ip")
    if action.shape != (Q.n, carrier.n) or ip.shape != (carrier.n, carrier.n):
        raise InputError("module table shapes do not match quantale and carrier")
    if (action.size and (action.min() < 0 or action.max() >= carrier.n)) \
            or (ip.size and (ip.min() < 0 or ip.max() >= Q.n)):
        raise InputError("module table entries out of range")
    return PreHilbertModule(QModule(Q, carrier, action), ip)


def _index_of(labels: list[str], key: str, what: str) -> dict:
    if len(set(labels)) != len(labels):
        raise InputError(f"duplicate {what} labels in {key}")
    return {lab: i for i, lab in enumerate(labels)}


def groupoid_from_payload(p: dict) -> FiniteGroupoid:
    objects = [str(x) for x in _need(p, "objects", "groupoid")]
    arrows_raw = _need(p, "arrows", "groupoid")
    try:
        arrows = [str(a["id"]) for a in arrows_raw]
        d_lab = [str(a["d"]) for a in arrows_raw]
        r_lab = [str(a["r"]) for a in arrows_raw]
    except (TypeError, KeyError):
        raise InputError("groupoid.arrows must be objects with id, d, r") from None
    oi = _index_of(objects, "objects", "object")
    ai = _index_of(arrows, "arrows", "arrow")
    try:
        d = [oi[x] for x in d_lab]
        r = [oi[x] for x in r_lab]
        compose = {(ai[g], ai[h]): ai[gh] for g, h, gh in _need(p, "compose", "groupoid")}
        inv_raw = _need(p, "inv", "groupoid")
        inv = [ai[str(x)] for x in inv_raw]
        units = [0] * len(objects)
        for o, g in _need(p, "units", "groupoid").items():
            units[oi[str(o)]] = ai[str(g)]
    except KeyError as exc:
        raise InputError(f"groupoid payload references unknown label {exc}") from None
    return FiniteGroupoid(objects, arrows, d, r, compose, inv, units,
                          name=p.get("name"))


def _groupoid_ref(ref, context: str) -> FiniteGroupoid:
    if isinstance(ref, str):
        kind, obj = resolve(ref, expect="groupoid")
        return obj
    if isinstance(ref, dict):
        return groupoid_from_payload(ref)
    raise InputError(f"{context}.groupoid must be a payload or a catalog: reference")


def action_from_payload(p: dict) -> GroupoidAction:
    G = _groupoid_ref(_need(p, "groupoid", "action"), "action")
    points = [str(x) for x in _need(p, "points", "action")]
    xi = _index_of(points, "points", "point")
    oi = _index_of(G.objects, "objects", "object")
    ai = _index_of(G.arrows, "arrows", "arrow")
    try:
        anchor = [0] * len(points)
        for x, o in _need(p, "p", "action").items():
            anchor[xi[str(x)]] = oi[str(o)]
        act = {(ai[str(g)], xi[str(x)]): xi[str(gx)]
               for g, x, gx in _need(p, "act", "action")}
    except KeyError as exc:
        raise InputError(f"action payload references unknown label {exc}") from None
    return GroupoidAction(G, points, anchor, act, name=p.get("name"))


_BUILDERS = {
    "lattice": lattice_from_payload,
    "quantale": quantale_from_payload,
    "qset": qset_from_payload,
    "module": module_from_payload,
    "groupoid": groupoid_from_payload,
    "action": action_from_payload,
}


# -------------------------------------------------------------- serializers

def lattice_to_payload(lat: SupLattice) -> dict:
    return {"n": int(lat.n),
            "covers": [[int(i), int(j)] for i, j in lat.covers()],
            "labels": [str(x) for x in lat.labels]}


def quantale_to_payload(Q: Quantale) -> dict:
    return {"lattice": lattice_to_payload(Q.lattice),
            "mul": Q.mul.tolist(),
            "inv": Q.inv.tolist(),
            "unit": None if Q.unit is None else int(Q.unit),
            "name": Q.name}


def qset_to_payload(X: QSet) -> dict:
    return {"quantale": quantale_to_payload(X.Q),
            "index": [str(x) for x in X.labels],
            "matrix": X.A.data.tolist()}


def module_to_payload(X: PreHilbertModule) -> dict:
    return {"quantale": quantale_to_payload(X.quantale),
            "carrier": lattice_to_payload(X.carrier),
            "action": X.action.tolist(),
            "ip": X.ip.tolist()}


def groupoid_to_payload(G: FiniteGroupoid) -> dict:
    compose = [[G.arrows[g], G.arrows[h], G.arrows[int(G.compose[g, h])]]
               for g in range(G.n_arrows) for h in range(G.n_arrows)
               if G.compose[g, h] >= 0]
    return {"objects": list(G.objects),
            "arrows": [{"id": G.arrows[g], "d": G.objects[int(G.d[g])],
                        "r": G.objects[int(G.r[g])]} for g in range(G.n_arrows)],
            "compose": compose,
            "inv": [G.arrows[int(i)] for i in G.inv],
            "units": {G.objects[o]: G.arrows[int(G.units[o])]
                      for o in range(G.n_objects)},
            "name": G.name}


def action_to_payload(A: GroupoidAction) -> dict:
    G = A.groupoid
    act = [[G.arrows[g], A.points[x], A.points[int(A.act[g, x])]]
           for g in range(G.n_arrows) for x in range(A.n_points)
           if A.act[g, x] >= 0]
    return {"groupoid": groupoid_to_payload(G),
            "points": list(A.points),
            "p": {A.points[x]: G.objects[int(A.p[x])] for x in range(A.n_points)},
            "act": act,
            "name": A.name}


def to_payload(obj) -> tuple[str, dict]:
    if isinstance(obj, SupLattice):
        return "lattice", lattice_to_payload(obj)
    if isinstance(obj, Quantale):
        return "quantale", quantale_to_payload(obj)
    if isinstance(obj, QSet):
        return "qset", qset_to_payload(obj)
    if isinstance(obj, PreHilbertModule):
        return "module", module_to_payload(obj)
    if isinstance(obj, FiniteGroupoid):
        return "groupoid", groupoid_to_payload(obj)
    if isinstance(obj, GroupoidAction):
        return "action", action_to_payload(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dump_object(obj) -> str:
    kind, payload = to_payload(obj)
    return canonical_dumps({"kind": kind, "payload": payload})


# ----------------------------------------------------------------- loading

def parse_document(doc) -> tuple[str, dict]:
    """Envelope or bare payload -> (kind, payload), without building."""
    if not isinstance(doc, dict):
        raise InputError("top-level JSON value must be an object")
    if set(doc) == {"kind", "payload"}:
        kind = doc["kind"]
        if kind not in KINDS:
            raise InputError(f"unknown kind {kind!r}")
        if not isinstance(doc["payload"], dict):
            raise InputError("payload must be an object")
        return kind, doc["payload"]
    for key, kind in _INFER:
        if key in doc:
            return kind, doc
    raise InputError("cannot infer object kind from payload keys")


def build_object(kind: str, payload: dict):
    if kind not in _BUILDERS:
        raise InputError(f"unknown kind {kind!r}")
    return _BUILDERS[kind](payload)


def load_path(path: str) -> tuple[str, object]:
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror or exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON at line {exc.lineno} column {exc.colno}: "
                         f"{exc.msg}") from None
    kind, payload = parse_document(doc)
    return kind, build_object(kind, payload)


def resolve(ref: str, expect=None) -> tuple[str, object]:
    """A 'catalog:NAME' URI or a file path -> (kind, built object)."""
    if ref.startswith("catalog:"):
        name = ref[len("catalog:"):]
        try:
            kind, obj = catalog_get(name)
        except KeyError:
            known = ", ".join(sorted(catalog_entries()))
            raise InputError(f"unknown catalog entry {name!r} (known: {known})") from None
    else:
        kind, obj = load_path(ref)
    if expect is not None:
        allowed = {expect} if isinstance(expect, str) else set(expect)
        if kind not in allowed:
            raise InputError(f"{ref} is a {kind}, expected {' or '.join(sorted(allowed))}")
    return kind, obj
