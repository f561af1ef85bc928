"""JSON workspace files: one backend plus named categories, bimodules, functors and chains.

Layout (``format_version`` 1)::

    {"format_version": 1,
     "backend": {"kind": "finset"},
     "categories": {"C": {"objects": [...], "hom": {"x|y": ...}, "unit": {...}, "comp": {...}}},
     "bimodules": {"M": {"left": "C", "right": "D", "mod": {...},
                         "left_act": {"x2|x|y": ...}, "right_act": {"x|y|y2": ...}}},
     "functors": {"F": {"source": "C", "target": "D", "objects": {...}, "homs": {"x|y": ...}}},
     "chains": {"K": ["M", "N"]}}

Tuples of names are joined with ``|``.  Hom values depend on the backend:

* finset: a list of string labels; morphisms are tables ``{"f|g": "h"}`` keyed by the
  source labels (pairs joined with ``|``); a unit is the label it picks out.
* bool: ``true``/``false`` (missing means false); units, composition and actions
  are implied and rejected if they do not exist.
* finvect: a dimension; morphisms are row-major matrices of residues, missing ones
  are zero.
"""

import json
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .bimodule import VBimodule
from .doublecat import Chain, chain_of
from .enriched import VCategory, VFunctor
from .errors import BackendMismatch, CategoryMismatch, EnrichCatError
from .vbackend import BoolMor, make_backend

FORMAT_VERSION = 1
SEP = "|"
SECTIONS = ("categories", "bimodules", "functors", "chains")
SINGULAR = {"categories": "category", "bimodules": "bimodule", "functors": "functor",
            "chains": "chain"}


class WorkspaceError(EnrichCatError):
    def __init__(self, message, line=None, col=None):
        self.line, self.col = line, col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + message)


@dataclass
class Workspace:
    backend: object
    categories: dict = field(default_factory=dict)
    bimodules: dict = field(default_factory=dict)
    functors: dict = field(default_factory=dict)
    chains: dict = field(default_factory=dict)
    format_version: int = FORMAT_VERSION

    def get(self, section, name):
        try:
            return getattr(self, section)[name]
        except KeyError:
            raise WorkspaceError(f"no {SINGULAR[section]} named {name!r}") from None


def _position(text, offset):
    line = text.count("\n", 0, offset) + 1
    return line, offset - (text.rfind("\n", 0, offset) + 1) + 1


def _locate(text, path):
    """Best-effort position of the JSON key path (strings are matched as quoted keys)."""
    pos = 0
    for key in path:
        if not isinstance(key, str):
            continue
        hit = text.find(json.dumps(key), pos)
        if hit < 0:
            break
        pos = hit
    return _position(text, pos)


class _Parser:
    def __init__(self, text):
        self.text = text

    def error(self, message, *path, exc=WorkspaceError):
        line, col = _locate(self.text, path)
        if exc is WorkspaceError:
            return WorkspaceError(message, line, col)
        return exc(f"line {line}, column {col}: {message}")

    def load(self):
        def no_dupes(pairs):
            d = {}
            for k, v in pairs:
                if k in d:
                    raise self.error(f"duplicate key {k!r}", k)
                d[k] = v
            return d

        try:
            doc = json.loads(self.text, object_pairs_hook=no_dupes)
        except json.JSONDecodeError as e:
            raise WorkspaceError(e.msg, e.lineno, e.colno) from None
        if not isinstance(doc, dict):
            raise WorkspaceError("top level must be an object", 1, 1)
        return doc

    def parse(self):
        doc = self.load()
        unknown = set(doc) - {"format_version", "backend", *SECTIONS}
        if unknown:
            raise self.error(f"unknown field {sorted(unknown)[0]!r}", sorted(unknown)[0])
        if doc.get("format_version") != FORMAT_VERSION:
            raise self.error(f"format_version must be {FORMAT_VERSION}", "format_version")
        if "backend" not in doc:
            raise self.error("missing backend descriptor")
        try:
            self.V = make_backend(doc["backend"])
        except (ValueError, KeyError, AttributeError) as e:
            raise self.error(f"bad backend descriptor: {e}", "backend") from None
        if self.V.kind not in ("finset", "bool", "finvect"):
            raise self.error(f"backend {self.V.kind!r} cannot be written in a workspace", "backend")
        names = {}
        for sec in SECTIONS:
            body = doc.get(sec, {})
            if not isinstance(body, dict):
                raise self.error(f"{sec} must be an object", sec)
            for name in body:
                if name in names:
                    raise self.error(f"name {name!r} used in both {names[name]} and {sec}", sec, name)
                names[name] = sec
        ws = Workspace(self.V)
        for name, body in doc.get("categories", {}).items():
            ws.categories[name] = self.category(name, body)
        for name, body in doc.get("bimodules", {}).items():
            ws.bimodules[name] = self.bimodule(ws, name, body)
        for name, body in doc.get("functors", {}).items():
            ws.functors[name] = self.functor(ws, name, body)
        for name, body in doc.get("chains", {}).items():
            ws.chains[name] = self.chain(ws, name, body)
        return ws

    # -- helpers

    def ref(self, ws, section, name, *path):
        table = getattr(ws, section)
        if not isinstance(name, str) or name not in table:
            raise self.error(f"undefined {SINGULAR[section]} {name!r}", *path, name if isinstance(name, str) else "")
        return table[name]

    def key(self, k, arity, allowed, *path):
        parts = tuple(k.split(SEP))
        if len(parts) != arity or any(p not in a for p, a in zip(parts, allowed)):
            raise self.error(f"bad key {k!r}", *path, k)
        return parts

    def hom_value(self, v, *path):
        kind = self.V.kind
        if kind == "finset":
            if not isinstance(v, list) or not all(isinstance(s, str) and SEP not in s for s in v):
                raise self.error("finset hom must be a list of labels without '|'", *path,
                                 exc=BackendMismatch)
            try:
                return self.V.obj(v)
            except ValueError as e:
                raise self.error(str(e), *path) from None
        if kind == "bool":
            if not isinstance(v, bool):
                raise self.error("bool hom must be true or false", *path, exc=BackendMismatch)
            return v
        if isinstance(v, bool) or not isinstance(v, int) or v < 0:
            raise self.error("finvect hom must be a dimension", *path, exc=BackendMismatch)
        return self.V.obj(v)

    def table(self, src, tgt, v, *path):
        """A morphism ``src -> tgt`` in the workspace's finset or finvect encoding."""
        if self.V.kind == "finset":
            v = {} if v is None else v
            if not isinstance(v, dict):
                raise self.error("finset morphism must be a table", *path)
            mapping = {}
            for s in src.labels:
                k = SEP.join(s) if isinstance(s, tuple) else s
                if k not in v:
                    raise self.error(f"table has no entry for {k!r}", *path)
                if v[k] not in tgt.index:
                    raise self.error(f"{v[k]!r} is not in the target", *path, k)
                mapping[s] = v[k]
            if len(v) != len(src):
                extra = sorted(set(v) - {SEP.join(s) if isinstance(s, tuple) else s for s in src.labels})
                raise self.error(f"table entry {extra[0]!r} is not in the source", *path, extra[0])
            return self.V.mor(src, tgt, mapping)
        if v is None:
            v = np.zeros((tgt.dim, src.dim), dtype=np.int64)
        try:
            m = np.asarray(v, dtype=np.int64)
            if m.shape != (tgt.dim, src.dim) and m.size != 0:
                raise ValueError
        except (ValueError, TypeError):
            raise self.error(f"matrix must have shape {tgt.dim}x{src.dim}", *path) from None
        return self.V.mor(src, tgt, m.reshape(tgt.dim, src.dim))

    def unit_map(self, a, v, *path):
        V = self.V
        if V.kind == "finset":
            if v is None or v not in a.index:
                raise self.error("unit must name an element of the endo-hom", *path)
            return V.mor(V.unit(), a, lambda _: v)
        return self.table(V.unit(), a, v, *path)

    def bool_mor(self, src, tgt, what, *path):
        if src and not tgt:
            raise self.error(f"{what} does not exist", *path)
        return BoolMor(src, tgt)

    # -- sections

    def category(self, name, body):
        base = ("categories", name)
        V = self.V
        objs = body.get("objects")
        if not isinstance(objs, list) or not all(isinstance(o, str) and SEP not in o for o in objs):
            raise self.error("objects must be a list of names without '|'", *base, "objects")
        if len(set(objs)) != len(objs):
            raise self.error("duplicate object", *base, "objects")
        hom_in = body.get("hom", {})
        for k in hom_in:
            self.key(k, 2, (objs, objs), *base, "hom")
        hom = {}
        for x, y in product(objs, repeat=2):
            k = f"{x}{SEP}{y}"
            default = {"finset": [], "bool": False, "finvect": 0}[V.kind]
            hom[(x, y)] = self.hom_value(hom_in.get(k, default), *base, "hom", k)
        units_in, comp_in = body.get("unit", {}), body.get("comp", {})
        unit, comp = {}, {}
        for x in objs:
            if V.kind == "bool":
                unit[x] = self.bool_mor(True, hom[(x, x)], f"unit at {x!r}", *base, "hom")
            else:
                unit[x] = self.unit_map(hom[(x, x)], units_in.get(x), *base, "unit", x)
        for k in comp_in:
            self.key(k, 3, (objs,) * 3, *base, "comp")
        for x, y, z in product(objs, repeat=3):
            k = SEP.join((x, y, z))
            if V.kind == "bool":
                comp[(x, y, z)] = self.bool_mor(hom[(x, y)] and hom[(y, z)], hom[(x, z)],
                                                f"composite {k!r}", *base, "hom")
            else:
                comp[(x, y, z)] = self.table(V.tensor(hom[(x, y)], hom[(y, z)]), hom[(x, z)],
                                             comp_in.get(k), *base, "comp", k)
        return VCategory(V, objs, hom, unit, comp, name=name)

    def bimodule(self, ws, name, body):
        base = ("bimodules", name)
        V = self.V
        C = self.ref(ws, "categories", body.get("left"), *base, "left")
        D = self.ref(ws, "categories", body.get("right"), *base, "right")
        X, Y = C.objects, D.objects
        mod_in = body.get("mod", {})
        for k in mod_in:
            self.key(k, 2, (X, Y), *base, "mod")
        default = {"finset": [], "bool": False, "finvect": 0}[V.kind]
        mod = {(x, y): self.hom_value(mod_in.get(f"{x}{SEP}{y}", default), *base, "mod")
               for x, y in product(X, Y)}
        la_in, ra_in = body.get("left_act", {}), body.get("right_act", {})
        for k in la_in:
            self.key(k, 3, (X, X, Y), *base, "left_act")
        for k in ra_in:
            self.key(k, 3, (X, Y, Y), *base, "right_act")
        la, ra = {}, {}
        for x2, x, y in product(X, X, Y):
            k = SEP.join((x2, x, y))
            if V.kind == "bool":
                la[(x2, x, y)] = self.bool_mor(C(x2, x) and mod[(x, y)], mod[(x2, y)],
                                               f"left action {k!r}", *base, "mod")
            else:
                la[(x2, x, y)] = self.table(V.tensor(C(x2, x), mod[(x, y)]), mod[(x2, y)],
                                            la_in.get(k), *base, "left_act", k)
        for x, y, y2 in product(X, Y, Y):
            k = SEP.join((x, y, y2))
            if V.kind == "bool":
                ra[(x, y, y2)] = self.bool_mor(mod[(x, y)] and D(y, y2), mod[(x, y2)],
                                               f"right action {k!r}", *base, "mod")
            else:
                ra[(x, y, y2)] = self.table(V.tensor(mod[(x, y)], D(y, y2)), mod[(x, y2)],
                                            ra_in.get(k), *base, "right_act", k)
        return VBimodule(C, D, mod, la, ra, name=name)

    def functor(self, ws, name, body):
        base = ("functors", name)
        V = self.V
        C = self.ref(ws, "categories", body.get("source"), *base, "source")
        D = self.ref(ws, "categories", body.get("target"), *base, "target")
        om = body.get("objects", {})
        if set(om) != set(C.objects) or any(v not in D.objects for v in om.values()):
            raise self.error("object map must send every source object to a target object",
                             *base, "objects")
        homs_in = body.get("homs", {})
        for k in homs_in:
            self.key(k, 2, (C.objects, C.objects), *base, "homs")
        hm = {}
        for x, y in product(C.objects, repeat=2):
            k = f"{x}{SEP}{y}"
            src, tgt = C(x, y), D(om[x], om[y])
            if V.kind == "bool":
                hm[(x, y)] = self.bool_mor(src, tgt, f"action on {k!r}", *base, "objects")
            else:
                hm[(x, y)] = self.table(src, tgt, homs_in.get(k), *base, "homs", k)
        return VFunctor(C, D, dict(om), hm, name=name)

    def chain(self, ws, name, body):
        base = ("chains", name)
        if not isinstance(body, list) or not body:
            raise self.error("a chain is a nonempty list of bimodule names", *base)
        mods = [self.ref(ws, "bimodules", m, *base) for m in body]
        try:
            ch = chain_of(*mods)
        except CategoryMismatch as e:
            raise self.error(str(e), *base) from None
        return ch


def parse_text(text):
    return _Parser(text).parse()


def parse(path):
    with open(path, encoding="utf-8") as fh:
        return parse_text(fh.read())


# -- serialization

def _label_key(s):
    return SEP.join(s) if isinstance(s, tuple) else s


def _check_label(s):
    if not isinstance(s, str) or SEP in s:
        raise ValueError(f"label {s!r} cannot be written to a workspace (strings without '|' only)")
    return s


def _mor(V, f):
    if V.kind == "finset":
        return {_label_key(s): f(s) for s in f.source.labels}
    return f.matrix.tolist()


def _hom(V, a):
    if V.kind == "finset":
        return [_check_label(s) for s in a.labels]
    if V.kind == "bool":
        return a
    return a.dim


def _nonzero(V, f):
    """Whether a morphism must be written (bool never, finvect only if nonzero)."""
    if V.kind == "bool":
        return False
    if V.kind == "finvect":
        return bool(f.matrix.any())
    return len(f.source) > 0


def category_doc(C):
    V = C.backend
    X = [_check_label(x) for x in C.objects]
    hom = {f"{x}{SEP}{y}": _hom(V, C(x, y)) for x, y in product(X, repeat=2)
           if V.kind != "bool" or C(x, y)}
    doc = {"objects": X, "hom": hom}
    if V.kind != "bool":
        unit = {}
        for x in X:
            u = C.unit[x]
            if V.kind == "finset":
                unit[x] = u(u.source.labels[0])
            elif _nonzero(V, u):
                unit[x] = _mor(V, u)
        doc["unit"] = unit
        doc["comp"] = {SEP.join(t): _mor(V, C.comp[t]) for t in product(X, repeat=3)
                       if _nonzero(V, C.comp[t])}
    return doc


def _name_of(table, obj, what):
    for k, v in table.items():
        if v is obj:
            return k
    raise ValueError(f"{what} {obj!r} is not registered in the workspace")


def bimodule_doc(M, categories):
    V = M.backend
    X, Y = M.left.objects, M.right.objects
    doc = {"left": _name_of(categories, M.left, "category"),
           "right": _name_of(categories, M.right, "category"),
           "mod": {f"{x}{SEP}{y}": _hom(V, M(x, y)) for x, y in product(X, Y)
                   if V.kind != "bool" or M(x, y)}}
    if V.kind != "bool":
        doc["left_act"] = {SEP.join(t): _mor(V, f) for t, f in M.left_act.items() if _nonzero(V, f)}
        doc["right_act"] = {SEP.join(t): _mor(V, f) for t, f in M.right_act.items() if _nonzero(V, f)}
    return doc


def functor_doc(F, categories):
    V = F.source.backend
    doc = {"source": _name_of(categories, F.source, "category"),
           "target": _name_of(categories, F.target, "category"),
           "objects": dict(F.object_map)}
    if V.kind != "bool":
        doc["homs"] = {f"{x}{SEP}{y}": _mor(V, f) for (x, y), f in F.hom_map.items()
                       if _nonzero(V, f)}
    return doc


def to_doc(ws):
    return {
        "format_version": ws.format_version,
        "backend": ws.backend.descriptor(),
        "categories": {n: category_doc(C) for n, C in ws.categories.items()},
        "bimodules": {n: bimodule_doc(M, ws.categories) for n, M in ws.bimodules.items()},
        "functors": {n: functor_doc(F, ws.categories) for n, F in ws.functors.items()},
        "chains": {n: [_name_of(ws.bimodules, M, "bimodule") for M in ch.mods]
                   for n, ch in ws.chains.items()},
    }


def serialize(ws):
    """Canonical text: sorted keys, two-space indent, trailing newline."""
    return json.dumps(to_doc(ws), indent=2, sort_keys=True) + "\n"


def workspace_from(backend, categories=(), bimodules=(), functors=(), chains=()):
    """Collect objects into a workspace, keyed by their ``name`` attributes.

    Categories referenced by bimodules and functors must be listed too.
    """
    ws = Workspace(backend)
    for C in categories:
        ws.categories[C.name] = C
    for M in bimodules:
        ws.bimodules[M.name] = M
    for F in functors:
        ws.functors[F.name] = F
    for name, ch in dict(chains).items():
        ws.chains[name] = ch if isinstance(ch, Chain) else chain_of(*ch)
    return ws


__all__ = ["FORMAT_VERSION", "Workspace", "WorkspaceError", "parse", "parse_text",
           "serialize", "to_doc", "workspace_from"]
