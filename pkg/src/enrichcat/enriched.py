"""Enriched categories over a monoidal backend, and enriched functors.

Composition runs left to right: ``comp[x, y, z]: C(x,y) * C(y,z) -> C(x,z)``.
All axioms are strict equalities of backend morphisms, with associators and
unitors inserted where the bracketing requires them.
"""

from dataclasses import dataclass, field
from itertools import product

from .errors import BackendMismatch, check_budget
from .fincat import FiniteCategory
from .report import Report
from .vbackend import BOOL, FINSET, FinVectBackend, BoolMor, FinSetMor


@dataclass(eq=False)
class VCategory:
    backend: object
    objects: tuple
    hom: dict
    unit: dict
    comp: dict
    name: str = ""

    def __post_init__(self):
        self.objects = tuple(self.objects)

    def __call__(self, x, y):
        return self.hom[(x, y)]

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, VCategory) and self.backend == other.backend
                and self.objects == other.objects and self.hom == other.hom
                and self.unit == other.unit and self.comp == other.comp)

    __hash__ = object.__hash__

    def __repr__(self):
        return f"VCategory({self.name or '?'}, {self.backend.kind}, objects={list(self.objects)})"


@dataclass(eq=False)
class VFunctor:
    source: VCategory
    target: VCategory
    object_map: dict
    hom_map: dict
    name: str = ""

    def __call__(self, x):
        return self.object_map[x]

    def key(self):
        """Hashable identity of the functor's data (source/target not included)."""
        return (tuple(self.object_map[x] for x in self.source.objects),
                tuple(self.hom_map[p] for p in product(self.source.objects, repeat=2)))

    def __eq__(self, other):
        return (isinstance(other, VFunctor) and self.source == other.source
                and self.target == other.target and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"VFunctor({self.name or '?'}: {dict(self.object_map)})"


# -- validation

def validate_category(C):
    V = C.backend
    rep = Report(f"category {C.name}".strip())
    X = C.objects
    for x, y in product(X, repeat=2):
        if (x, y) not in C.hom:
            rep.fail("missing hom", (x, y))
    if rep.failures:
        return rep
    for x in X:
        u = C.unit.get(x)
        if u is None or V.source(u) != V.unit() or V.target(u) != C(x, x):
            rep.fail("bad unit", (x,))
    for x, y, z in product(X, repeat=3):
        c = C.comp.get((x, y, z))
        if (c is None or V.source(c) != V.tensor(C(x, y), C(y, z))
                or V.target(c) != C(x, z)):
            rep.fail("bad composition type", (x, y, z))
    if rep.failures:
        return rep
    for x, y in product(X, repeat=2):
        a = C(x, y)
        rep.count(2)
        lhs = V.compose(C.comp[(x, x, y)], V.tensor_mor(C.unit[x], V.identity(a)))
        if lhs != V.left_unitor(a):
            rep.fail("left unit law", (x, y))
        rhs = V.compose(C.comp[(x, y, y)], V.tensor_mor(V.identity(a), C.unit[y]))
        if rhs != V.right_unitor(a):
            rep.fail("right unit law", (x, y))
    for x, y, z, w in product(X, repeat=4):
        rep.count()
        a, b, c = C(x, y), C(y, z), C(z, w)
        lhs = V.compose(C.comp[(x, y, w)], V.tensor_mor(V.identity(a), C.comp[(y, z, w)]),
                        V.associator(a, b, c))
        rhs = V.compose(C.comp[(x, z, w)], V.tensor_mor(C.comp[(x, y, z)], V.identity(c)))
        if lhs != rhs:
            rep.fail("associativity", (x, y, z, w))
    return rep


def validate_functor(F):
    C, D = F.source, F.target
    V = C.backend
    rep = Report(f"functor {F.name}".strip())
    if D.backend != V:
        rep.fail("backend mismatch", (C.name, D.name))
        return rep
    for x in C.objects:
        if F.object_map.get(x) not in D.objects:
            rep.fail("object not mapped into target", (x,))
    if rep.failures:
        return rep
    for x, y in product(C.objects, repeat=2):
        h = F.hom_map.get((x, y))
        if h is None or V.source(h) != C(x, y) or V.target(h) != D(F(x), F(y)):
            rep.fail("bad hom map type", (x, y))
    if rep.failures:
        return rep
    for x in C.objects:
        rep.count()
        if V.compose(F.hom_map[(x, x)], C.unit[x]) != D.unit[F(x)]:
            rep.fail("unit not preserved", (x,))
    for x, y, z in product(C.objects, repeat=3):
        rep.count()
        lhs = V.compose(F.hom_map[(x, z)], C.comp[(x, y, z)])
        rhs = V.compose(D.comp[(F(x), F(y), F(z))],
                        V.tensor_mor(F.hom_map[(x, y)], F.hom_map[(y, z)]))
        if lhs != rhs:
            rep.fail("composition not preserved", (x, y, z))
    return rep


def identity_functor(C):
    V = C.backend
    return VFunctor(C, C, {x: x for x in C.objects},
                    {(x, y): V.identity(C(x, y)) for x, y in product(C.objects, repeat=2)},
                    name=f"id_{C.name}")


def compose_functors(F, G):
    """``F`` then ``G``."""
    V = F.source.backend
    return VFunctor(F.source, G.target, {x: G(F(x)) for x in F.source.objects},
                    {(x, y): V.compose(G.hom_map[(F(x), F(y))], F.hom_map[(x, y)])
                     for x, y in product(F.source.objects, repeat=2)},
                    name=f"{G.name}.{F.name}")


# -- constructions

def _interval_like(V, objects, leq, name):
    I = V.unit()
    Z = V.initial()
    hom = {(i, j): (I if leq(i, j) else Z) for i, j in product(objects, repeat=2)}
    unit = {i: V.identity(I) for i in objects}
    comp = {}
    for i, j, k in product(objects, repeat=3):
        src = V.tensor(hom[(i, j)], hom[(j, k)])
        if leq(i, j) and leq(j, k):
            comp[(i, j, k)] = V.left_unitor(I)
        else:
            comp[(i, j, k)] = V.initial_map(src, hom[(i, k)])
    return VCategory(V, tuple(objects), hom, unit, comp, name=name)


def interval_category(n, backend=FINSET):
    """The total order ``[n]``: unit homs for ``i <= j``, initial ones otherwise."""
    return _interval_like(backend, range(n + 1), lambda i, j: i <= j, f"[{n}]")


def e_category(n, backend=FINSET):
    """The contractible category ``E^n`` on ``n+1`` objects (all homs the unit)."""
    return _interval_like(backend, range(n + 1), lambda i, j: True, f"E{n}")


def tensor_with_interval(C, n):
    """``C (x) [n]``: objects ``(x, i)``; ``C(x, y)`` if ``i <= j``, initial otherwise."""
    return _tensor_with_shape(C, n, lambda i, j: i <= j, f"{C.name}x[{n}]")


def tensor_with_e(C, n):
    """``C (x) E^n``: objects ``(x, i)`` and ``hom = C(x, y)`` for all ``i, j``."""
    return _tensor_with_shape(C, n, lambda i, j: True, f"{C.name}xE{n}")


def _tensor_with_shape(C, n, leq, name):
    V = C.backend
    Z = V.initial()
    objs = tuple((x, i) for x in C.objects for i in range(n + 1))
    hom, unit, comp = {}, {}, {}
    for (x, i), (y, j) in product(objs, repeat=2):
        hom[((x, i), (y, j))] = C(x, y) if leq(i, j) else Z
    for (x, i) in objs:
        unit[(x, i)] = C.unit[x]
    for (x, i), (y, j), (z, k) in product(objs, repeat=3):
        key = ((x, i), (y, j), (z, k))
        if leq(i, j) and leq(j, k):
            comp[key] = C.comp[(x, y, z)]
        else:
            src = V.tensor(hom[key[:2]], hom[key[1:]])
            comp[key] = V.initial_map(src, hom[(key[0], key[2])])
    return VCategory(V, objs, hom, unit, comp, name=name)


def interval_functor(C, theta, shape=tensor_with_interval):
    """``C (x) theta: C (x) [m] -> C (x) [n]`` for a simplex map ``theta``."""
    src, tgt = shape(C, theta.source_rank), shape(C, theta.target_rank)
    V = C.backend
    omap = {(x, i): (x, theta(i)) for (x, i) in src.objects}
    hmap = {}
    for a, b in product(src.objects, repeat=2):
        s, t = src(a, b), tgt(omap[a], omap[b])
        hmap[(a, b)] = V.identity(s) if s == t else V.initial_map(s, t)
    return VFunctor(src, tgt, omap, hmap, name=f"{C.name}x{theta.values}")


def full_subcategory(C, objects, relabel=None):
    relabel = relabel or (lambda x: x)
    objs = list(objects)
    return VCategory(
        C.backend, tuple(relabel(x) for x in objs),
        {(relabel(x), relabel(y)): C(x, y) for x, y in product(objs, repeat=2)},
        {relabel(x): C.unit[x] for x in objs},
        {(relabel(x), relabel(y), relabel(z)): C.comp[(x, y, z)]
         for x, y, z in product(objs, repeat=3)},
        name=f"{C.name}|sub")


def monoid_category(elements, mult, unit, name="monoid", obj="*"):
    """One-object FinSet category from a multiplication table ``mult(a, b)``.

    The table is used as given, so non-associative input yields an invalid
    category (useful for testing the validator).
    """
    V = FINSET
    A = V.obj(elements)
    c = V.mor(V.tensor(A, A), A, lambda ab: mult(*ab))
    return VCategory(V, (obj,), {(obj, obj): A}, {obj: V.mor(V.unit(), A, lambda _: unit)},
                     {(obj, obj, obj): c}, name=name)


def preorder_category(objects, leq, name="preorder"):
    """Bool-enriched category of a preorder given by a relation ``leq(x, y)``."""
    V = BOOL
    objects = tuple(objects)
    hom = {(x, y): bool(leq(x, y)) for x, y in product(objects, repeat=2)}
    unit = {x: BoolMor(True, hom[(x, x)]) for x in objects}
    comp = {(x, y, z): BoolMor(hom[(x, y)] and hom[(y, z)], hom[(x, z)])
            for x, y, z in product(objects, repeat=3)}
    return VCategory(V, objects, hom, unit, comp, name=name)


def finset_category(objects, homs, units, compose, name="C"):
    """FinSet category from element labels.

    ``homs[(x, y)]`` lists labels, ``units[x]`` is a label and
    ``compose(x, y, z, f, g)`` returns the label of ``f`` followed by ``g``.
    Missing homs are empty.
    """
    V = FINSET
    objects = tuple(objects)
    hom = {(x, y): V.obj(homs.get((x, y), ())) for x, y in product(objects, repeat=2)}
    unit = {x: V.mor(V.unit(), hom[(x, x)], lambda _, x=x: units[x]) for x in objects}
    comp = {}
    for x, y, z in product(objects, repeat=3):
        src = V.tensor(hom[(x, y)], hom[(y, z)])
        comp[(x, y, z)] = V.mor(src, hom[(x, z)],
                                lambda fg, x=x, y=y, z=z: compose(x, y, z, fg[0], fg[1]))
    return VCategory(V, objects, hom, unit, comp, name=name)


# -- underlying category and completeness

def underlying_category(C, bound=None):
    """Ordinary category with arrows ``x -> y`` the global elements of ``C(x, y)``."""
    V = C.backend
    I = V.unit()
    diag = V.inverse(V.left_unitor(I))
    arrows = []
    for x, y in product(C.objects, repeat=2):
        for e in V.global_elements(C(x, y), bound):
            arrows.append((x, y, e))
    check_budget(len(arrows), bound, "underlying category arrows")

    def comp(a, b):
        return V.compose(C.comp[(a[0], a[1], b[1])], V.tensor_mor(a[2], b[2]), diag)

    return FiniteCategory(C.objects, arrows, comp, lambda x: C.unit[x], name=f"u({C.name})")


def nonidentity_isomorphisms(C, bound=None):
    u = underlying_category(C, bound)
    return [(f, g) for f, g in u.isomorphisms() if f != u.identity(f[0])]


def is_complete_truncated(C, bound=None):
    """Gauntness: every isomorphism of the underlying category is an identity."""
    return not nonidentity_isomorphisms(C, bound)


# -- change of base

@dataclass
class MonoidalFunctor:
    """A strong monoidal functor between backends.

    ``mu(a, b): F(a) * F(b) -> F(a * b)`` and ``eps: I -> F(I)``.
    """

    name: str
    source: object
    target: object
    on_obj: object
    on_mor: object
    mu: object
    eps: object = field(default=None)


def _finset_to_bool():
    S, B = FINSET, BOOL

    def on_obj(a):
        return len(a) > 0

    def on_mor(f):
        return BoolMor(len(f.source) > 0, len(f.target) > 0)

    return MonoidalFunctor("finset->bool", S, B, on_obj, on_mor,
                           lambda a, b: BoolMor(on_obj(a) and on_obj(b), on_obj(S.tensor(a, b))),
                           BoolMor(True, True))


def _finset_to_finvect(p):
    S, W = FINSET, FinVectBackend(p)

    def on_obj(a):
        return W.obj(len(a))

    def on_mor(f):
        import numpy as np
        m = np.zeros((len(f.target), len(f.source)), dtype=np.int64)
        for i, t in enumerate(f.table):
            m[t, i] = 1
        return W.mor(on_obj(f.source), on_obj(f.target), m)

    # lexicographic FinSet tensors line up with Kronecker bases
    return MonoidalFunctor(f"finset->finvect{p}", S, W, on_obj, on_mor,
                           lambda a, b: W.identity(W.obj(len(a) * len(b))),
                           W.identity(W.unit()))


def _bool_to_finset():
    S, B = FINSET, BOOL

    def on_obj(a):
        return S.unit() if a else S.initial()

    def on_mor(f):
        src, tgt = on_obj(f.source), on_obj(f.target)
        return S.initial_map(src, tgt) if not f.source else S.identity(tgt)

    def mu(a, b):
        src = S.tensor(on_obj(a), on_obj(b))
        tgt = on_obj(a and b)
        if a and b:
            return FinSetMor(src, tgt, (0,))
        return S.initial_map(src, tgt)

    return MonoidalFunctor("bool->finset", B, S, on_obj, on_mor, mu, S.identity(S.unit()))


def shipped_functor(name):
    """One of ``finset->bool``, ``finset->finvect<p>``, ``bool->finset``."""
    if name == "finset->bool":
        return _finset_to_bool()
    if name == "bool->finset":
        return _bool_to_finset()
    if name.startswith("finset->finvect"):
        return _finset_to_finvect(int(name[len("finset->finvect"):] or 2))
    raise ValueError(f"unsupported functor descriptor {name!r}")


def change_of_base(F, C):
    if isinstance(F, str):
        F = shipped_functor(F)
    if C.backend != F.source:
        raise BackendMismatch(f"{F.name} cannot act on a {C.backend.kind} category")
    W = F.target
    X = C.objects
    hom = {k: F.on_obj(v) for k, v in C.hom.items()}
    unit = {x: W.compose(F.on_mor(C.unit[x]), F.eps) for x in X}
    comp = {(x, y, z): W.compose(F.on_mor(C.comp[(x, y, z)]), F.mu(C(x, y), C(y, z)))
            for x, y, z in product(X, repeat=3)}
    return VCategory(W, X, hom, unit, comp, name=f"{F.name}({C.name})")


def change_of_base_functor(F, G, source=None, target=None):
    """Transport an enriched functor ``G`` along the backend functor ``F``."""
    if isinstance(F, str):
        F = shipped_functor(F)
    source = source or change_of_base(F, G.source)
    target = target or change_of_base(F, G.target)
    return VFunctor(source, target, dict(G.object_map),
                    {k: F.on_mor(v) for k, v in G.hom_map.items()}, name=f"{F.name}({G.name})")
