"""Bimodules between enriched categories, their squares, restriction and external product.

For a bimodule ``M`` from ``C`` (objects X) to ``D`` (objects Y):

* ``left_act[x', x, y]:  C(x', x) * M(x, y) -> M(x', y)``
* ``right_act[x, y, y']: M(x, y) * D(y, y') -> M(x, y')``
"""

from dataclasses import dataclass
from itertools import product

from .enriched import (VCategory, VFunctor, change_of_base, compose_functors, identity_functor,
                       shipped_functor)
from .errors import BackendMismatch
from .report import Report
from .vbackend import PairMor, PairObj, ProductBackend


@dataclass(eq=False)
class VBimodule:
    left: VCategory
    right: VCategory
    mod: dict
    left_act: dict
    right_act: dict
    name: str = ""

    @property
    def backend(self):
        return self.left.backend

    def __call__(self, x, y):
        return self.mod[(x, y)]

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, VBimodule) and self.left == other.left
                and self.right == other.right and self.mod == other.mod
                and self.left_act == other.left_act and self.right_act == other.right_act)

    __hash__ = object.__hash__

    def __repr__(self):
        return f"VBimodule({self.name or '?'}: {self.left.name} -> {self.right.name})"


@dataclass(eq=False)
class BimoduleSquare:
    """A cell ``M(x, y) -> M'(Fx, Gy)`` framed by functors ``F`` and ``G``."""

    top: VBimodule
    bottom: VBimodule
    left: VFunctor
    right: VFunctor
    cell: dict


def validate_bimodule(M):
    C, D = M.left, M.right
    V = M.backend
    rep = Report(f"bimodule {M.name}".strip())
    if D.backend != V:
        rep.fail("backend mismatch", (C.name, D.name))
        return rep
    X, Y = C.objects, D.objects
    for x, y in product(X, Y):
        if (x, y) not in M.mod:
            rep.fail("missing entry", (x, y))
    if rep.failures:
        return rep
    for x2, x, y in product(X, X, Y):
        a = M.left_act.get((x2, x, y))
        if a is None or V.source(a) != V.tensor(C(x2, x), M(x, y)) or V.target(a) != M(x2, y):
            rep.fail("bad left action type", (x2, x, y))
    for x, y, y2 in product(X, Y, Y):
        a = M.right_act.get((x, y, y2))
        if a is None or V.source(a) != V.tensor(M(x, y), D(y, y2)) or V.target(a) != M(x, y2):
            rep.fail("bad right action type", (x, y, y2))
    if rep.failures:
        return rep
    for x, y in product(X, Y):
        m = M(x, y)
        rep.count(2)
        if V.compose(M.left_act[(x, x, y)], V.tensor_mor(C.unit[x], V.identity(m))) != V.left_unitor(m):
            rep.fail("left unit law", (x, y))
        if V.compose(M.right_act[(x, y, y)], V.tensor_mor(V.identity(m), D.unit[y])) != V.right_unitor(m):
            rep.fail("right unit law", (x, y))
    for x3, x2, x, y in product(X, X, X, Y):
        rep.count()
        a, b, m = C(x3, x2), C(x2, x), M(x, y)
        lhs = V.compose(M.left_act[(x3, x2, y)],
                        V.tensor_mor(V.identity(a), M.left_act[(x2, x, y)]),
                        V.associator(a, b, m))
        rhs = V.compose(M.left_act[(x3, x, y)], V.tensor_mor(C.comp[(x3, x2, x)], V.identity(m)))
        if lhs != rhs:
            rep.fail("left associativity", (x3, x2, x, y))
    for x, y, y2, y3 in product(X, Y, Y, Y):
        rep.count()
        m, b, c = M(x, y), D(y, y2), D(y2, y3)
        lhs = V.compose(M.right_act[(x, y2, y3)], V.tensor_mor(M.right_act[(x, y, y2)], V.identity(c)))
        rhs = V.compose(M.right_act[(x, y, y3)],
                        V.tensor_mor(V.identity(m), D.comp[(y, y2, y3)]),
                        V.associator(m, b, c))
        if lhs != rhs:
            rep.fail("right associativity", (x, y, y2, y3))
    for x2, x, y, y2 in product(X, X, Y, Y):
        rep.count()
        a, m, d = C(x2, x), M(x, y), D(y, y2)
        lhs = V.compose(M.right_act[(x2, y, y2)], V.tensor_mor(M.left_act[(x2, x, y)], V.identity(d)))
        rhs = V.compose(M.left_act[(x2, x, y2)],
                        V.tensor_mor(V.identity(a), M.right_act[(x, y, y2)]),
                        V.associator(a, m, d))
        if lhs != rhs:
            rep.fail("middle compatibility", (x2, x, y, y2))
    return rep


def hom_bimodule(C):
    """``C`` as a bimodule over itself, acting by composition."""
    X = C.objects
    return VBimodule(C, C, dict(C.hom),
                     {(x2, x, y): C.comp[(x2, x, y)] for x2, x, y in product(X, repeat=3)},
                     {(x, y, y2): C.comp[(x, y, y2)] for x, y, y2 in product(X, repeat=3)},
                     name=f"hom({C.name})")


def restrict(F, G, M):
    """Pull ``M`` back along ``F: C' -> C`` and ``G: D' -> D``."""
    V = M.backend
    if F.target != M.left or G.target != M.right:
        raise BackendMismatch("restriction functors must land in the bimodule's categories")
    C2, D2 = F.source, G.source
    X2, Y2 = C2.objects, D2.objects
    mod = {(x, y): M(F(x), G(y)) for x, y in product(X2, Y2)}
    left = {(a2, a, y): V.compose(M.left_act[(F(a2), F(a), G(y))],
                                  V.tensor_mor(F.hom_map[(a2, a)], V.identity(mod[(a, y)])))
            for a2, a, y in product(X2, X2, Y2)}
    right = {(x, b, b2): V.compose(M.right_act[(F(x), G(b), G(b2))],
                                   V.tensor_mor(V.identity(mod[(x, b)]), G.hom_map[(b, b2)]))
             for x, b, b2 in product(X2, Y2, Y2)}
    return VBimodule(C2, D2, mod, left, right, name=f"{M.name}|({F.name},{G.name})")


def external_product_category(C, D, backend=None):
    """``C`` and ``D`` paired over the product backend; objects are pairs."""
    P = backend or ProductBackend(C.backend, D.backend)
    objs = tuple(product(C.objects, D.objects))
    hom = {(a, b): PairObj(C(a[0], b[0]), D(a[1], b[1])) for a, b in product(objs, repeat=2)}
    unit = {a: PairMor(C.unit[a[0]], D.unit[a[1]]) for a in objs}
    comp = {(a, b, c): PairMor(C.comp[(a[0], b[0], c[0])], D.comp[(a[1], b[1], c[1])])
            for a, b, c in product(objs, repeat=3)}
    return VCategory(P, objs, hom, unit, comp, name=f"{C.name}#{D.name}")


def external_product(M, N, left=None, right=None):
    """``M (x) N`` over the product backend, built componentwise."""
    P = ProductBackend(M.backend, N.backend)
    left = left or external_product_category(M.left, N.left, P)
    right = right or external_product_category(M.right, N.right, P)
    mod = {(a, b): PairObj(M(a[0], b[0]), N(a[1], b[1])) for a, b in product(left.objects, right.objects)}
    la = {(a2, a, b): PairMor(M.left_act[(a2[0], a[0], b[0])], N.left_act[(a2[1], a[1], b[1])])
          for a2, a, b in product(left.objects, left.objects, right.objects)}
    ra = {(a, b, b2): PairMor(M.right_act[(a[0], b[0], b2[0])], N.right_act[(a[1], b[1], b2[1])])
          for a, b, b2 in product(left.objects, right.objects, right.objects)}
    return VBimodule(left, right, mod, la, ra, name=f"{M.name}#{N.name}")


def change_of_base_bimodule(F, M, left=None, right=None):
    if isinstance(F, str):
        F = shipped_functor(F)
    W = F.target
    left = left or change_of_base(F, M.left)
    right = right or change_of_base(F, M.right)
    C, D = M.left, M.right
    mod = {k: F.on_obj(v) for k, v in M.mod.items()}
    la = {(x2, x, y): W.compose(F.on_mor(a), F.mu(C(x2, x), M(x, y)))
          for (x2, x, y), a in M.left_act.items()}
    ra = {(x, y, y2): W.compose(F.on_mor(a), F.mu(M(x, y), D(y, y2)))
          for (x, y, y2), a in M.right_act.items()}
    return VBimodule(left, right, mod, la, ra, name=f"{F.name}({M.name})")


def bimodule_coproduct(M, N):
    """Pointwise coproduct ``M + N`` of two bimodules over the same categories."""
    V = M.backend
    C, D = M.left, M.right
    X, Y = C.objects, D.objects
    cps = {(x, y): V.coproduct([M(x, y), N(x, y)]) for x, y in product(X, Y)}
    mod = {k: cp.obj for k, cp in cps.items()}
    la, ra = {}, {}
    for x2, x, y in product(X, X, Y):
        iso, cp2 = V.distribute_left(C(x2, x), cps[(x, y)])
        inj = cps[(x2, y)].injections
        h = V.copair(cp2, [V.compose(inj[0], M.left_act[(x2, x, y)]),
                           V.compose(inj[1], N.left_act[(x2, x, y)])], mod[(x2, y)])
        la[(x2, x, y)] = V.compose(h, iso)
    for x, y, y2 in product(X, Y, Y):
        iso, cp2 = V.distribute_right(cps[(x, y)], D(y, y2))
        inj = cps[(x, y2)].injections
        h = V.copair(cp2, [V.compose(inj[0], M.right_act[(x, y, y2)]),
                           V.compose(inj[1], N.right_act[(x, y, y2)])], mod[(x, y2)])
        ra[(x, y, y2)] = V.compose(h, iso)
    return VBimodule(C, D, mod, la, ra, name=f"{M.name}+{N.name}"), cps


def validate_square(S):
    M, M2, F, G = S.top, S.bottom, S.left, S.right
    V = M.backend
    rep = Report("square")
    if F.source != M.left or G.source != M.right or F.target != M2.left or G.target != M2.right:
        rep.fail("frame mismatch", ())
        return rep
    X, Y = M.left.objects, M.right.objects
    for x, y in product(X, Y):
        c = S.cell.get((x, y))
        if c is None or V.source(c) != M(x, y) or V.target(c) != M2(F(x), G(y)):
            rep.fail("bad cell type", (x, y))
    if rep.failures:
        return rep
    for x2, x, y in product(X, X, Y):
        rep.count()
        lhs = V.compose(S.cell[(x2, y)], M.left_act[(x2, x, y)])
        rhs = V.compose(M2.left_act[(F(x2), F(x), G(y))],
                        V.tensor_mor(F.hom_map[(x2, x)], S.cell[(x, y)]))
        if lhs != rhs:
            rep.fail("left equivariance", (x2, x, y))
    for x, y, y2 in product(X, Y, Y):
        rep.count()
        lhs = V.compose(S.cell[(x, y2)], M.right_act[(x, y, y2)])
        rhs = V.compose(M2.right_act[(F(x), G(y), G(y2))],
                        V.tensor_mor(S.cell[(x, y)], G.hom_map[(y, y2)]))
        if lhs != rhs:
            rep.fail("right equivariance", (x, y, y2))
    return rep


def identity_square(M):
    V = M.backend
    return BimoduleSquare(M, M, identity_functor(M.left), identity_functor(M.right),
                          {k: V.identity(v) for k, v in M.mod.items()})


def compose_squares_vertically(S, S2):
    """``S`` followed by ``S2`` (``S.bottom`` must be ``S2.top``)."""
    V = S.top.backend
    F, G = S.left, S.right
    cell = {(x, y): V.compose(S2.cell[(F(x), G(y))], c) for (x, y), c in S.cell.items()}
    return BimoduleSquare(S.top, S2.bottom, compose_functors(S.left, S2.left),
                          compose_functors(S.right, S2.right), cell)
