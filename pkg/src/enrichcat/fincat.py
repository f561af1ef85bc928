"""Explicit finite categories, functors between them, and comma-category probes."""

from itertools import product

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import check_budget


class FiniteCategory:
    """A category given by explicit object and arrow lists.

    Arrows are triples ``(source, target, label)``; an arrow is identified by
    the whole triple.  ``compose_label(a, b)`` returns the label of the
    diagrammatic composite "``a`` then ``b``" and ``identity_label(x)`` the
    label of the identity on ``x``.
    """

    def __init__(self, objects, arrows, compose_label, identity_label, name=""):
        self.name = name
        self.objects = list(objects)
        self.arrows = [tuple(a) for a in arrows]
        self._compose_label = compose_label
        self._identity_label = identity_label
        self._index = {a: i for i, a in enumerate(self.arrows)}
        self._obj_index = {x: i for i, x in enumerate(self.objects)}
        self._hom, self._out, self._memo = {}, {}, {}
        for a in self.arrows:
            self._hom.setdefault((a[0], a[1]), []).append(a)
            self._out.setdefault(a[0], []).append(a)

    def __repr__(self):
        return f"FiniteCategory({self.name!r}, {len(self.objects)} objects, {len(self.arrows)} arrows)"

    def hom(self, x, y):
        return self._hom.get((x, y), [])

    def identity(self, x):
        return (x, x, self._identity_label(x))

    def compose(self, a, b):
        """``a`` then ``b``."""
        hit = self._memo.get((a, b))
        if hit is not None:
            return hit
        if a[1] != b[0]:
            raise ValueError(f"arrows {a} and {b} are not composable")
        c = (a[0], b[1], self._compose_label(a, b))
        if c not in self._index:
            raise ValueError(f"composite {c} is not an arrow of {self.name}")
        self._memo[(a, b)] = c
        return c

    def has_object(self, x):
        return x in self._obj_index

    def __contains__(self, arrow):
        return tuple(arrow) in self._index

    def out_arrows(self, x):
        return self._out.get(x, [])

    def validate(self):
        """Identity, closure and associativity checks; returns failure strings."""
        errors = []
        for x in self.objects:
            if self.identity(x) not in self._index:
                errors.append(f"missing identity on {x}")
        for a in self.arrows:
            for side, c in (("left", self.compose(self.identity(a[0]), a)),
                            ("right", self.compose(a, self.identity(a[1])))):
                if c != a:
                    errors.append(f"{side} unit law fails for {a}")
        for a in self.arrows:
            for b in self.out_arrows(a[1]):
                ab = self.compose(a, b)
                for c in self.out_arrows(b[1]):
                    if self.compose(ab, c) != self.compose(a, self.compose(b, c)):
                        errors.append(f"associativity fails for {a}, {b}, {c}")
        return errors

    def isomorphisms(self):
        """Pairs ``(f, g)`` of mutually inverse arrows."""
        out = []
        for f in self.arrows:
            for g in self.hom(f[1], f[0]):
                if (self.compose(f, g) == self.identity(f[0])
                        and self.compose(g, f) == self.identity(f[1])):
                    out.append((f, g))
        return out

    def opposite(self):
        arrows = [(a[1], a[0], a[2]) for a in self.arrows]
        return FiniteCategory(
            self.objects, arrows,
            lambda a, b: self._compose_label((b[1], b[0], b[2]), (a[1], a[0], a[2])),
            self._identity_label, name=f"{self.name}^op")


def discrete_category(objects, name="discrete"):
    return FiniteCategory(objects, [(x, x, "id") for x in objects],
                          lambda a, b: "id", lambda x: "id", name=name)


def product_category(c, d):
    objects = list(product(c.objects, d.objects))
    arrows = [((a[0], b[0]), (a[1], b[1]), (a, b)) for a in c.arrows for b in d.arrows]

    def comp(p, q):
        return (c.compose(p[2][0], q[2][0]), d.compose(p[2][1], q[2][1]))

    return FiniteCategory(objects, arrows, comp,
                          lambda x: (c.identity(x[0]), d.identity(x[1])),
                          name=f"{c.name}x{d.name}")


class FiniteFunctor:
    """A functor between finite categories given by object and arrow maps."""

    def __init__(self, source, target, on_objects, on_arrows, name=""):
        self.source = source
        self.target = target
        self.on_objects = on_objects
        self.on_arrows = on_arrows
        self.name = name

    def validate(self):
        errors = []
        for x in self.source.objects:
            if self.on_arrows(self.source.identity(x)) != self.target.identity(self.on_objects(x)):
                errors.append(f"identity on {x} not preserved")
        for a in self.source.arrows:
            fa = self.on_arrows(a)
            if fa not in self.target or fa[0] != self.on_objects(a[0]) or fa[1] != self.on_objects(a[1]):
                errors.append(f"arrow {a} sent to a non-arrow {fa}")
                continue
            for b in self.source.out_arrows(a[1]):
                lhs = self.on_arrows(self.source.compose(a, b))
                if lhs != self.target.compose(fa, self.on_arrows(b)):
                    errors.append(f"composition of {a}, {b} not preserved")
        return errors


def identity_functor(c):
    return FiniteFunctor(c, c, lambda x: x, lambda a: a, name=f"id_{c.name}")


def diagonal_functor(c):
    cc = product_category(c, c)
    return FiniteFunctor(c, cc, lambda x: (x, x), lambda a: ((a[0], a[0]), (a[1], a[1]), (a, a)),
                         name=f"diag_{c.name}")


def component_count(n_nodes, edges):
    """Number of connected components of an undirected graph on ``range(n_nodes)``."""
    if n_nodes == 0:
        return 0
    if not edges:
        return n_nodes
    rows, cols = zip(*edges)
    g = coo_matrix((np.ones(len(edges)), (rows, cols)), shape=(n_nodes, n_nodes))
    n, _ = connected_components(g, directed=False)
    return int(n)


def comma_under(d, functor, bound=None, images=None):
    """The comma category ``(d | F)`` as (objects, arrows).

    Objects are pairs ``(c, f)`` with ``f: d -> F(c)``; arrows are
    ``g: c -> c'`` in the source with ``f then F(g) == f'``.  ``images`` may
    carry precomputed ``(object map, arrow map)`` dicts.
    """
    src, tgt = functor.source, functor.target
    check_budget(len(src.objects) * len(tgt.objects), bound, "comma category")
    fobj, farr = images or functor_images(functor)
    objects = []
    for c in src.objects:
        for f in tgt.hom(d, fobj[c]):
            objects.append((c, f))
    index = {o: i for i, o in enumerate(objects)}
    edges = []
    for (c, f) in objects:
        for g in src.out_arrows(c):
            target = (g[1], tgt.compose(f, farr[g]))
            if target in index:
                edges.append((index[(c, f)], index[target]))
    return objects, edges


def functor_images(functor):
    src = functor.source
    return ({c: functor.on_objects(c) for c in src.objects},
            {a: functor.on_arrows(a) for a in src.arrows})


def terminal_objects(cat):
    """Objects admitting exactly one arrow from every object."""
    return [t for t in cat.objects if all(len(cat.hom(x, t)) == 1 for x in cat.objects)]
