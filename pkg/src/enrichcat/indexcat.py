"""Finite truncations of the indexing categories over lists of finite sets.

An object of the indexing category for ``X0..Xn`` is a simplex map
``phi: [m] -> [n]`` with labels ``p_i`` in ``X_phi(i)``.  Arrows go against
simplex maps: ``delta: [k] -> [m]`` gives ``(phi, p) -> (phi o delta, p o delta)``.
Restricting bases to cellular maps gives the cellular variant.
"""

from dataclasses import dataclass
from itertools import combinations_with_replacement, product

from .fincat import (FiniteCategory, FiniteFunctor, comma_under, component_count, functor_images,
                     terminal_objects)
from .errors import check_budget
from .report import Report
from .simplex import (SimplexMap, compose, enumerate_maps, is_active, is_cellular, maps_up_to,
                      slice_category)
from .vbackend import lnest, lnest_mor, lnest_obj, reassoc

DEFAULT_MAX_RANK = 3


@dataclass(frozen=True)
class IndexedObject:
    base: SimplexMap
    labels: tuple

    def __post_init__(self):
        if len(self.labels) != len(self.base):
            raise ValueError("one label per vertex of the base map")
        object.__setattr__(self, "_hash", hash((self.base, self.labels)))

    def __hash__(self):
        return self._hash

    @property
    def rank(self):
        return self.base.source_rank

    def pull(self, delta):
        """The object ``(base o delta, labels o delta)``."""
        return IndexedObject(compose(delta, self.base), tuple(self.labels[d] for d in delta.values))

    def __repr__(self):
        return f"{self.base.values}:{self.labels}"


def active_maps(m, k):
    """Active maps ``[m] -> [k]``."""
    if m == 0:
        return [SimplexMap((0,), 0)] if k == 0 else []
    return [SimplexMap((0,) + mid + (k,), k)
            for mid in _monotone(m - 1, k)]


def _monotone(length, top):
    return list(combinations_with_replacement(range(top + 1), length))


def indexed_objects(Xs, cellular_only=False, max_rank=DEFAULT_MAX_RANK, bound=None):
    n = len(Xs) - 1
    out = []
    for phi in maps_up_to(max_rank, n, cellular_only):
        fibres = [Xs[v] for v in phi.values]
        size = 1
        for f in fibres:
            size *= len(f)
        check_budget(len(out) + size, bound, "indexed objects")
        out.extend(IndexedObject(phi, labels) for labels in product(*fibres))
    return out


def build_indexed_category(Xs, cellular_only=False, max_rank=DEFAULT_MAX_RANK, bound=None):
    """The indexing category for the finite sets ``Xs``, truncated at ``max_rank``.

    With one set this is the category of lists in ``X``.
    """
    objects = indexed_objects(Xs, cellular_only, max_rank, bound)
    present = set(objects)
    arrows = []
    for ob in objects:
        for k in range(max_rank + 1):
            for delta in enumerate_maps(k, ob.rank):
                tgt = ob.pull(delta)
                if tgt in present:
                    arrows.append((ob, tgt, delta))
        check_budget(len(arrows), bound, "indexed arrows")
    return FiniteCategory(objects, arrows, lambda a, b: compose(b[2], a[2]),
                          lambda ob: SimplexMap.identity(ob.rank),
                          name=f"Dop{[len(X) for X in Xs]}" + ("_cell" if cellular_only else ""))


def base_projection(cat, n, cellular_only=False, max_rank=DEFAULT_MAX_RANK):
    base = slice_category(n, cellular_only, max_rank)
    return FiniteFunctor(cat, base, lambda ob: ob.base,
                         lambda a: (a[0].base, a[1].base, a[2]), name="base")


def unique_lift_check(cat, projection):
    """Every base arrow out of ``p(e)`` has exactly one lift out of ``e``."""
    rep = Report("unique lifts")
    for err in projection.validate():
        rep.fail("projection is not a functor", (), err)
    base = projection.target
    for e in cat.objects:
        lifts = {}
        for a in cat.out_arrows(e):
            lifts.setdefault(projection.on_arrows(a), []).append(a)
        for b in base.out_arrows(projection.on_objects(e)):
            rep.count()
            got = len(lifts.get(b, []))
            # a base arrow lifts iff the pulled-back labels stay in the category
            want = 1 if cat.has_object(e.pull(b[2])) else 0
            if got != want:
                rep.fail("lift count", (e, b[2].values), f"{got} lifts")
    return rep


# -- algebras from categories

def chain_composite(C, xs):
    """``C(x0, x1) * ... * C(x(m-1), xm) -> C(x0, xm)``; the unit when ``m = 0``."""
    V = C.backend
    if len(xs) == 1:
        return C.unit[xs[0]]
    f = V.identity(C(xs[0], xs[1]))
    for i in range(2, len(xs)):
        f = V.compose(C.comp[(xs[0], xs[i - 1], xs[i])], V.tensor_mor(f, V.identity(C(xs[i - 1], xs[i]))))
    return f


@dataclass
class CategoryAlgebra:
    """Values and structure maps of the list algebra of a V-category."""

    category: object

    def factors(self, xs):
        return [self.category(a, b) for a, b in zip(xs, xs[1:])]

    def value(self, xs):
        return lnest_obj(self.category.backend, self.factors(xs))

    def blocks(self, xs, delta):
        """Edge components of the arrow ``xs -> xs o delta``."""
        v = delta.values
        return [chain_composite(self.category, xs[v[j - 1]:v[j] + 1]) for j in range(1, len(v))]


def algebra_from_category(C, max_rank=DEFAULT_MAX_RANK):
    """Build the list algebra of ``C`` and check its structure maps.

    Inert arrows must act by restriction to tensor factors; on active arrows
    the edge components must compose, which encodes the unit and
    associativity laws of ``C``.
    """
    V = C.backend
    A = CategoryAlgebra(C)
    rep = Report(f"algebra of {C.name}")
    X = C.objects
    for m in range(max_rank + 1):
        for xs in product(X, repeat=m + 1):
            facs = A.factors(xs)
            for k in range(1, m + 1):
                for start in range(m - k + 1):
                    rep.count()
                    delta = SimplexMap.inert(start, k, m)
                    blocks = A.blocks(xs, delta)
                    if blocks != [V.identity(f) for f in facs[start:start + k]]:
                        rep.fail("inert arrow is not a restriction", (xs, delta.values))
            for l in range(2, max_rank + 1):
                for d1 in active_maps(l, m):
                    if d1.values == tuple(range(m + 1)):
                        continue
                    rep.count()
                    ys = tuple(xs[v] for v in d1.values)
                    pieces = [facs[d1.values[i - 1]:d1.values[i]] for i in range(1, l + 1)]
                    grouped = lnest([lnest(p) for p in pieces])
                    lhs = V.compose(chain_composite(C, ys), lnest_mor(V, A.blocks(xs, d1)),
                                    reassoc(V, lnest(facs), grouped))
                    if lhs != chain_composite(C, xs):
                        rep.fail("active arrows do not compose", (xs, d1.values))
    return A, rep


# -- active slices

def active_slice(cat, target, cellular_sources=False):
    """Active arrows into ``target`` and the active arrows between them.

    Objects are ``(source, delta)`` for arrows ``source -> target`` over an
    active ``delta``; built by filtering the arrows of ``cat``.
    """
    objects = [(a[0], a[2]) for a in cat.arrows
               if a[1] == target and is_active(a[2]) and (not cellular_sources or is_cellular(a[0].base))]
    by_source = {}
    for o in objects:
        by_source.setdefault(o[0], []).append(o)
    arrows = []
    for (g, d) in objects:
        for a in cat.out_arrows(g):
            if not is_active(a[2]):
                continue
            for (g2, d2) in by_source.get(a[1], ()):
                if compose(d2, a[2]) == d:
                    arrows.append(((g, d), (g2, d2), a[2]))
    return _slice_category(objects, arrows, "active slice")


def _slice_category(objects, arrows, name):
    return FiniteCategory(objects, arrows, lambda a, b: compose(b[2], a[2]),
                          lambda o: SimplexMap.identity(o[0].rank), name=name)


def active_slice_direct(Xs, target, max_rank=DEFAULT_MAX_RANK, cellular_sources=True, bound=None):
    """The same slice as :func:`active_slice`, generated without the ambient category."""
    n = len(Xs) - 1
    xi, p = target.base, target.labels
    objects = []
    for eta in maps_up_to(max_rank, n, cellular_sources):
        k = eta.source_rank
        for phi in active_maps(xi.source_rank, k):
            if compose(phi, eta) != xi:
                continue
            fixed = {}
            if any(fixed.setdefault(j, p[i]) != p[i] for i, j in enumerate(phi.values)):
                continue
            choices = [[fixed[j]] if j in fixed else list(Xs[eta(j)]) for j in range(k + 1)]
            objects.extend((IndexedObject(eta, q), phi) for q in product(*choices))
        check_budget(len(objects), bound, "slice objects")
    by_source = {}
    for o in objects:
        by_source.setdefault(o[0], []).append(o)
    arrows = []
    for (g, d) in objects:
        for k2 in range(max_rank + 1):
            for eps in active_maps(k2, g.rank):
                g2 = g.pull(eps)
                for (h, d2) in by_source.get(g2, ()):
                    if compose(d2, eps) == d:
                        arrows.append(((g, d), (h, d2), eps))
        check_budget(len(arrows), bound, "slice arrows")
    return _slice_category(objects, arrows, "active slice")


def fiber_formula_check(Xs, target, phi, eta, slice_=None):
    """Compare a fibre of the active slice over ``(phi, eta)`` with the product formula."""
    xi = target.base
    if not is_cellular(eta):
        raise ValueError("eta must be cellular")
    if not is_active(phi):
        raise ValueError("phi must be active")
    if compose(phi, eta) != xi:
        raise ValueError("xi must equal eta o phi")
    rep = Report(f"fibre at ({phi.values}, {eta.values})")
    if slice_ is None:
        rank = max(eta.source_rank, xi.source_rank)
        cat = build_indexed_category(Xs, False, rank)
        slice_ = active_slice(cat, target, cellular_sources=True)
    actual = {o[0].labels for o in slice_.objects if o[0].base == eta and o[1] == phi}
    formula = {q for q in product(*(Xs[v] for v in eta.values))
               if tuple(q[j] for j in phi.values) == target.labels}
    rep.count()
    if actual != formula:
        rep.fail("fibre differs from the product formula", (phi.values, eta.values),
                 f"enumerated {len(actual)}, formula {len(formula)}")
    rep.data["size"] = len(actual)
    return rep


def fiber_formula_suite(Xs, max_rank=2):
    """Run :func:`fiber_formula_check` for every target and every ``(phi, eta)``."""
    n = len(Xs) - 1
    rep = Report(f"fibre formula, rank <= {max_rank}")
    cat = build_indexed_category(Xs, False, max_rank)
    cells = maps_up_to(max_rank, n, cellular_only=True)
    for target in cat.objects:
        slice_ = active_slice(cat, target, cellular_sources=True)
        xi = target.base
        for eta in cells:
            for phi in active_maps(xi.source_rank, eta.source_rank):
                if compose(phi, eta) == xi:
                    rep.merge(fiber_formula_check(Xs, target, phi, eta, slice_))
    return rep


# -- probes

def cofinality_probe(F, bound=None):
    """Every comma category ``(d | F)`` must be nonempty and connected.

    This is only a necessary condition for cofinality.
    """
    rep = Report(f"cofinality of {F.name}".strip(), necessary_only=True)
    images = functor_images(F)
    for d in F.target.objects:
        rep.count()
        objects, edges = comma_under(d, F, bound, images)
        if not objects:
            rep.fail("empty comma category", (d,))
            continue
        comps = component_count(len(objects), edges)
        if comps != 1:
            rep.fail("disconnected comma category", (d,), f"{comps} components")
    return rep


def final_object_probe(cat):
    """Decide whether ``cat`` is empty or has a final object (unique up to iso)."""
    rep = Report(f"final object of {cat.name}".strip())
    rep.count()
    if not cat.objects:
        rep.data["verdict"] = "empty"
        return rep
    finals = terminal_objects(cat)
    if not finals:
        rep.fail("no final object", (), f"{len(cat.objects)} objects")
        rep.data["verdict"] = "none"
        return rep
    for a, b in product(finals, repeat=2):
        if not cat.hom(a, b) or not cat.hom(b, a):
            rep.fail("final objects not isomorphic", (a, b))
    rep.data["verdict"] = "final"
    rep.data["final"] = repr(finals[0])
    return rep


def sifted_probe(cat, objects=None, bound=None):
    """The diagonal ``C -> C x C`` must pass the comma-category test.

    The comma category under ``(a, b)`` has objects ``(c, a -> c, b -> c)``;
    it is computed directly rather than through the product category.
    ``objects`` restricts the pairs ``(a, b)`` tested, so a larger truncation
    can supply the cocones for a smaller one.
    """
    rep = Report(f"siftedness of {cat.name}".strip(), necessary_only=True)
    objects = cat.objects if objects is None else list(objects)
    check_budget(len(objects) ** 2 * len(cat.objects), bound, "diagonal comma categories")
    for a, b in product(objects, repeat=2):
        rep.count()
        nodes = [(f, g) for c in cat.objects for f in cat.hom(a, c) for g in cat.hom(b, c)]
        if not nodes:
            rep.fail("empty comma category", ((a, b),))
            continue
        index = {v: i for i, v in enumerate(nodes)}
        edges = []
        for (f, g) in nodes:
            for h in cat.out_arrows(f[1]):
                edges.append((index[(f, g)], index[(cat.compose(f, h), cat.compose(g, h))]))
        comps = component_count(len(nodes), edges)
        if comps != 1:
            rep.fail("disconnected comma category", ((a, b),), f"{comps} components")
    return rep


def bar_cofinal_map(X, Y, Z, x, z, max_rank=DEFAULT_MAX_RANK):
    """The functor from lists in ``Y`` to the active slice over ``((0, 2), (x, z))``.

    ``(y0..yk)`` goes to ``(x, y0..yk, z)`` over ``(0, 1, .., 1, 2)``; a list map
    ``delta`` goes to the active map fixing both ends and shifting ``delta`` by one.
    """
    source = build_indexed_category([Y], False, max_rank)
    target_obj = IndexedObject(SimplexMap((0, 2), 2), (x, z))
    target = active_slice_direct([X, Y, Z], target_obj, max_rank + 2, cellular_sources=True)

    def on_obj(ob):
        k = ob.rank
        eta = SimplexMap((0,) + (1,) * (k + 1) + (2,), 2)
        return (IndexedObject(eta, (x,) + ob.labels + (z,)), SimplexMap((0, k + 2), k + 2))

    def on_arrow(a):
        d = a[2]
        shifted = SimplexMap((0,) + tuple(v + 1 for v in d.values) + (d.target_rank + 2,),
                             d.target_rank + 2)
        return (on_obj(a[0]), on_obj(a[1]), shifted)

    return FiniteFunctor(source, target, on_obj, on_arrow, name="lists -> active slice")


def list_slice(X, n, xi, max_rank=DEFAULT_MAX_RANK):
    """Active slice over ``xi`` (pairs ``(x, i)``) of lists in ``X`` over maps into ``[n]``.

    Objects are ``(G, delta)`` with ``G = (phi, q)``, ``phi: [k] -> [n]`` and
    ``delta: [m] -> [k]`` active with ``(q, phi) o delta = xi``.
    """
    xi = tuple(xi)
    m = len(xi) - 1
    objects = []
    for k in range(max_rank + 1):
        for delta in active_maps(m, k):
            fixed = {}
            if any(fixed.setdefault(j, xi[i]) != xi[i] for i, j in enumerate(delta.values)):
                continue
            choices = [[fixed[j]] if j in fixed else list(product(X, range(n + 1))) for j in range(k + 1)]
            for pts in product(*choices):
                steps = [pt[1] for pt in pts]
                if all(a <= b for a, b in zip(steps, steps[1:])):
                    g = IndexedObject(SimplexMap(tuple(steps), n), tuple(pt[0] for pt in pts))
                    objects.append((g, delta))
    by_source = {}
    for o in objects:
        by_source.setdefault(o[0], []).append(o)
    arrows = []
    for (g, d) in objects:
        for k2 in range(max_rank + 1):
            for eps in active_maps(k2, g.rank):
                for (h, d2) in by_source.get(g.pull(eps), ()):
                    if compose(d2, eps) == d:
                        arrows.append(((g, d), (h, d2), eps))
    return _slice_category(objects, arrows, f"list slice over {xi}")


def final_object_suite(X, n, max_rank=DEFAULT_MAX_RANK):
    """Check every list slice over ``xi`` of rank ``<= max_rank``: empty iff ``xi``
    is not monotone in its second coordinates, final object otherwise."""
    rep = Report(f"list slices, n={n}, |X|={len(X)}, rank <= {max_rank}")
    points = list(product(X, range(n + 1)))
    for m in range(max_rank + 1):
        for xi in product(points, repeat=m + 1):
            cat = list_slice(X, n, xi, max_rank)
            sub = final_object_probe(cat)
            monotone = all(a[1] <= b[1] for a, b in zip(xi, xi[1:]))
            expected = "final" if monotone else "empty"
            rep.merge(sub, prefix=f"{xi}: ")
            if sub.data.get("verdict") != expected:
                rep.fail("unexpected slice shape", (xi,), f"{sub.data.get('verdict')} instead of {expected}")
    return rep


def lambda_slice(n, xi, max_rank=DEFAULT_MAX_RANK):
    """Active slice of cellular maps into ``[n]`` over ``xi`` (singleton labels)."""
    Xs = [("*",)] * (n + 1)
    target = IndexedObject(xi, ("*",) * len(xi))
    return active_slice_direct(Xs, target, max_rank, cellular_sources=True)


__all__ = [
    "DEFAULT_MAX_RANK", "CategoryAlgebra", "IndexedObject", "active_maps", "active_slice",
    "active_slice_direct", "algebra_from_category", "bar_cofinal_map", "base_projection",
    "build_indexed_category", "chain_composite", "cofinality_probe", "fiber_formula_check",
    "fiber_formula_suite", "final_object_probe", "final_object_suite", "indexed_objects",
    "lambda_slice", "list_slice", "sifted_probe", "unique_lift_check",
]
