"""The simplicial space of functors ``[n] -> Fun(C (x) [n], D)``, truncated.

Level ``n`` holds every strict functor ``C (x) [n] -> D``; a simplex map
``theta: [m] -> [n]`` acts by precomposition with ``C (x) theta``.  Level 1
carries natural transformations: ``d1`` restricts to vertex 0 (the source
functor) and ``d0`` to vertex 1 (the target).
"""

from dataclasses import dataclass
from itertools import product

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .enriched import (compose_functors, interval_functor, is_complete_truncated, tensor_with_e,
                       tensor_with_interval, VFunctor)
from . import errors
from .errors import BackendMismatch, BudgetExceeded, CategoryMismatch, check_budget
from .report import Report
from .simplex import SimplexMap, degeneracy, face, rho


def _slot_order(objects):
    """Hom slots ordered so each new object closes all triples among earlier ones."""
    out = []
    for k, b in enumerate(objects):
        for a in objects[:k]:
            out += [(a, b), (b, a)]
        out.append((b, b))
    return out


def enumerate_functors(C, D, bound=None, fixed_objects=None, fixed_homs=None):
    """All strict V-functors ``C -> D`` in a deterministic order.

    ``fixed_objects`` and ``fixed_homs`` pin parts of the data.  The search
    is a backtracking over hom slots; ``bound`` caps the number of search
    nodes (default from ``ENRICHCAT_BUDGET``).
    """
    V = C.backend
    if D.backend != V:
        raise BackendMismatch("functor enumeration needs a common backend")
    bound = errors.DEFAULT_BUDGET if bound is None else bound
    X = list(C.objects)
    fixed_objects = fixed_objects or {}
    fixed_homs = fixed_homs or {}
    slots = _slot_order(X)
    pos = {s: i for i, s in enumerate(slots)}
    checks = [[] for _ in slots]
    for a, b, c in product(X, repeat=3):
        checks[max(pos[(a, b)], pos[(b, c)], pos[(a, c)])].append((a, b, c))
    free = [x for x in X if x not in fixed_objects]
    check_budget(len(D.objects) ** len(free), bound, "object assignments")
    out = []
    nodes = 0
    for choice in product(D.objects, repeat=len(free)):
        F = dict(fixed_objects)
        F.update(zip(free, choice))
        cands = []
        for a, b in slots:
            if (a, b) in fixed_homs:
                cands.append([fixed_homs[(a, b)]])
                continue
            cs = V.hom_enumerate(C(a, b), D(F[a], F[b]), bound)
            if a == b:
                cs = [f for f in cs if V.compose(f, C.unit[a]) == D.unit[F[a]]]
            cands.append(cs)
        if any(not c for c in cands):
            continue
        h = {}

        def extend(i):
            nonlocal nodes
            if i == len(slots):
                out.append(VFunctor(C, D, dict(F), dict(h)))
                return
            for f in cands[i]:
                nodes += 1
                if nodes > bound:
                    raise BudgetExceeded(f"functor search exceeded {bound} nodes")
                h[slots[i]] = f
                if all(V.compose(h[(a, c)], C.comp[(a, b, c)])
                       == V.compose(D.comp[(F[a], F[b], F[c])], V.tensor_mor(h[(a, b)], h[(b, c)]))
                       for a, b, c in checks[i]):
                    extend(i + 1)
            h.pop(slots[i], None)

        extend(0)
    return out


@dataclass
class FunLevel:
    n: int
    source: object
    functors: list

    def __post_init__(self):
        self.index = {F.key(): i for i, F in enumerate(self.functors)}

    def __len__(self):
        return len(self.functors)

    def locate(self, F):
        return self.index.get(F.key())


class FunSpace:
    """Levels of ``Fun(C (x) shape[n], D)`` with their simplicial operators."""

    def __init__(self, C, D, shape=tensor_with_interval, bound=None):
        if C.backend != D.backend:
            raise BackendMismatch("source and target must share a backend")
        self.C, self.D, self.shape, self.bound = C, D, shape, bound
        self._levels = {}
        self._ops = {}

    def level(self, n):
        if n not in self._levels:
            src = self.shape(self.C, n)
            self._levels[n] = FunLevel(n, src, enumerate_functors(src, self.D, self.bound))
        return self._levels[n]

    def restrict(self, theta, F):
        """``F o (C (x) theta)`` for ``F`` on level ``theta.target_rank``."""
        return compose_functors(interval_functor(self.C, theta, self.shape), F)

    def operator(self, theta):
        """Index map from level ``theta.target_rank`` to level ``theta.source_rank``."""
        key = theta.values, theta.target_rank
        if key not in self._ops:
            G = interval_functor(self.C, theta, self.shape)
            low = self.level(theta.source_rank)
            self._ops[key] = [low.locate(compose_functors(G, F))
                              for F in self.level(theta.target_rank).functors]
        return self._ops[key]

    def as_level0(self, F):
        """A functor ``C -> D`` viewed on ``C (x) [0]``."""
        src = self.shape(self.C, 0)
        return VFunctor(src, self.D, {(x, 0): F(x) for x in self.C.objects},
                        {((x, 0), (y, 0)): F.hom_map[(x, y)] for x, y in product(self.C.objects, repeat=2)})

    def from_level0(self, F0):
        X = self.C.objects
        return VFunctor(self.C, self.D, {x: F0((x, 0)) for x in X},
                        {(x, y): F0.hom_map[((x, 0), (y, 0))] for x, y in product(X, repeat=2)})


def fun_level(C, D, n, bound=None):
    return FunSpace(C, D, bound=bound).level(n)


def fun_simplicial_structure(C, D, max_n=2, bound=None, space=None):
    """Face and degeneracy index maps up to ``max_n`` and a simplicial-identity report."""
    S = space or FunSpace(C, D, bound=bound)
    rep = Report(f"simplicial identities, n <= {max_n}")
    d = {(n, i): S.operator(face(i, n)) for n in range(1, max_n + 1) for i in range(n + 1)}
    s = {(n, i): S.operator(degeneracy(i, n)) for n in range(max_n) for i in range(n + 1)}
    for key, table in list(d.items()) + list(s.items()):
        if any(v is None for v in table):
            rep.fail("operator leaves the enumerated level", key)
    if rep.failures:
        return S, d, s, rep

    def chain(*maps):
        """Apply index maps left to right (first map first)."""
        size = len(maps[0])
        out = list(range(size))
        for m in maps:
            out = [m[v] for v in out]
        return out

    # face maps act on level n, degeneracies on level n; identities are in
    # the usual operator order (d_i d_j means d_j first)
    for n in range(2, max_n + 1):
        for j in range(n + 1):
            for i in range(j):
                rep.count()
                if chain(d[(n, j)], d[(n - 1, i)]) != chain(d[(n, i)], d[(n - 1, j - 1)]):
                    rep.fail("d_i d_j != d_(j-1) d_i", (n, i, j))
    for n in range(max_n):
        ident = list(range(len(S.level(n))))
        for j in range(n + 1):
            rep.count()
            if chain(s[(n, j)], d[(n + 1, j)]) != ident or chain(s[(n, j)], d[(n + 1, j + 1)]) != ident:
                rep.fail("d_j s_j or d_(j+1) s_j is not the identity", (n, j))
            for i in range(n + 2):
                if i < j:
                    rep.count()
                    if chain(s[(n, j)], d[(n + 1, i)]) != chain(d[(n, i)], s[(n - 1, j - 1)]):
                        rep.fail("d_i s_j != s_(j-1) d_i", (n, i, j))
                elif i > j + 1:
                    rep.count()
                    if chain(s[(n, j)], d[(n + 1, i)]) != chain(d[(n, i - 1)], s[(n - 1, j)]):
                        rep.fail("d_i s_j != s_j d_(i-1)", (n, i, j))
    for n in range(max_n - 1):
        for j in range(n + 1):
            for i in range(j + 1):
                rep.count()
                if chain(s[(n, j)], s[(n + 1, i)]) != chain(s[(n, i)], s[(n + 1, j + 1)]):
                    rep.fail("s_i s_j != s_(j+1) s_i", (n, i, j))
    return S, d, s, rep


def segal_check_fun(C, D, n, bound=None, space=None):
    """Level ``n`` must biject onto composable ``n``-tuples of level-1 functors."""
    if n < 2:
        raise ValueError("the Segal map is interesting from n = 2")
    S = space or FunSpace(C, D, bound=bound)
    rep = Report(f"functor Segal map, n = {n}")
    edges = [S.operator(rho(i, n)) for i in range(1, n + 1)]
    if any(v is None for e in edges for v in e):
        rep.fail("edge restriction leaves level 1", (n,))
        return rep
    src, tgt = S.operator(face(1, 1)), S.operator(face(0, 1))
    seen = {}
    for idx in range(len(S.level(n))):
        tup = tuple(e[idx] for e in edges)
        rep.count()
        if tup in seen:
            rep.fail("two fillers for one chain", (seen[tup], idx))
        seen[tup] = idx
    L1 = range(len(S.level(1)))
    chains = [(a,) for a in L1]
    for _ in range(n - 1):
        chains = [c + (b,) for c in chains for b in L1 if tgt[c[-1]] == src[b]]
    for c in chains:
        rep.count()
        if c not in seen:
            rep.fail("composable chain without a filler", c)
    rep.data["chains"] = len(chains)
    rep.data["level"] = len(S.level(n))
    return rep


# -- natural transformations

@dataclass(eq=False)
class NatTrans:
    source: VFunctor
    target: VFunctor
    components: dict           # x -> global element of D(Fx, Gx)

    def key(self):
        X = self.source.source.objects
        return (self.source.key(), self.target.key(), tuple(self.components[x] for x in X))

    def __eq__(self, other):
        return isinstance(other, NatTrans) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())


def _check_parallel(F, G):
    if F.source != G.source or F.target != G.target:
        raise CategoryMismatch("transformations need parallel functors")


def _components_of(H, C):
    V = C.backend
    return {x: V.compose(H.hom_map[((x, 0), (x, 1))], C.unit[x]) for x in C.objects}


def transformation_functors(F, G, space=None, bound=None):
    """Level-1 functors restricting to ``F`` at vertex 0 and ``G`` at vertex 1."""
    C, D = F.source, F.target
    S = space or FunSpace(C, D, bound=bound)
    src = S.shape(C, 1)
    fo = {(x, 0): F(x) for x in C.objects}
    fo.update({(x, 1): G(x) for x in C.objects})
    fh = {((x, 0), (y, 0)): F.hom_map[(x, y)] for x, y in product(C.objects, repeat=2)}
    fh.update({((x, 1), (y, 1)): G.hom_map[(x, y)] for x, y in product(C.objects, repeat=2)})
    return enumerate_functors(src, D, S.bound, fixed_objects=fo, fixed_homs=fh)


def natural_transformations(F, G, space=None, bound=None):
    """Transformations ``F => G`` read off level 1 of the functor space."""
    _check_parallel(F, G)
    return [NatTrans(F, G, _components_of(H, F.source))
            for H in transformation_functors(F, G, space, bound)]


def natural_transformations_by_components(F, G, bound=None):
    """Families ``eta_x: I -> D(Fx, Gx)`` passing every naturality square."""
    _check_parallel(F, G)
    C, D = F.source, F.target
    V = C.backend
    X = C.objects
    options = [V.global_elements(D(F(x), G(x)), bound) for x in X]
    size = 1
    for o in options:
        size *= len(o)
    check_budget(size, bound, "component families")
    out = []
    for fam in product(*options):
        eta = dict(zip(X, fam))
        if all(_natural(V, C, D, F, G, eta, x, y) for x, y in product(X, repeat=2)):
            out.append(NatTrans(F, G, eta))
    return out


def _natural(V, C, D, F, G, eta, x, y):
    h = C(x, y)
    lhs = V.compose(D.comp[(F(x), F(y), G(y))], V.tensor_mor(F.hom_map[(x, y)], eta[y]),
                    V.inverse(V.right_unitor(h)))
    rhs = V.compose(D.comp[(F(x), G(x), G(y))], V.tensor_mor(eta[x], G.hom_map[(x, y)]),
                    V.inverse(V.left_unitor(h)))
    return lhs == rhs


def transformation_routes_check(F, G, space=None, bound=None):
    rep = Report("natural transformations: level 1 vs component families")
    a = natural_transformations(F, G, space, bound)
    b = natural_transformations_by_components(F, G, bound)
    rep.count()
    if len(set(a)) != len(a):
        rep.fail("two level-1 functors give the same components", ())
    if set(a) != set(b):
        rep.fail("routes disagree", (), f"level 1: {len(a)}, components: {len(b)}")
    rep.data["count"] = len(b)
    return rep


def identity_transformation(F):
    C, D = F.source, F.target
    return NatTrans(F, F, {x: D.unit[F(x)] for x in C.objects})


def compose_transformations(eta, theta):
    """Componentwise ``theta_x o eta_x``."""
    if eta.target.key() != theta.source.key():
        raise CategoryMismatch("transformations do not compose: endpoints differ")
    D = eta.source.target
    V = D.backend
    diag = V.inverse(V.left_unitor(V.unit()))
    F, G, H = eta.source, eta.target, theta.target
    comps = {x: V.compose(D.comp[(F(x), G(x), H(x))], V.tensor_mor(eta.components[x], theta.components[x]), diag)
             for x in F.source.objects}
    return NatTrans(F, H, comps)


def compose_transformations_segal(eta, theta, space=None):
    """The outer edge of the unique level-2 filler of ``(eta, theta)``."""
    if eta.target.key() != theta.source.key():
        raise CategoryMismatch("transformations do not compose: endpoints differ")
    C, D = eta.source.source, eta.source.target
    S = space or FunSpace(C, D)
    L1 = S.level(1)
    comps = [_components_of(H, C) for H in L1.functors]
    src, tgt = S.operator(face(1, 1)), S.operator(face(0, 1))
    L0 = S.level(0)

    def find(t):
        f0, g0 = L0.locate(S.as_level0(t.source)), L0.locate(S.as_level0(t.target))
        hits = [i for i, c in enumerate(comps) if src[i] == f0 and tgt[i] == g0 and c == t.components]
        if len(hits) != 1:
            raise CategoryMismatch(f"transformation found {len(hits)} times on level 1")
        return hits[0]

    a, b = find(eta), find(theta)
    r1, r2 = S.operator(rho(1, 2)), S.operator(rho(2, 2))
    fillers = [k for k in range(len(S.level(2))) if r1[k] == a and r2[k] == b]
    if len(fillers) != 1:
        raise CategoryMismatch(f"{len(fillers)} level-2 fillers")
    outer = S.operator(face(1, 2))[fillers[0]]
    return NatTrans(eta.source, theta.target, comps[outer])


# -- underlying groupoid and completeness

def _iso_edges(S0, SE):
    """Pairs of level-0 indices joined by a functor on ``C (x) E^1``."""
    i0, i1 = SE.operator(face(1, 1)), SE.operator(face(0, 1))
    L0 = S0.level(0)
    E0 = SE.level(0)
    # both spaces share level 0 up to the identification C (x) [0] = C (x) E^0
    remap = [L0.locate(S0.as_level0(SE.from_level0(F))) for F in E0.functors]
    return [(remap[a], remap[b], k) for k, (a, b) in enumerate(zip(i0, i1))]


def underlying_groupoid_fun(C, D, max_k=1, bound=None):
    """Functors ``C -> D`` modulo natural isomorphism (a pi_0 surrogate).

    Isomorphisms are functors on ``C (x) E^1``; levels up to ``max_k`` are
    enumerated and counted.
    """
    S0 = FunSpace(C, D, bound=bound)
    SE = FunSpace(C, D, shape=tensor_with_e, bound=bound)
    rep = Report("underlying groupoid", notes=["pi_0 surrogate: functors modulo natural isomorphism"])
    n0 = len(S0.level(0))
    edges = _iso_edges(S0, SE)
    rep.data["levels"] = {k: len(SE.level(k)) for k in range(max_k + 1)}
    if n0 == 0:
        rep.data["classes"] = []
        return rep, []
    rows = [a for a, b, _ in edges] or [0]
    cols = [b for a, b, _ in edges] or [0]
    g = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n0, n0))
    _, labels = connected_components(g, directed=False)
    classes = {}
    for i, lab in enumerate(labels):
        classes.setdefault(int(lab), []).append(S0.from_level0(S0.level(0).functors[i]))
    out = [classes[k] for k in sorted(classes, key=lambda k: min(np.flatnonzero(labels == k)))]
    rep.count(len(edges))
    rep.data["classes"] = len(out)
    return rep, out


def completeness_check_fun(C, D, bound=None):
    """Every natural isomorphism between enumerated functors must be an identity.

    When ``D`` is gaunt this is asserted, so a failure there is reported as a
    violated implication as well.
    """
    S0 = FunSpace(C, D, bound=bound)
    SE = FunSpace(C, D, shape=tensor_with_e, bound=bound)
    rep = Report("functor completeness (truncated)")
    collapse = SimplexMap((0, 0), 0)
    degenerate = set(SE.operator(collapse))
    for a, b, k in _iso_edges(S0, SE):
        rep.count()
        if a != b or k not in degenerate:
            F, G = S0.level(0).functors[a], S0.level(0).functors[b]
            rep.fail("non-identity natural isomorphism", (dict(F.object_map), dict(G.object_map)))
    gaunt = is_complete_truncated(D, bound)
    rep.data["target_gaunt"] = gaunt
    if gaunt and rep.failures:
        rep.fail("gaunt target but functor space not complete", (D.name,))
    return rep


__all__ = [
    "FunLevel", "FunSpace", "NatTrans", "completeness_check_fun", "compose_transformations",
    "compose_transformations_segal", "enumerate_functors", "fun_level", "fun_simplicial_structure",
    "identity_transformation", "natural_transformations", "natural_transformations_by_components",
    "segal_check_fun", "transformation_functors", "transformation_routes_check",
    "underlying_groupoid_fun",
]
