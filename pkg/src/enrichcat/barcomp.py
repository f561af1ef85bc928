"""Composition of bimodules through the two-sided bar construction.

For ``M`` from ``A`` to ``B`` and ``N`` from ``B`` to ``E``, level ``k`` of the
bar construction at ``(x, z)`` is the coproduct over ``(y0..yk)`` in ``Y^(k+1)``
(lexicographic order) of

    M(x, y0) * B(y0, y1) * ... * B(y(k-1), yk) * N(yk, z)

bracketed to the left.  Face ``d_i`` merges the factor pair ``k - i`` by an
action or a composition, so on level 1 ``d_0`` acts on ``N`` and ``d_1`` on
``M``; degeneracy ``s_i`` inserts a unit after factor ``k - i``.  The
composite is the coequalizer of ``d_0, d_1`` from level 1 to level 0.
"""

from dataclasses import dataclass, field
from itertools import product

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .bimodule import BimoduleSquare, VBimodule, validate_square
from .errors import BudgetExceeded, CategoryMismatch, check_budget
from .report import Report
from .vbackend import (UNIT, BoolBackend, BoolMor, FinSetBackend, FinSetMor, T, lnest, lnest_mor,
                       lnest_obj, reassoc)

DEFAULT_MAX_LEVEL = 4


def _check_composable(M, N):
    if not (M.right is N.left or M.right == N.left):
        raise CategoryMismatch(
            f"cannot compose {M.name}: middle categories {M.right.name} and {N.left.name} differ")


@dataclass
class BarLevel:
    k: int
    M: VBimodule
    N: VBimodule
    tuples: list
    coproducts: dict           # (x, z) -> Coproduct over self.tuples

    def factors(self, x, z, ys):
        B = self.M.right
        out = [self.M(x, ys[0])]
        out += [B(a, b) for a, b in zip(ys, ys[1:])]
        out.append(self.N(ys[-1], z))
        return out

    def index(self, ys):
        return self._index[tuple(ys)]

    def __post_init__(self):
        self._index = {t: i for i, t in enumerate(self.tuples)}


def bar_level(M, N, k, bound=DEFAULT_MAX_LEVEL):
    _check_composable(M, N)
    if k < 0:
        raise ValueError("bar levels start at 0")
    if bound is not None and k > bound:
        raise BudgetExceeded(f"bar level {k} exceeds the level bound {bound}")
    V = M.backend
    Y = M.right.objects
    tuples = list(product(Y, repeat=k + 1))
    check_budget(len(tuples) * max(1, len(M.left.objects) * len(N.right.objects)), None,
                 "bar level summands")
    lvl = BarLevel(k, M, N, tuples, {})
    for x, z in product(M.left.objects, N.right.objects):
        lvl.coproducts[(x, z)] = V.coproduct([lnest_obj(V, lvl.factors(x, z, t)) for t in tuples])
    return lvl


def _merge_map(M, N, x, z, ys, j):
    """The action/composition merging factor pair ``j`` of the summand ``ys``."""
    B = M.right
    k = len(ys) - 1
    if j == 0 and k >= 1:
        return M.right_act[(x, ys[0], ys[1])]
    if j == k and k >= 1:
        return N.left_act[(ys[k - 1], ys[k], z)]
    return B.comp[(ys[j - 1], ys[j], ys[j + 1])]


def _summand_face(lvl, x, z, ys, j):
    V = lvl.M.backend
    fs = lvl.factors(x, z, ys)
    grouped = fs[:j] + [T(fs[j], fs[j + 1])] + fs[j + 2:]
    act = _merge_map(lvl.M, lvl.N, x, z, ys, j)
    mors = [V.identity(f) for f in fs[:j]] + [act] + [V.identity(f) for f in fs[j + 2:]]
    return V.compose(lnest_mor(V, mors), reassoc(V, lnest(fs), lnest(grouped)))


def _summand_degeneracy(lvl, x, z, ys, j):
    V = lvl.M.backend
    B = lvl.M.right
    fs = lvl.factors(x, z, ys)
    padded = fs[:j + 1] + [UNIT] + fs[j + 1:]
    mors = ([V.identity(f) for f in fs[:j + 1]] + [B.unit[ys[j]]]
            + [V.identity(f) for f in fs[j + 1:]])
    return V.compose(lnest_mor(V, mors), reassoc(V, lnest(fs), lnest(padded)))


def face(M, N, k, i, levels=None):
    """``d_i``: level ``k`` -> level ``k-1``, as a dict over ``(x, z)``."""
    if not (k >= 1 and 0 <= i <= k):
        raise IndexError(f"face d_{i} undefined on level {k}")
    V = M.backend
    src = levels[k] if levels else bar_level(M, N, k, None)
    tgt = levels[k - 1] if levels else bar_level(M, N, k - 1, None)
    j = k - i
    out = {}
    for (x, z), cp in src.coproducts.items():
        tcp = tgt.coproducts[(x, z)]
        maps = []
        for ys in src.tuples:
            new = ys[:j] + ys[j + 1:]
            maps.append(V.compose(tcp.injections[tgt.index(new)], _summand_face(src, x, z, ys, j)))
        out[(x, z)] = V.copair(cp, maps, tcp.obj)
    return out


def degeneracy(M, N, k, i, levels=None):
    """``s_i``: level ``k`` -> level ``k+1``."""
    if not 0 <= i <= k:
        raise IndexError(f"degeneracy s_{i} undefined on level {k}")
    V = M.backend
    src = levels[k] if levels else bar_level(M, N, k, None)
    tgt = levels[k + 1] if levels else bar_level(M, N, k + 1, None)
    j = k - i
    out = {}
    for (x, z), cp in src.coproducts.items():
        tcp = tgt.coproducts[(x, z)]
        maps = []
        for ys in src.tuples:
            new = ys[:j + 1] + (ys[j],) + ys[j + 1:]
            maps.append(V.compose(tcp.injections[tgt.index(new)],
                                  _summand_degeneracy(src, x, z, ys, j)))
        out[(x, z)] = V.copair(cp, maps, tcp.obj)
    return out


def bar_levels(M, N, k_max):
    return [bar_level(M, N, k, None) for k in range(k_max + 1)]


# -- the composite

@dataclass(eq=False)
class CompositeWitness:
    """A composite bimodule with the coequalizer data that produced it."""

    bimodule: VBimodule
    M: VBimodule
    N: VBimodule
    level0: BarLevel
    level1: BarLevel
    d0: dict
    d1: dict
    coeq: dict          # (x, z) -> Coequalizer

    def projection(self, x, z):
        return self.coeq[(x, z)].projection

    def inject(self, x, y, z):
        """``M(x, y) * N(y, z) -> (M . N)(x, z)``."""
        V = self.M.backend
        cp = self.level0.coproducts[(x, z)]
        return V.compose(self.coeq[(x, z)].projection, cp.injections[self.level0.index((y,))])

    def factor(self, x, z, h):
        """Factor ``h`` out of level 0 at ``(x, z)`` through the composite."""
        return self.M.backend.factor_through_coequalizer(h, self.coeq[(x, z)])


def compose_bimodules(M, N, name=None):
    _check_composable(M, N)
    V = M.backend
    A, E = M.left, N.right
    L0, L1 = bar_level(M, N, 0, None), bar_level(M, N, 1, None)
    levels = [L0, L1]
    d0, d1 = face(M, N, 1, 0, levels), face(M, N, 1, 1, levels)
    coeq = {xz: V.coequalizer(d0[xz], d1[xz]) for xz in L0.coproducts}
    mod = {xz: c.obj for xz, c in coeq.items()}
    X, Z = A.objects, E.objects

    left = {}
    for x2, x, z in product(X, X, Z):
        a = A(x2, x)
        iso, cp2 = V.distribute_left(a, L0.coproducts[(x, z)])
        tcp = L0.coproducts[(x2, z)]
        maps = []
        for (y,) in L0.tuples:
            m, n = M(x, y), N(y, z)
            step = V.compose(V.tensor_mor(M.left_act[(x2, x, y)], V.identity(n)),
                             reassoc(V, T(a, T(m, n)), T(T(a, m), n)))
            maps.append(V.compose(coeq[(x2, z)].projection, tcp.injections[L0.index((y,))], step))
        h = V.compose(V.copair(cp2, maps, mod[(x2, z)]), iso)
        c = coeq[(x, z)]
        left[(x2, x, z)] = V.factor_split(h, V.tensor_mor(V.identity(a), c.projection),
                                          V.tensor_mor(V.identity(a), c.section))
    right = {}
    for x, z, z2 in product(X, Z, Z):
        e = E(z, z2)
        iso, cp2 = V.distribute_right(L0.coproducts[(x, z)], e)
        tcp = L0.coproducts[(x, z2)]
        maps = []
        for (y,) in L0.tuples:
            m, n = M(x, y), N(y, z)
            step = V.compose(V.tensor_mor(V.identity(m), N.right_act[(y, z, z2)]),
                             V.associator(m, n, e))
            maps.append(V.compose(coeq[(x, z2)].projection, tcp.injections[L0.index((y,))], step))
        h = V.compose(V.copair(cp2, maps, mod[(x, z2)]), iso)
        c = coeq[(x, z)]
        right[(x, z, z2)] = V.factor_split(h, V.tensor_mor(c.projection, V.identity(e)),
                                           V.tensor_mor(c.section, V.identity(e)))
    Q = VBimodule(A, E, mod, left, right, name=name or f"({M.name}.{N.name})")
    return CompositeWitness(Q, M, N, L0, L1, d0, d1, coeq)


def composite(M, N):
    return compose_bimodules(M, N).bimodule


# -- maps of bimodules and their horizontal composition

def identity_map(M):
    V = M.backend
    return {k: V.identity(v) for k, v in M.mod.items()}


def compose_maps(g, f, V):
    """Pointwise ``g o f`` of two bimodule maps given as dicts."""
    return {k: V.compose(g[k], f[k]) for k in f}


def is_invertible_map(f, V):
    return all(V.is_invertible(m) for m in f.values())


def map_is_equivariant(f, M, M2):
    """Check a map ``M -> M2`` (same categories) against both actions."""
    from .enriched import identity_functor
    return validate_square(BimoduleSquare(M, M2, identity_functor(M.left), identity_functor(M.right), f))


def compose_squares_horizontally(S, S2, W=None, W2=None):
    """Horizontal composite of squares ``S`` (over F, G) and ``S2`` (over G, H).

    ``W`` and ``W2`` are the composite witnesses of the tops and bottoms.
    """
    V = S.top.backend
    if S.right.object_map != S2.left.object_map:
        raise CategoryMismatch("squares do not share the middle functor")
    W = W or compose_bimodules(S.top, S2.top)
    W2 = W2 or compose_bimodules(S.bottom, S2.bottom)
    F, G, H = S.left, S.right, S2.right
    cell = {}
    for (x, z), c in W.coeq.items():
        cp = W.level0.coproducts[(x, z)]
        maps = []
        for (y,) in W.level0.tuples:
            maps.append(V.compose(W2.inject(F(x), G(y), H(z)),
                                  V.tensor_mor(S.cell[(x, y)], S2.cell[(y, z)])))
        h = V.copair(cp, maps, W2.bimodule(F(x), H(z)))
        cell[(x, z)] = V.factor_through_coequalizer(h, c)
    return BimoduleSquare(W.bimodule, W2.bimodule, F, H, cell)


def tensor_maps(f, g, W, W2):
    """``f . g`` for bimodule maps with identity frames (``W``: sources, ``W2``: targets)."""
    from .enriched import identity_functor
    S = BimoduleSquare(W.M, W2.M, identity_functor(W.M.left), identity_functor(W.M.right), f)
    S2 = BimoduleSquare(W.N, W2.N, identity_functor(W.N.left), identity_functor(W.N.right), g)
    return compose_squares_horizontally(S, S2, W, W2).cell


# -- unitors and associator

def unitor(B, N, W=None):
    """Canonical map ``hom(B) . N -> N`` induced by the left action."""
    from .bimodule import hom_bimodule
    V = N.backend
    W = W or compose_bimodules(hom_bimodule(B), N)
    out = {}
    for (y, z), c in W.coeq.items():
        maps = [N.left_act[(y, y2, z)] for (y2,) in W.level0.tuples]
        h = V.copair(W.level0.coproducts[(y, z)], maps, N(y, z))
        out[(y, z)] = V.factor_through_coequalizer(h, c)
    return out


def unitor_right(M, B, W=None):
    """Canonical map ``M . hom(B) -> M`` induced by the right action."""
    from .bimodule import hom_bimodule
    V = M.backend
    W = W or compose_bimodules(M, hom_bimodule(B))
    out = {}
    for (x, y), c in W.coeq.items():
        maps = [M.right_act[(x, y2, y)] for (y2,) in W.level0.tuples]
        h = V.copair(W.level0.coproducts[(x, y)], maps, M(x, y))
        out[(x, y)] = V.factor_through_coequalizer(h, c)
    return out


@dataclass
class AssociatorData:
    lhs: CompositeWitness      # (M.N).P
    rhs: CompositeWitness      # M.(N.P)
    mn: CompositeWitness
    np_: CompositeWitness
    map: dict = field(default_factory=dict)


def associator(M, N, P, mn=None, np_=None, lhs=None, rhs=None):
    """Canonical comparison ``(M.N).P -> M.(N.P)`` built from universal properties."""
    V = M.backend
    mn = mn or compose_bimodules(M, N)
    np_ = np_ or compose_bimodules(N, P)
    lhs = lhs or compose_bimodules(mn.bimodule, P)
    rhs = rhs or compose_bimodules(M, np_.bimodule)
    R = rhs.bimodule
    out = {}
    for (x, w), c in lhs.coeq.items():
        gs = []
        for (z,) in lhs.level0.tuples:
            p = P(z, w)
            cp = mn.level0.coproducts[(x, z)]
            iso, cp2 = V.distribute_right(cp, p)
            maps = []
            for (y,) in mn.level0.tuples:
                m, n = M(x, y), N(y, z)
                step = V.compose(V.tensor_mor(V.identity(m), np_.inject(y, z, w)),
                                 V.associator(m, n, p))
                maps.append(V.compose(rhs.inject(x, y, w), step))
            h = V.compose(V.copair(cp2, maps, R(x, w)), iso)
            cz = mn.coeq[(x, z)]
            gs.append(V.factor_split(h, V.tensor_mor(cz.projection, V.identity(p)),
                                     V.tensor_mor(cz.section, V.identity(p))))
        h = V.copair(lhs.level0.coproducts[(x, w)], gs, R(x, w))
        out[(x, w)] = V.factor_through_coequalizer(h, c)
    return AssociatorData(lhs, rhs, mn, np_, out)


def pentagon_check(M, N, P, Q):
    """Compare the two associator paths ``((MN)P)Q -> M(N(PQ))``."""
    V = M.backend
    rep = Report("pentagon")
    mn, np_, pq = compose_bimodules(M, N), compose_bimodules(N, P), compose_bimodules(P, Q)
    mn_p = compose_bimodules(mn.bimodule, P)
    m_np = compose_bimodules(M, np_.bimodule)
    np_q = compose_bimodules(np_.bimodule, Q)
    n_pq = compose_bimodules(N, pq.bimodule)
    L = compose_bimodules(mn_p.bimodule, Q)           # ((MN)P)Q
    mn_pq = compose_bimodules(mn.bimodule, pq.bimodule)
    R = compose_bimodules(M, n_pq.bimodule)            # M(N(PQ))
    mnp_q = compose_bimodules(m_np.bimodule, Q)        # (M(NP))Q
    m_npq = compose_bimodules(M, np_q.bimodule)        # M((NP)Q)

    a1 = associator(mn.bimodule, P, Q, mn=mn_p, np_=pq, lhs=L, rhs=mn_pq).map
    a2 = associator(M, N, pq.bimodule, mn=mn, np_=n_pq, lhs=mn_pq, rhs=R).map
    path_a = compose_maps(a2, a1, V)

    b1 = associator(M, N, P, mn=mn, np_=np_, lhs=mn_p, rhs=m_np).map
    b1q = tensor_maps(b1, identity_map(Q), L, mnp_q)
    b2 = associator(M, np_.bimodule, Q, mn=m_np, np_=np_q, lhs=mnp_q, rhs=m_npq).map
    b3 = associator(N, P, Q, mn=np_, np_=pq, lhs=np_q, rhs=n_pq).map
    mb3 = tensor_maps(identity_map(M), b3, m_npq, R)
    path_b = compose_maps(mb3, compose_maps(b2, b1q, V), V)
    for k in sorted(path_a, key=str):
        rep.count()
        if path_a[k] != path_b[k]:
            rep.fail("pentagon paths differ", k)
        if not V.is_invertible(path_a[k]):
            rep.fail("comparison not invertible", k)
    return rep


# -- oracles

def _finset_class_oracle(M, N, x, z):
    """Union-find-free quotient of the level-0 elements, via graph components."""
    B = M.right
    Y = B.objects
    elems = [(y, m, n) for y in Y for m in M(x, y).labels for n in N(y, z).labels]
    index = {e: i for i, e in enumerate(elems)}
    rows, cols = [], []
    for y, y2 in product(Y, repeat=2):
        ra, la = M.right_act[(x, y, y2)], N.left_act[(y, y2, z)]
        for b in B(y, y2).labels:
            for m in M(x, y).labels:
                for n in N(y2, z).labels:
                    rows.append(index[(y2, ra((m, b)), n)])
                    cols.append(index[(y, m, la((b, n)))])
    n_el = len(elems)
    if n_el == 0:
        return elems, []
    g = coo_matrix((np.ones(len(rows)), (rows, cols)), shape=(n_el, n_el))
    _, comp = connected_components(g, directed=False)
    return elems, list(comp)


def coend_oracle(M, N):
    """Independent computation of ``M . N`` for FinSet and Bool backends.

    FinSet: classes of triples ``(y, m, n)`` under ``(m.b, n) ~ (m, b.n)``,
    found as connected components; each class is labelled by its least
    triple.  Bool: the boolean matrix product.
    """
    _check_composable(M, N)
    V = M.backend
    A, E = M.left, N.right
    X, Z, Y = A.objects, E.objects, M.right.objects
    if isinstance(V, BoolBackend):
        mm = np.array([[M(x, y) for y in Y] for x in X], dtype=int).reshape(len(X), len(Y))
        nn = np.array([[N(y, z) for z in Z] for y in Y], dtype=int).reshape(len(Y), len(Z))
        prod_ = (mm @ nn) > 0
        mod = {(x, z): bool(prod_[i, j]) for i, x in enumerate(X) for j, z in enumerate(Z)}
        la = {(x2, x, z): BoolMor(A(x2, x) and mod[(x, z)], mod[(x2, z)])
              for x2, x, z in product(X, X, Z)}
        ra = {(x, z, z2): BoolMor(mod[(x, z)] and E(z, z2), mod[(x, z2)])
              for x, z, z2 in product(X, Z, Z)}
        return VBimodule(A, E, mod, la, ra, name=f"oracle({M.name}.{N.name})")
    if not isinstance(V, FinSetBackend):
        raise NotImplementedError(f"no coend oracle for the {V.kind} backend")
    classes = {}
    for x, z in product(X, Z):
        elems, comp = _finset_class_oracle(M, N, x, z)
        rep_of = {}
        for e, c in zip(elems, comp):
            rep_of.setdefault(c, e)
        reps = [rep_of[c] for c in sorted(rep_of, key=lambda c: elems.index(rep_of[c]))]
        which = {e: rep_of[c] for e, c in zip(elems, comp)}
        classes[(x, z)] = (V.obj(reps), which)
    mod = {k: v[0] for k, v in classes.items()}
    la = {}
    for x2, x, z in product(X, X, Z):
        _, which = classes[(x, z)]
        _, which2 = classes[(x2, z)]
        act = {}
        for a in A(x2, x).labels:
            for (y, m, n) in mod[(x, z)].labels:
                act[(a, (y, m, n))] = which2[(y, M.left_act[(x2, x, y)]((a, m)), n)]
        la[(x2, x, z)] = V.mor(V.tensor(A(x2, x), mod[(x, z)]), mod[(x2, z)], act)
    ra = {}
    for x, z, z2 in product(X, Z, Z):
        _, which2 = classes[(x, z2)]
        act = {}
        for (y, m, n) in mod[(x, z)].labels:
            for e in E(z, z2).labels:
                act[((y, m, n), e)] = which2[(y, m, N.right_act[(y, z, z2)]((n, e)))]
        ra[(x, z, z2)] = V.mor(V.tensor(mod[(x, z)], E(z, z2)), mod[(x, z2)], act)
    return VBimodule(A, E, mod, la, ra, name=f"oracle({M.name}.{N.name})")


def oracle_comparison(W, O):
    """Canonical isomorphism ``oracle -> composite`` and its checks.

    Returns ``(report, iso)`` where ``iso`` maps each oracle class to the
    image of any of its representatives in the coequalizer.
    """
    V = W.M.backend
    Q = W.bimodule
    rep = Report("oracle agreement")
    iso = {}
    if isinstance(V, BoolBackend):
        for k in Q.mod:
            rep.count()
            if Q.mod[k] != O.mod[k]:
                rep.fail("entries differ", k, f"composite={Q.mod[k]} oracle={O.mod[k]}")
            else:
                iso[k] = V.identity(Q.mod[k])
        return rep, iso
    for (x, z), qobj in Q.mod.items():
        rep.count()
        proj = W.coeq[(x, z)].projection
        cp = W.level0.coproducts[(x, z)]
        oobj = O.mod[(x, z)]
        # every level-0 element, grouped by oracle class
        elems, comp = _finset_class_oracle(W.M, W.N, x, z)
        image = {}
        ok = True
        for (y, m, n), c in zip(elems, comp):
            pos = cp.injections[W.level0.index((y,))].table[
                V.tensor(W.M(x, y), W.N(y, z)).index[(m, n)]]
            q = proj.table[pos]
            if image.setdefault(c, q) != q:
                ok = False
        if not ok:
            rep.fail("oracle class splits in composite", (x, z))
            continue
        cls = {}
        for e, c in zip(elems, comp):
            cls.setdefault(c, e)
        table = []
        for lab in oobj.labels:
            c = comp[elems.index(lab)]
            table.append(image[c])
        f = FinSetMor(oobj, qobj, tuple(table))
        if not V.is_invertible(f):
            rep.fail("comparison not bijective", (x, z),
                     f"oracle size {len(oobj)}, composite size {len(qobj)}")
            continue
        iso[(x, z)] = f
    if rep.ok:
        # the comparison must also intertwine the actions
        A, E = Q.left, Q.right
        for x2, x, z in product(A.objects, A.objects, E.objects):
            lhs = V.compose(iso[(x2, z)], O.left_act[(x2, x, z)])
            rhs = V.compose(Q.left_act[(x2, x, z)], V.tensor_mor(V.identity(A(x2, x)), iso[(x, z)]))
            if lhs != rhs:
                rep.fail("comparison breaks left action", (x2, x, z))
        for x, z, z2 in product(A.objects, E.objects, E.objects):
            lhs = V.compose(iso[(x, z2)], O.right_act[(x, z, z2)])
            rhs = V.compose(Q.right_act[(x, z, z2)], V.tensor_mor(iso[(x, z)], V.identity(E(z, z2))))
            if lhs != rhs:
                rep.fail("comparison breaks right action", (x, z, z2))
    return rep, iso


def oracle_agreement(M, N, W=None):
    W = W or compose_bimodules(M, N)
    rep, _ = oracle_comparison(W, coend_oracle(M, N))
    return rep


# -- truncated realization

def realization_truncation_check(M, N, k_max=2):
    """Compare the colimit of bar levels ``0..k_max`` with the reflexive coequalizer.

    The colimit of the truncated diagram (all faces and degeneracies) is
    computed as the coequalizer of ``sum_arrows L_src`` into ``sum_levels L_j``;
    the comparison from the reflexive coequalizer must be invertible.
    """
    if k_max < 2:
        raise ValueError("k_max must be at least 2")
    V = M.backend
    rep = Report(f"realization truncation k<={k_max}")
    levels = bar_levels(M, N, k_max)
    faces = {(k, i): face(M, N, k, i, levels) for k in range(1, k_max + 1) for i in range(k + 1)}
    degens = {(k, i): degeneracy(M, N, k, i, levels) for k in range(k_max) for i in range(k + 1)}
    W = compose_bimodules(M, N)
    arrows = [(k, k - 1, f) for (k, _), f in faces.items()] + [(k, k + 1, f) for (k, _), f in degens.items()]
    for xz in levels[0].coproducts:
        rep.count()
        objs = V.coproduct([lv.coproducts[xz].obj for lv in levels])
        src = V.coproduct([levels[s].coproducts[xz].obj for s, _, _ in arrows])
        first = V.copair(src, [objs.injections[s] for s, _, _ in arrows], objs.obj)
        second = V.copair(src, [V.compose(objs.injections[t], f[xz]) for _, t, f in arrows], objs.obj)
        colim = V.coequalizer(first, second)
        to_colim = V.compose(colim.projection, objs.injections[0])
        u = W.factor(xz[0], xz[1], to_colim)
        if not V.is_invertible(u):
            rep.fail("truncated colimit differs from reflexive coequalizer", xz)
    return rep
