"""Chains of bimodules and the composite algebras they generate.

A composite algebra over a chain ``C0 -M1-> C1 -> ... -Mn-> Cn`` stores the
lattice ``M[i, j]`` for ``i <= j`` (``M[i, i]`` is the hom bimodule and
longer entries are left-associated composites) together with structure maps

    mu[i, j, k][x, y, z]:  M[i, j](x, y) * M[j, k](y, z) -> M[i, k](x, z)
"""

from dataclasses import dataclass, field
from itertools import combinations_with_replacement, product

from .barcomp import compose_bimodules
from .bimodule import (VBimodule, bimodule_coproduct, change_of_base_bimodule, external_product,
                       external_product_category, hom_bimodule, validate_bimodule)
from .enriched import change_of_base, shipped_functor
from .errors import CategoryMismatch, FactorizationError, RankMismatch
from .report import Report
from .vbackend import BoolBackend, BoolMor, PairMor, ProductBackend, T, reassoc


@dataclass(eq=False)
class Chain:
    cats: list
    mods: list

    def __post_init__(self):
        if len(self.cats) != len(self.mods) + 1:
            raise CategoryMismatch("a chain of n bimodules needs n+1 categories")
        for i, M in enumerate(self.mods):
            if M.left != self.cats[i] or M.right != self.cats[i + 1]:
                raise CategoryMismatch(f"bimodule {i + 1} does not connect categories {i} and {i + 1}")

    @property
    def n(self):
        return len(self.mods)

    @property
    def backend(self):
        return self.cats[0].backend


@dataclass(eq=False)
class CompositeAlgebra:
    chain: Chain
    lattice: dict                    # (i, j) -> VBimodule
    structure: dict                  # (i, j, k) -> {(x, y, z): morphism}
    witnesses: dict = field(default_factory=dict)

    @property
    def n(self):
        return self.chain.n

    @property
    def backend(self):
        return self.chain.backend

    def mu(self, i, j, k, x, y, z):
        return self.structure[(i, j, k)][(x, y, z)]


def _triples(n):
    return list(combinations_with_replacement(range(n + 1), 3))


def _composite_mu(V, lattice, structure, witnesses, i, j, k):
    """Structure map for ``i < j`` and ``k > j + 1``, factored through ``M[j, k]``."""
    W = witnesses[(j, k)]          # M[j, k] = M[j, k-1] . M[k]
    Mij, Mjk = lattice[(i, j)], lattice[(j, k)]
    mid, Mk = lattice[(j, k - 1)], W.N
    out = {}
    for x, y, z in product(Mij.left.objects, Mij.right.objects, Mjk.right.objects):
        a = Mij(x, y)
        iso, cp2 = V.distribute_left(a, W.level0.coproducts[(y, z)])
        maps = []
        for (w,) in W.level0.tuples:
            b, c = mid(y, w), Mk(w, z)
            inner = structure[(i, j, k - 1)][(x, y, w)]
            outer = structure[(i, k - 1, k)][(x, w, z)]
            maps.append(V.compose(outer, V.tensor_mor(inner, V.identity(c)),
                                  reassoc(V, T(a, T(b, c)), T(T(a, b), c))))
        h = V.compose(V.copair(cp2, maps, lattice[(i, k)](x, z)), iso)
        coeq = W.coeq[(y, z)]
        out[(x, y, z)] = V.factor_split(h, V.tensor_mor(V.identity(a), coeq.projection),
                                        V.tensor_mor(V.identity(a), coeq.section))
    return out


def build_composite_algebra(chain):
    V = chain.backend
    n = chain.n
    lattice, witnesses = {}, {}
    for i, C in enumerate(chain.cats):
        lattice[(i, i)] = hom_bimodule(C)
    for i in range(n):
        lattice[(i, i + 1)] = chain.mods[i]
    for length in range(2, n + 1):
        for i in range(n - length + 1):
            j = i + length
            W = compose_bimodules(lattice[(i, j - 1)], chain.mods[j - 1], name=f"M{i}{j}")
            witnesses[(i, j)] = W
            lattice[(i, j)] = W.bimodule
    structure = {}
    # ordered so every dependency is filled first
    for i, j, k in sorted(_triples(n), key=lambda t: (t[2] - t[0], t[2] - t[1], t)):
        Mij, Mjk, Mik = lattice[(i, j)], lattice[(j, k)], lattice[(i, k)]
        objs = product(Mij.left.objects, Mij.right.objects, Mjk.right.objects)
        if i == j:
            structure[(i, j, k)] = {(x, y, z): Mik.left_act[(x, y, z)] for x, y, z in objs}
        elif j == k:
            structure[(i, j, k)] = {(x, y, z): Mij.right_act[(x, y, z)] for x, y, z in objs}
        elif k == j + 1:
            W = witnesses[(i, k)]
            structure[(i, j, k)] = {(x, y, z): W.inject(x, y, z) for x, y, z in objs}
        else:
            structure[(i, j, k)] = _composite_mu(V, lattice, structure, witnesses, i, j, k)
    return CompositeAlgebra(chain, lattice, structure, witnesses)


def validate_composite_algebra(A):
    """Bimodule axioms, bilinearity and associativity of the structure maps."""
    V = A.backend
    rep = Report("composite algebra")
    n = A.n
    L = A.lattice
    for (i, j), M in sorted(L.items()):
        rep.merge(validate_bimodule(M), prefix=f"M{i}{j}: ")
    for i, j, k in _triples(n):
        Mij, Mjk = L[(i, j)], L[(j, k)]
        C = A.chain.cats[j]
        for x, y, y2, z in product(Mij.left.objects, C.objects, C.objects, Mjk.right.objects):
            rep.count()
            m, b, p = Mij(x, y), C(y, y2), Mjk(y2, z)
            lhs = V.compose(A.mu(i, j, k, x, y2, z), V.tensor_mor(Mij.right_act[(x, y, y2)], V.identity(p)))
            rhs = V.compose(A.mu(i, j, k, x, y, z), V.tensor_mor(V.identity(m), Mjk.left_act[(y, y2, z)]),
                            V.associator(m, b, p))
            if lhs != rhs:
                rep.fail("structure map not bilinear", (i, j, k, x, y, y2, z))
    for i, j, k, l in combinations_with_replacement(range(n + 1), 4):
        Mij, Mjk, Mkl = L[(i, j)], L[(j, k)], L[(k, l)]
        for x, y, z, w in product(Mij.left.objects, Mij.right.objects, Mjk.right.objects,
                                  Mkl.right.objects):
            rep.count()
            a, b, c = Mij(x, y), Mjk(y, z), Mkl(z, w)
            lhs = V.compose(A.mu(i, k, l, x, z, w), V.tensor_mor(A.mu(i, j, k, x, y, z), V.identity(c)))
            rhs = V.compose(A.mu(i, j, l, x, y, w), V.tensor_mor(V.identity(a), A.mu(j, k, l, y, z, w)),
                            V.associator(a, b, c))
            if lhs != rhs:
                rep.fail("structure maps not associative", (i, j, k, l, x, y, z, w))
    return rep


def segal_comparison(A, i, j, k, W=None):
    """The map ``M[i, j] .C_j M[j, k] -> M[i, k]`` induced by ``mu``, per ``(x, z)``."""
    V = A.backend
    W = W or compose_bimodules(A.lattice[(i, j)], A.lattice[(j, k)])
    out = {}
    for (x, z) in W.coeq:
        maps = [A.mu(i, j, k, x, y, z) for (y,) in W.level0.tuples]
        h = V.copair(W.level0.coproducts[(x, z)], maps, A.lattice[(i, k)](x, z))
        out[(x, z)] = W.factor(x, z, h)
    return out


def segal_check(A):
    """Check that every ``M[i, k]`` is recovered by composing ``M[i, j]`` with ``M[j, k]``."""
    V = A.backend
    rep = Report("segal")
    for i, j, k in _triples(A.n):
        if not i < j < k:
            continue
        rep.count()
        try:
            comp = segal_comparison(A, i, j, k)
        except FactorizationError as e:
            rep.fail("structure map does not descend", (i, k), f"via {j}: {e}")
            continue
        for (x, z), f in sorted(comp.items(), key=str):
            if not V.is_invertible(f):
                rep.fail("comparison not invertible", (i, k), f"via {j} at ({x}, {z})")
    return rep


def inject_fault(A):
    """Replace ``M[0, 2]`` of a 2-chain algebra by a strictly larger bimodule.

    FinSet: ``M[0, 2] + M[0, 2]`` with ``mu`` landing in the first copy.
    Bool: the all-true relation (needs ``M[0, 2]`` to be false somewhere).
    """
    if A.n != 2:
        raise ValueError("fault injection is defined for 2-chains")
    V = A.backend
    L = dict(A.lattice)
    S = {k: dict(v) for k, v in A.structure.items()}
    M02 = L[(0, 2)]
    if isinstance(V, BoolBackend):
        if all(M02.mod.values()):
            raise ValueError("M[0, 2] is already the top relation")
        top = {k: True for k in M02.mod}
        C, D = M02.left, M02.right
        big = VBimodule(C, D, top,
                        {k: BoolMor(C(k[0], k[1]), True) for k in M02.left_act},
                        {k: BoolMor(D(k[1], k[2]), True) for k in M02.right_act}, name="M02+")
        up = {k: BoolMor(v, True) for k, v in M02.mod.items()}
    else:
        big, cps = bimodule_coproduct(M02, M02)
        up = {k: cp.injections[0] for k, cp in cps.items()}
    L[(0, 2)] = big
    for key in S:
        if key[0] == 0 and key[2] == 2:
            if key[1] in (0, 2):
                act = big.left_act if key[1] == 0 else big.right_act
                S[key] = {t: act[t] for t in S[key]}
            else:
                S[key] = {t: V.compose(up[(t[0], t[2])], f) for t, f in S[key].items()}
    return CompositeAlgebra(A.chain, L, S)


def reindex(phi, A):
    """Pull ``A`` back along a simplex map ``phi: [m] -> [n]``."""
    if phi.target_rank != A.n:
        raise RankMismatch(f"map lands in [{phi.target_rank}], algebra has rank {A.n}")
    m = phi.source_rank
    cats = [A.chain.cats[phi(i)] for i in range(m + 1)]
    mods = [A.lattice[(phi(i - 1), phi(i))] for i in range(1, m + 1)]
    lattice = {(i, j): A.lattice[(phi(i), phi(j))] for i in range(m + 1) for j in range(i, m + 1)}
    structure = {(i, j, k): A.structure[(phi(i), phi(j), phi(k))] for i, j, k in _triples(m)}
    return CompositeAlgebra(Chain(cats, mods), lattice, structure)


def algebras_equal(A, B):
    """Entrywise equality of lattices and structure maps."""
    return (A.n == B.n and all(A.lattice[k] == B.lattice[k] for k in A.lattice)
            and all(A.structure[k] == B.structure[k] for k in A.structure))


def reindex_functoriality_check(A, phi, psi):
    """``reindex(psi, reindex(phi, A))`` against ``reindex(psi then phi, A)``."""
    from .simplex import compose as simplex_compose
    rep = Report("reindex functoriality")
    rep.count()
    two = reindex(psi, reindex(phi, A))
    one = reindex(simplex_compose(psi, phi), A)
    if not algebras_equal(two, one):
        rep.fail("reindexing not functorial", (psi.values, phi.values))
    return rep


# -- comparison of a chain's own algebra with another algebra on the same chain

def algebra_comparison(built, target):
    """Maps ``built.lattice[i, j] -> target.lattice[i, j]`` from universal properties.

    ``built`` must come from :func:`build_composite_algebra`; the maps are
    the identity on adjacent entries and are extended by factoring
    ``mu_target[i, j-1, j] o (c * id)`` through each left-associated composite.
    """
    V = built.backend
    n = built.n
    comp = {}
    for i in range(n + 1):
        comp[(i, i)] = {k: V.identity(v) for k, v in built.lattice[(i, i)].mod.items()}
        if i < n:
            comp[(i, i + 1)] = {k: V.identity(v) for k, v in built.lattice[(i, i + 1)].mod.items()}
    for length in range(2, n + 1):
        for i in range(n - length + 1):
            j = i + length
            W = built.witnesses[(i, j)]
            out = {}
            for (x, z) in W.coeq:
                maps = []
                for (w,) in W.level0.tuples:
                    c = W.N(w, z)
                    maps.append(V.compose(target.mu(i, j - 1, j, x, w, z),
                                          V.tensor_mor(comp[(i, j - 1)][(x, w)], V.identity(c))))
                h = V.copair(W.level0.coproducts[(x, z)], maps, target.lattice[(i, j)](x, z))
                out[(x, z)] = W.factor(x, z, h)
            comp[(i, j)] = out
    return comp


def comparison_report(built, target, title):
    V = built.backend
    rep = Report(title)
    try:
        comp = algebra_comparison(built, target)
    except FactorizationError as e:
        rep.fail("structure map does not descend", (), str(e))
        return rep
    for (i, j), maps in sorted(comp.items()):
        rep.count()
        for (x, z), f in sorted(maps.items(), key=str):
            if not V.is_invertible(f):
                rep.fail("comparison not invertible", (i, j), f"at ({x}, {z})")
    return rep


# -- external product and change of base

def external_product_algebra(A, B):
    """Entrywise external product of two algebras of the same length."""
    if A.n != B.n:
        raise ValueError("external product needs algebras of the same length")
    P = ProductBackend(A.backend, B.backend)
    cats = [external_product_category(C, D, P) for C, D in zip(A.chain.cats, B.chain.cats)]
    lattice = {(i, j): external_product(A.lattice[(i, j)], B.lattice[(i, j)], cats[i], cats[j])
               for (i, j) in A.lattice}
    structure = {}
    for (i, j, k), table in A.structure.items():
        other = B.structure[(i, j, k)]
        structure[(i, j, k)] = {
            ((x, x2), (y, y2), (z, z2)): PairMor(f, g)
            for (x, y, z), f in table.items() for (x2, y2, z2), g in other.items()}
    mods = [lattice[(i, i + 1)] for i in range(A.n)]
    return CompositeAlgebra(Chain(cats, mods), lattice, structure)


def external_composite_check(A, B):
    """The external product of two composite algebras is again composite."""
    E = external_product_algebra(A, B)
    built = build_composite_algebra(E.chain)
    rep = Report("external composite")
    rep.merge(segal_check(E), prefix="segal: ")
    rep.merge(comparison_report(built, E, "lattice"), prefix="lattice: ")
    return rep


def change_of_base_algebra(F, A):
    if isinstance(F, str):
        F = shipped_functor(F)
    W = F.target
    cats = [change_of_base(F, C) for C in A.chain.cats]
    lattice = {(i, j): change_of_base_bimodule(F, M, cats[i], cats[j]) for (i, j), M in A.lattice.items()}
    structure = {}
    for (i, j, k), table in A.structure.items():
        Mij, Mjk = A.lattice[(i, j)], A.lattice[(j, k)]
        structure[(i, j, k)] = {(x, y, z): W.compose(F.on_mor(f), F.mu(Mij(x, y), Mjk(y, z)))
                                for (x, y, z), f in table.items()}
    mods = [lattice[(i, i + 1)] for i in range(A.n)]
    return CompositeAlgebra(Chain(cats, mods), lattice, structure)


def change_of_base_check(F, A):
    """``F`` applied to a composite algebra yields a composite algebra."""
    B = change_of_base_algebra(F, A)
    built = build_composite_algebra(B.chain)
    rep = Report("change of base")
    rep.merge(segal_check(B), prefix="segal: ")
    rep.merge(comparison_report(built, B, "lattice"), prefix="lattice: ")
    return rep


def chain_of(*mods):
    return Chain([mods[0].left] + [M.right for M in mods], list(mods))


__all__ = [
    "Chain", "CompositeAlgebra", "algebra_comparison", "algebras_equal", "build_composite_algebra",
    "chain_of", "change_of_base_algebra", "change_of_base_check", "comparison_report",
    "external_composite_check", "external_product_algebra", "inject_fault", "reindex",
    "reindex_functoriality_check", "segal_check", "segal_comparison", "validate_composite_algebra",
]
