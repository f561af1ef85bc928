"""Acceptance run: one PASS/FAIL line per criterion with its wall-clock budget.

Run with ``pytest -v -s tests/test_acceptance.py`` or ``python tests/test_acceptance.py``.
"""

import sys
import time
from itertools import product

import pytest

from enrichcat.barcomp import (associator, compose_bimodules, is_invertible_map, oracle_agreement,
                               pentagon_check, realization_truncation_check, unitor, unitor_right)
from enrichcat.bimodule import change_of_base_bimodule
from enrichcat.doublecat import (build_composite_algebra, change_of_base_check, chain_of,
                                 external_composite_check, inject_fault, reindex_functoriality_check,
                                 segal_check)
from enrichcat.enriched import (change_of_base, e_category, interval_category,
                                is_complete_truncated, tensor_with_interval)
from enrichcat.funcat import (FunSpace, completeness_check_fun, segal_check_fun,
                              transformation_routes_check)
from enrichcat.generators import (bool_preorders_up_to, compatible_relations, exhaustive_bool_pairs,
                                  random_bool_chain, random_concrete_category, random_finset_chain,
                                  random_finset_pair, random_preorder, relation_bimodule, rng_from)
from enrichcat.indexcat import (bar_cofinal_map, cofinality_probe, fiber_formula_suite,
                                final_object_suite)
from enrichcat.simplex import (compose, enumerate_maps, factor_active_inert, is_active, is_cellular,
                               is_inert, is_phi_cellular, SimplexMap)
from enrichcat.vbackend import BOOL, FINSET, FinVectBackend

SEED = 2024


class Tally:
    def __init__(self):
        self.checked = 0
        self.failed = []

    def check(self, ok, what):
        self.checked += 1
        if not ok and len(self.failed) < 5:
            self.failed.append(what)
        return ok

    def absorb(self, rep, what):
        """Count every check inside a report; record one failure if it failed."""
        self.checked += max(rep.checked - 1, 0)
        return self.check(rep.ok, what)

    @property
    def ok(self):
        return self.checked > 0 and not self.failed

    def detail(self):
        text = f"{self.checked} checks"
        if self.failed:
            text += f"; first failures: {self.failed}"
        return text


def c01_oracle():
    t = Tally()
    for i, (M, N) in enumerate(exhaustive_bool_pairs(2)):
        t.check(oracle_agreement(M, N).ok, ("bool", i))
    rng = rng_from(SEED)
    for i in range(200):
        M, N = random_finset_pair(rng, max_objects=3, max_hom=3, max_size=3)
        t.check(oracle_agreement(M, N).ok, ("finset", i))
    return t


def c02_realization():
    t = Tally()
    rng = rng_from(SEED + 2)
    for i in range(10):
        M, N = random_finset_pair(rng, max_objects=3, max_hom=3, max_size=3)
        t.check(realization_truncation_check(M, N, 3).ok, i)
    return t


def c03_unit_assoc():
    t = Tally()
    rng = rng_from(SEED + 3)
    small = dict(max_objects=2, max_hom=2, max_size=2)
    for i in range(100):
        M, N = random_finset_pair(rng, **small)
        t.check(is_invertible_map(unitor(N.left, N), FINSET), ("unitor", i))
        M, N = random_finset_pair(rng, **small)
        t.check(is_invertible_map(unitor_right(M, M.right), FINSET), ("unitor_right", i))
        M, N, P = random_finset_chain(rng, 3, **small).mods
        t.check(is_invertible_map(associator(M, N, P).map, FINSET), ("associator", i))
    for i in range(25):
        t.check(pentagon_check(*random_finset_chain(rng, 4, **small).mods).ok, ("pentagon", i))
    return t


def _bool_two_chains():
    cats = [bool_preorders_up_to(2, p, p.upper()) for p in "abc"]
    for A, B, C in product(*cats):
        rel_ab = compatible_relations(A, B)
        rel_bc = compatible_relations(B, C)
        for r, s in product(rel_ab, rel_bc):
            yield chain_of(relation_bimodule(A, B, r, "M1"), relation_bimodule(B, C, s, "M2"))


def c04_segal():
    t = Tally()
    for i, ch in enumerate(_bool_two_chains()):
        t.check(segal_check(build_composite_algebra(ch)).ok, ("bool", i))
    rng = rng_from(SEED + 4)
    for i in range(20):
        t.check(segal_check(build_composite_algebra(random_finset_chain(rng, 3))).ok, ("finset", i))
    # a fault must be caught and located at the long entry
    while True:
        A = build_composite_algebra(random_finset_chain(rng, 2))
        if any(len(v) for v in A.lattice[(0, 2)].mod.values()):
            break
    rep = segal_check(inject_fault(A))
    t.check(not rep.ok and {f.witness for f in rep.failures} == {(0, 2)}, "fault")
    return t


def c05_reindex():
    t = Tally()
    rng = rng_from(SEED + 5)
    for a in range(5):
        A = build_composite_algebra(random_finset_chain(rng, 3, max_objects=2, max_hom=2, max_size=2))
        for m in range(4):
            for phi in enumerate_maps(m, 3):
                for k in range(4):
                    for psi in enumerate_maps(k, m):
                        t.check(reindex_functoriality_check(A, phi, psi).ok, (a, phi.values, psi.values))
    return t


def c06_case_split():
    t = Tally()
    rng = rng_from(SEED + 6)
    backends = [FINSET, BOOL, FinVectBackend(2)]
    for V in backends:
        for n_obj, n in product((1, 2), (0, 1, 2)):
            for _ in range(3):
                C = random_concrete_category(rng, n_obj, max_hom=2, backward=True).category
                if V is BOOL:
                    C = change_of_base("finset->bool", C)
                elif V is not FINSET:
                    C = change_of_base("finset->finvect2", C)
                T = tensor_with_interval(C, n)
                for (x, i), (y, j) in product(T.objects, repeat=2):
                    want = C(x, y) if i <= j else V.initial()
                    t.check(T((x, i), (y, j)) == want, (V.kind, n_obj, n, x, i, y, j))
    return t


def c07_fun_segal():
    t = Tally()
    tiny = bool_preorders_up_to(2)
    pairs = list(product(tiny, repeat=2))
    rng = rng_from(SEED + 7)
    for _ in range(5):
        pairs.append((random_concrete_category(rng, 1, max_hom=2).category,
                      random_concrete_category(rng, 2, max_hom=2).category))
    for i, (C, D) in enumerate(pairs):
        S = FunSpace(C, D)
        for n in (2, 3):
            t.check(segal_check_fun(C, D, n, space=S).ok, (i, n))
        fs = [S.from_level0(F) for F in S.level(0).functors]
        for F, G in product(fs, repeat=2):
            t.check(transformation_routes_check(F, G, S).ok, (i, "routes"))
    return t


def c08_completeness():
    t = Tally()
    rng = rng_from(SEED + 8)
    sources = [e_category(0), interval_category(0), interval_category(1)]
    targets = [interval_category(1), interval_category(2), e_category(1)]
    for _ in range(6):
        sources.append(random_concrete_category(rng, 1, max_hom=2).category)
        targets.append(random_concrete_category(rng, 2, max_hom=2, backward=True).category)
    for C, D in product(sources, targets):
        if is_complete_truncated(D):
            t.check(completeness_check_fun(C, D).ok, (C.name, D.name))
    bool_src = [e_category(0, BOOL), random_preorder(rng, 2)]
    for C, D in product(bool_src, bool_preorders_up_to(2)):
        rep = completeness_check_fun(C, D)
        t.check(rep.ok or not is_complete_truncated(D), (C.name, "bool"))
    rep = completeness_check_fun(e_category(0), e_category(1))
    t.check(not rep.ok and rep.failures[0].kind == "non-identity natural isomorphism", "E1 witness")
    return t


def c09_simplex():
    t = Tally()
    for m, n in product(range(6), repeat=2):
        for f in enumerate_maps(m, n):
            a, i = factor_active_inert(f)
            hits = []
            for k, start in product(range(n + 1), repeat=2):
                if start + k > n:
                    continue
                i2 = SimplexMap.inert(start, k, n)
                if set(f.values) <= set(i2.values):
                    a2 = SimplexMap(tuple(i2.values.index(v) for v in f.values), k)
                    if is_active(a2):
                        hits.append((a2, i2))
            t.check(compose(a, i) == f and is_active(a) and is_inert(i) and hits == [(a, i)], f)
    for m, n in product(range(5), repeat=2):
        for a in enumerate_maps(m, n):
            t.check(is_phi_cellular(a, SimplexMap.identity(n)) == is_cellular(a), a)
    return t


def c10_fiber():
    t = Tally()
    for sizes in product((1, 2), repeat=3):
        Xs = [tuple(f"{c}{j}" for j in range(k)) for c, k in zip("xyz", sizes)]
        t.absorb(fiber_formula_suite(Xs, 2), sizes)
    return t


def c11_probes():
    t = Tally()
    for k, n in product((1, 2), range(3)):
        X = tuple(f"x{i}" for i in range(k))
        t.check(final_object_suite(X, n, 3).ok, ("final", k, n))
    necessary_only = True
    for sizes in product((1, 2), repeat=3):
        X, Y, Z = [tuple(f"{c}{j}" for j in range(k)) for c, k in zip("xyz", sizes)]
        for x, z in product(X, Z):
            rep = cofinality_probe(bar_cofinal_map(X, Y, Z, x, z, 3))
            necessary_only = necessary_only and rep.necessary_only
            t.check(rep.ok, ("cofinal", sizes, x, z))
    t.check(necessary_only, "cofinal probe labelled NECESSARY-ONLY")
    return t


def c12_base_change():
    t = Tally()
    rng = rng_from(SEED + 12)
    for i in range(50):
        M, N = random_finset_pair(rng, max_objects=2, max_hom=2, max_size=2)
        W = compose_bimodules(M, N).bimodule
        pushed = compose_bimodules(change_of_base_bimodule("finset->bool", M),
                                   change_of_base_bimodule("finset->bool", N)).bimodule
        t.check(change_of_base_bimodule("finset->bool", W).mod == pushed.mod, ("pair", i))
        t.check(change_of_base_check("finset->bool", build_composite_algebra(chain_of(M, N))).ok,
                ("algebra", i))
    for i in range(20):
        A = build_composite_algebra(random_finset_chain(rng, 2, max_objects=2, max_hom=2, max_size=2))
        B = build_composite_algebra(random_bool_chain(rng, 2))
        t.check(external_composite_check(A, B).ok, ("external", i))
    return t


CRITERIA = [
    (1, "oracle equivalence", c01_oracle, 60),
    (2, "reflexive coequalizer suffices", c02_realization, 30),
    (3, "unit and associativity comparisons", c03_unit_assoc, 60),
    (4, "segal condition on composite algebras", c04_segal, 60),
    (5, "reindexing is functorial", c05_reindex, 30),
    (6, "C x [n] hom case split", c06_case_split, 5),
    (7, "functor spaces are segal", c07_fun_segal, 120),
    (8, "functor space completeness", c08_completeness, 30),
    (9, "simplex combinatorics", c09_simplex, 10),
    (10, "fibre formula", c10_fiber, 30),
    (11, "final object and cofinality probes", c11_probes, 60),
    (12, "change of base and external product", c12_base_change, 60),
]


def run_criterion(number, title, fn, target):
    start = time.perf_counter()
    tally = fn()
    elapsed = time.perf_counter() - start
    ok = tally.ok and elapsed < target
    line = (f"criterion {number:2d} {title}: {'PASS' if ok else 'FAIL'} "
            f"({elapsed:.1f}s, target < {target}s; {tally.detail()})")
    return ok, line


@pytest.mark.parametrize("number,title,fn,target", CRITERIA, ids=[f"c{c[0]:02d}" for c in CRITERIA])
def test_criterion(number, title, fn, target, capsys):
    ok, line = run_criterion(number, title, fn, target)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
