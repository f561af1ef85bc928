from itertools import product

import pytest
from hypothesis import given, strategies as st

from enrichcat.bimodule import (BimoduleSquare, change_of_base_bimodule, compose_squares_vertically,
                                external_product, hom_bimodule, identity_square, restrict,
                                validate_bimodule, validate_square)
from enrichcat.enriched import (change_of_base, compose_functors, identity_functor,
                                interval_functor, monoid_category, preorder_category,
                                tensor_with_interval)
from enrichcat.errors import BackendMismatch
from enrichcat.generators import (broken_bimodule, compatible_relations, preorder_from_matrix,
                                  random_bool_bimodule, random_concrete_bimodule,
                                  random_concrete_category, random_preorder, relation_bimodule,
                                  rng_from)
from enrichcat.simplex import SimplexMap
from enrichcat.vbackend import FINSET, BoolMor, PairObj


def monotone_oracle(C, D, rel):
    """Down-closed along the left preorder, up-closed along the right one."""
    down = all((x2, y) in rel for x2, x, y in product(C.objects, C.objects, D.objects)
               if C(x2, x) and (x, y) in rel)
    up = all((x, y2) in rel for x, y, y2 in product(C.objects, D.objects, D.objects)
             if (x, y) in rel and D(y, y2))
    return down and up


def fun_monoid():
    """All endomaps of {0, 1} under composition (first then second)."""
    elems = ["id", "sw", "c0", "c1"]
    fn = {"id": (0, 1), "sw": (1, 0), "c0": (0, 0), "c1": (1, 1)}
    inv = {v: k for k, v in fn.items()}
    return monoid_category(elems, lambda a, b: inv[tuple(fn[b][i] for i in fn[a])], "id")


@given(st.integers(0, 10_000))
def test_hom_bimodule_is_valid(seed):
    C = random_concrete_category(rng_from(seed), 3).category
    assert validate_bimodule(hom_bimodule(C)).ok


def test_hom_bimodule_of_monoid_and_preorder():
    A = fun_monoid()
    H = hom_bimodule(A)
    assert H("*", "*") == A("*", "*") and validate_bimodule(H).ok
    P = preorder_from_matrix([[True, True], [False, True]])
    assert hom_bimodule(P).mod == P.hom


def test_bool_relations_valid_iff_monotone():
    rng = rng_from(1)
    for _ in range(20):
        C, D = random_preorder(rng, 2, "x"), random_preorder(rng, 2, "y")
        pairs = list(product(C.objects, D.objects))
        for bits in product((False, True), repeat=len(pairs)):
            rel = {p for p, b in zip(pairs, bits) if b}
            try:
                M = relation_bimodule(C, D, rel)
            except ValueError:
                # an action map True -> False cannot be built
                assert not monotone_oracle(C, D, rel)
                continue
            assert validate_bimodule(M).ok and monotone_oracle(C, D, rel)
        assert len(compatible_relations(C, D)) == sum(
            monotone_oracle(C, D, {p for p, b in zip(pairs, bits) if b})
            for bits in product((False, True), repeat=len(pairs)))


def test_corrupted_right_action_reports_one_failure():
    rep = validate_bimodule(broken_bimodule())
    assert [(f.kind, f.witness) for f in rep.failures] == [("right associativity", ("a0", "b0", "b1", "b2"))]


def test_random_concrete_bimodules_are_valid():
    rng = rng_from(2)
    for _ in range(50):
        C = random_concrete_category(rng, 2, prefix="a")
        D = random_concrete_category(rng, 2, prefix="b")
        assert validate_bimodule(random_concrete_bimodule(rng, C, D).bimodule).ok


def test_restrict_identity():
    C = random_concrete_category(rng_from(3), 2).category
    M = hom_bimodule(C)
    assert restrict(identity_functor(C), identity_functor(C), M) == M


def test_restrict_along_endpoint_inclusions():
    C = random_concrete_category(rng_from(4), 2).category
    H = hom_bimodule(tensor_with_interval(C, 1))
    i0 = interval_functor(C, SimplexMap((0,), 1))
    i1 = interval_functor(C, SimplexMap((1,), 1))
    C0 = tensor_with_interval(C, 0)
    for F, G in ((i0, i0), (i0, i1), (i1, i1)):
        R = restrict(F, G, H)
        assert validate_bimodule(R).ok
        assert R.mod == hom_bimodule(C0).mod
    backwards = restrict(i1, i0, H)
    assert all(len(v) == 0 for v in backwards.mod.values())


def test_restrict_bool_is_inverse_image():
    rng = rng_from(5)
    C, D = random_preorder(rng, 2, "x"), random_preorder(rng, 2, "y")
    M = random_bool_bimodule(rng, C, D)
    P = preorder_category(["p"], lambda a, b: True)
    for x, y in product(C.objects, D.objects):
        F = _point(P, C, x)
        G = _point(P, D, y)
        assert restrict(F, G, M).mod[("p", "p")] == M(x, y)


def _point(P, C, x):
    from enrichcat.enriched import VFunctor
    return VFunctor(P, C, {"p": x}, {("p", "p"): BoolMor(True, C(x, x))})


def test_restrict_is_functorial():
    C = random_concrete_category(rng_from(6), 2).category
    M = hom_bimodule(tensor_with_interval(C, 2))
    F = interval_functor(C, SimplexMap((0, 2), 2))
    F2 = interval_functor(C, SimplexMap((1,), 1))
    G = interval_functor(C, SimplexMap((1, 2), 2))
    G2 = interval_functor(C, SimplexMap((0,), 1))
    once = restrict(compose_functors(F2, F), compose_functors(G2, G), M)
    twice = restrict(F2, G2, restrict(F, G, M))
    assert once == twice


def test_restrict_backend_mismatch():
    C = random_concrete_category(rng_from(7), 1).category
    P = preorder_category(["p"], lambda a, b: True)
    with pytest.raises(BackendMismatch):
        restrict(identity_functor(P), identity_functor(P), hom_bimodule(C))


def test_external_product_examples():
    rng = rng_from(8)
    C = random_concrete_category(rng, 2, prefix="a")
    D = random_concrete_category(rng, 2, prefix="b")
    M = random_concrete_bimodule(rng, C, D).bimodule
    U = hom_bimodule(preorder_category(["u"], lambda a, b: True))
    E = external_product(M, U)
    assert validate_bimodule(E).ok
    for (x, u), (y, v) in product(E.left.objects, E.right.objects):
        assert E((x, u), (y, v)) == PairObj(M(x, y), True)


def test_external_products_are_valid():
    rng = rng_from(9)
    for _ in range(50):
        C = random_concrete_category(rng, 2, prefix="a")
        D = random_concrete_category(rng, 1, prefix="b")
        M = random_concrete_bimodule(rng, C, D).bimodule
        P, Q = random_preorder(rng, 2, "x"), random_preorder(rng, 2, "y")
        assert validate_bimodule(external_product(M, random_bool_bimodule(rng, P, Q))).ok


def test_hom_bimodule_commutes_with_change_of_base():
    for seed in range(50):
        C = random_concrete_category(rng_from(seed), 2).category
        for F in ("finset->bool", "finset->finvect2"):
            assert change_of_base_bimodule(F, hom_bimodule(C)) == hom_bimodule(change_of_base(F, C))


def test_identity_square_and_vertical_composite():
    C = random_concrete_category(rng_from(10), 2).category
    S = identity_square(hom_bimodule(C))
    assert validate_square(S).ok
    assert validate_square(compose_squares_vertically(S, S)).ok


def test_left_multiplication_is_a_square_only_when_central():
    A = fun_monoid()
    H = hom_bimodule(A)
    V = FINSET
    mult = A.comp[("*", "*", "*")]
    for a in A("*", "*").labels:
        cell = {("*", "*"): V.mor(H("*", "*"), H("*", "*"), lambda m, a=a: mult((a, m)))}
        S = BimoduleSquare(H, H, identity_functor(A), identity_functor(A), cell)
        rep = validate_square(S)
        assert rep.ok == (a == "id")
        assert all(f.kind == "left equivariance" for f in rep.failures)


def test_bool_squares_exist_iff_relations_contain():
    rng = rng_from(11)
    for _ in range(20):
        C, D = random_preorder(rng, 2, "x"), random_preorder(rng, 2, "y")
        M, M2 = random_bool_bimodule(rng, C, D), random_bool_bimodule(rng, C, D)
        contained = all(M2(x, y) for x, y in product(C.objects, D.objects) if M(x, y))
        try:
            cell = {k: BoolMor(M(*k), M2(*k)) for k in M.mod}
        except ValueError:
            assert not contained
            continue
        assert contained
        assert validate_square(BimoduleSquare(M, M2, identity_functor(C), identity_functor(D), cell)).ok
