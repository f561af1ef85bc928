from itertools import product

import pytest
from hypothesis import given, strategies as st

from enrichcat.enriched import (change_of_base, change_of_base_functor, e_category,
                                full_subcategory, identity_functor, interval_category,
                                interval_functor, is_complete_truncated, monoid_category,
                                preorder_category, shipped_functor, tensor_with_e,
                                tensor_with_interval, underlying_category, validate_category,
                                validate_functor)
from enrichcat.generators import (all_preorders, broken_associativity_category, broken_functor,
                                  preorder_from_matrix, random_concrete_category, rng_from)
from enrichcat.simplex import SimplexMap, face
from enrichcat.vbackend import BOOL, FINSET, FinVectBackend

BACKENDS = [FINSET, BOOL, FinVectBackend(2)]


def monoid_axioms_hold(elems, mult, unit):
    assoc = all(mult(mult(a, b), c) == mult(a, mult(b, c)) for a, b, c in product(elems, repeat=3))
    unital = all(mult(unit, a) == a == mult(a, unit) for a in elems)
    return assoc and unital


def test_monoid_tables_pass_iff_monoid_axioms():
    elems = [0, 1]
    for table in product(elems, repeat=4):
        mult = lambda a, b, t=table: t[2 * a + b]
        for unit in elems:
            C = monoid_category(elems, mult, unit)
            assert validate_category(C).ok == monoid_axioms_hold(elems, mult, unit)


def test_corrupted_composition_reports_one_triple():
    rep = validate_category(broken_associativity_category())
    assert [(f.kind, f.witness) for f in rep.failures] == [("associativity", ("0", "1", "2", "3"))]


def test_every_preorder_passes():
    for n in range(1, 4):
        for m in all_preorders(n):
            assert validate_category(preorder_from_matrix(m)).ok


def test_interval_examples():
    for V in BACKENDS:
        assert interval_category(0, V) == e_category(0, V)
        for n in range(4):
            assert validate_category(interval_category(n, V)).ok
            assert validate_category(e_category(n, V)).ok
    I2 = interval_category(2, BOOL)
    assert I2 == preorder_category(range(3), lambda i, j: i <= j)


def test_underlying_of_e1_and_interval():
    u = underlying_category(e_category(1))
    assert len(u.objects) == 2
    assert all(len(u.hom(x, y)) == 1 for x, y in product(u.objects, repeat=2))
    for n in range(4):
        u = underlying_category(interval_category(n))
        assert u.validate() == []
        assert all(len(u.hom(i, j)) == (1 if i <= j else 0) for i, j in product(range(n + 1), repeat=2))


def test_underlying_examples():
    rng = rng_from(5)
    C = random_concrete_category(rng, 2, max_hom=3).category
    u = underlying_category(C)
    assert all(len(u.hom(x, y)) == len(C(x, y)) for x, y in product(C.objects, repeat=2))
    assert u.validate() == []
    P = preorder_from_matrix([[True, True], [False, True]])
    u = underlying_category(P)
    assert [len(u.hom(x, y)) for x, y in product(P.objects, repeat=2)] == [1, 1, 0, 1]
    u = underlying_category(change_of_base("finset->finvect2", interval_category(1)))
    assert len(u.hom(0, 1)) == 2 and len(u.hom(1, 0)) == 1


def test_completeness_examples():
    assert not is_complete_truncated(e_category(1))
    for n in range(4):
        assert is_complete_truncated(interval_category(n))
    z2 = monoid_category([0, 1], lambda a, b: (a + b) % 2, 0)
    assert not is_complete_truncated(z2)


def test_tensor_with_interval_case_split():
    rng = rng_from(2)
    for V in BACKENDS:
        for n_obj, n in product((1, 2), (0, 1, 2)):
            C = random_concrete_category(rng, n_obj, max_hom=2).category
            if V is not FINSET:
                C = change_of_base("finset->bool" if V is BOOL else "finset->finvect2", C)
            T = tensor_with_interval(C, n)
            for (x, i), (y, j) in product(T.objects, repeat=2):
                assert T((x, i), (y, j)) == (C(x, y) if i <= j else V.initial())
            assert validate_category(T).ok


def test_tensor_with_interval_degree_zero_is_c():
    C = random_concrete_category(rng_from(4), 2).category
    T = tensor_with_interval(C, 0)
    assert full_subcategory(T, T.objects, relabel=lambda o: o[0]) == C


def test_tensor_fibres_are_copies_of_c():
    C = random_concrete_category(rng_from(9), 2).category
    for n in range(3):
        T = tensor_with_interval(C, n)
        for i in range(n + 1):
            fib = [(x, i) for x in C.objects]
            assert full_subcategory(T, fib, relabel=lambda o: o[0]) == C


def test_composition_does_not_depend_on_the_path():
    C = random_concrete_category(rng_from(10), 2).category
    T = tensor_with_interval(C, 3)
    for x, y, z in product(C.objects, repeat=3):
        for i, j in product(range(4), repeat=2):
            for k in range(i, j + 1):
                assert T.comp[((x, i), (y, k), (z, j))] == C.comp[(x, y, z)]


def test_endpoint_inclusions_are_functors():
    C = random_concrete_category(rng_from(12), 2).category
    for i in (0, 1):
        F = interval_functor(C, face(i, 1))
        assert validate_functor(F).ok
    assert validate_functor(identity_functor(C)).ok
    for theta in (SimplexMap((0, 0, 1), 1), SimplexMap((0, 2), 2)):
        assert validate_functor(interval_functor(C, theta)).ok
        assert validate_functor(interval_functor(C, theta, tensor_with_e)).ok


def test_corrupted_functor_reports_one_failure():
    rep = validate_functor(broken_functor())
    assert [(f.kind, f.witness) for f in rep.failures] == [("composition not preserved", ("0", "1", "2"))]


@given(st.integers(0, 10_000), st.sampled_from(["finset->bool", "finset->finvect2", "finset->finvect3"]))
def test_change_of_base_preserves_validity(seed, F):
    C = random_concrete_category(rng_from(seed), 2, max_hom=2).category
    assert validate_category(change_of_base(F, C)).ok


def test_finset_to_bool_gives_reachability_preorder():
    for seed in range(20):
        C = random_concrete_category(rng_from(seed), 3).category
        P = preorder_category(C.objects, lambda x, y: len(C(x, y)) > 0)
        assert change_of_base("finset->bool", C) == P


def test_linearized_interval():
    L = change_of_base("finset->finvect2", interval_category(1))
    assert [L(i, j).dim for i, j in product(range(2), repeat=2)] == [1, 1, 0, 1]


def test_bool_round_trip():
    for n in range(1, 4):
        for m in all_preorders(n):
            P = preorder_from_matrix(m)
            back = change_of_base("finset->bool", change_of_base("bool->finset", P))
            assert back == P


def test_change_of_base_functor():
    C = random_concrete_category(rng_from(3), 2).category
    F = identity_functor(C)
    G = change_of_base_functor("finset->bool", F)
    assert validate_functor(G).ok


def test_unknown_functor_descriptor():
    with pytest.raises(ValueError):
        shipped_functor("bool->finvect2")
