from itertools import product
from math import comb

import pytest

from enrichcat.enriched import validate_category
from enrichcat.fincat import FiniteCategory, FiniteFunctor, discrete_category, identity_functor
from enrichcat.generators import (broken_associativity_category, random_concrete_category,
                                  random_preorder, rng_from)
from enrichcat.indexcat import (IndexedObject, active_maps, active_slice, active_slice_direct,
                                algebra_from_category, bar_cofinal_map, base_projection,
                                build_indexed_category, cofinality_probe, fiber_formula_check,
                                fiber_formula_suite, final_object_probe, final_object_suite,
                                lambda_slice, list_slice, sifted_probe, unique_lift_check)
from enrichcat.simplex import SimplexMap, enumerate_maps, is_active, slice_category


def brute_counts(Xs, rank):
    n = len(Xs) - 1
    objects = arrows = 0
    for m in range(rank + 1):
        for vals in product(range(n + 1), repeat=m + 1):
            if any(a > b for a, b in zip(vals, vals[1:])):
                continue
            labels = 1
            for v in vals:
                labels *= len(Xs[v])
            objects += labels
            # every map [k] -> [m] pulls back to an object of rank k
            arrows += labels * sum(comb(m + k + 1, k + 1) for k in range(rank + 1))
    return objects, arrows


def arrow_category():
    return FiniteCategory(["a", "b"], [("a", "a", "1"), ("b", "b", "1"), ("a", "b", "f")],
                          lambda p, q: p[2] if q[2] == "1" else q[2], lambda x: "1", name="a->b")


def test_counts_match_brute_force():
    sets = [("p",), ("p", "q")]
    for r in range(3):
        for k in range(1, 4):
            for Xs in product(sets, repeat=k):
                cat = build_indexed_category(list(Xs), max_rank=r)
                assert (len(cat.objects), len(cat.arrows)) == brute_counts(Xs, r)


def test_singleton_lists_are_the_simplex_truncation():
    cat = build_indexed_category([("x",)], max_rank=3)
    base = slice_category(0, max_rank=3)
    assert len(cat.objects) == len(base.objects)
    assert len(cat.arrows) == len(base.arrows)
    assert cat.validate() == []


def test_objects_over_an_edge_are_pairs():
    X, Y = ("x0", "x1"), ("y0", "y1", "y2")
    cat = build_indexed_category([X, Y], max_rank=1)
    over = [o.labels for o in cat.objects if o.base == SimplexMap((0, 1), 1)]
    assert over == list(product(X, Y))


def test_indexed_object_checks_labels():
    with pytest.raises(ValueError):
        IndexedObject(SimplexMap((0, 1), 1), ("x",))


def test_unique_lifts():
    for Xs, cell in (([("a", "b")], False), ([("a",), ("b", "c")], False), ([("a",), ("b", "c")], True)):
        cat = build_indexed_category(Xs, cell, 2)
        assert unique_lift_check(cat, base_projection(cat, len(Xs) - 1, cell, 2)).ok


def test_algebra_from_category_matches_validator():
    rng = rng_from(0)
    for _ in range(50):
        C = random_concrete_category(rng, 2).category
        _, rep = algebra_from_category(C, 3)
        assert rep.ok == validate_category(C).ok == True
    for _ in range(10):
        P = random_preorder(rng, 3)
        assert algebra_from_category(P, 3)[1].ok
    _, rep = algebra_from_category(broken_associativity_category(), 3)
    assert not rep.ok and not validate_category(broken_associativity_category()).ok
    assert any(f.witness[0] == ("0", "1", "2", "3") for f in rep.failures)


def test_algebra_blocks_on_small_ranks():
    C = random_concrete_category(rng_from(1), 2).category
    A, _ = algebra_from_category(C, 2)
    for xs in product(C.objects, repeat=3):
        # the active map [1] -> [2] picks out composition
        assert A.blocks(xs, SimplexMap((0, 2), 2)) == [C.comp[xs]]
        f01, f12 = A.factors(xs)
        assert A.blocks(xs, SimplexMap.inert(0, 1, 2)) == [C.backend.identity(f01)]
        assert A.blocks(xs, SimplexMap.inert(1, 1, 2)) == [C.backend.identity(f12)]


def test_active_maps():
    for m, k in product(range(4), repeat=2):
        assert active_maps(m, k) == [f for f in enumerate_maps(m, k) if is_active(f)]


def test_direct_slice_matches_filtered_slice():
    Xs = [("a", "b"), ("c",), ("d", "e")]
    cat = build_indexed_category(Xs, False, 2)
    for target in cat.objects:
        a = active_slice(cat, target, cellular_sources=True)
        b = active_slice_direct(Xs, target, 2, cellular_sources=True)
        assert set(a.objects) == set(b.objects)
        assert set(a.arrows) == set(b.arrows)


def test_rank_zero_target_slice():
    X = ("a", "b")
    target = IndexedObject(SimplexMap((0,), 0), ("a",))
    s = active_slice_direct([X], target, 2, cellular_sources=False)
    # only [0] admits an active map from [0]
    assert [o[0].labels for o in s.objects] == [("a",)]


def test_fiber_formula_examples():
    ones = [("x",), ("y",), ("z",)]
    assert fiber_formula_suite(ones, 2).ok
    Xs = [("a", "b"), ("c", "d"), ("e",)]
    eta = SimplexMap((0, 1, 2), 2)
    target = IndexedObject(eta, ("a", "c", "e"))
    rep = fiber_formula_check(Xs, target, SimplexMap.identity(2), eta)
    assert rep.ok and rep.data["size"] == 1
    wide = IndexedObject(SimplexMap((0, 2), 2), ("a", "e"))
    rep = fiber_formula_check(Xs, wide, SimplexMap((0, 2), 2), eta)
    assert rep.ok and rep.data["size"] == 2
    with pytest.raises(ValueError):
        fiber_formula_check(Xs, wide, SimplexMap((0, 1), 1), SimplexMap((0, 2), 2))


def test_fiber_formula_suite_small():
    assert fiber_formula_suite([("a", "b"), ("c",), ("d", "e")], 2).ok


def test_cofinality_probe_examples():
    cat = arrow_category()
    assert cofinality_probe(identity_functor(cat)).ok
    d = discrete_category(["u", "v"])
    const = FiniteFunctor(cat, d, lambda x: "u", lambda a: d.identity("u"))
    rep = cofinality_probe(const)
    assert not rep.ok and rep.necessary_only
    assert rep.failures[0].kind == "empty comma category"


def test_bar_cofinal_map_small():
    F = bar_cofinal_map(("x",), ("y0", "y1"), ("z",), "x", "z", 2)
    assert F.validate() == []
    rep = cofinality_probe(F)
    assert rep.ok and rep.necessary_only


def test_final_object_probe_examples():
    assert final_object_probe(arrow_category()).data["verdict"] == "final"
    rep = final_object_probe(discrete_category(["a", "b"]))
    assert not rep.ok
    empty = FiniteCategory([], [], lambda a, b: None, lambda x: None)
    rep = final_object_probe(empty)
    assert rep.ok and rep.data["verdict"] == "empty"


def test_list_slices_small():
    assert final_object_suite(("a",), 1, 2).ok
    assert final_object_suite(("a", "b"), 1, 2).ok
    s = list_slice(("a",), 1, [("a", 1), ("a", 0)], 2)
    assert s.objects == []


def test_sifted_probe_examples():
    assert sifted_probe(arrow_category()).ok
    rep = sifted_probe(discrete_category(["a", "b"]))
    assert not rep.ok and rep.necessary_only


def test_sifted_lambda_slices():
    for m in range(3):
        for xi in enumerate_maps(m, 2):
            cat = lambda_slice(2, xi, 3)
            small = [o for o in cat.objects if o[0].rank <= 2]
            assert sifted_probe(cat, small).ok, xi
