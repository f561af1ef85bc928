from itertools import product
from math import comb

import pytest
from hypothesis import given, strategies as st

from enrichcat.errors import BudgetExceeded, RankMismatch
from enrichcat.simplex import (MapClass, SimplexMap, classify, compose, count_maps, degeneracy,
                               enumerate_maps, face, factor_active_inert, is_active, is_cellular,
                               is_inert, is_phi_cellular, maps_up_to, rho, slice_category)


def brute_maps(m, n):
    """Every monotone tuple, found by filtering all tuples."""
    return [v for v in product(range(n + 1), repeat=m + 1)
            if all(a <= b for a, b in zip(v, v[1:]))]


@st.composite
def simplex_maps(draw, max_rank=5):
    n = draw(st.integers(0, max_rank))
    m = draw(st.integers(0, max_rank))
    vals = sorted(draw(st.lists(st.integers(0, n), min_size=m + 1, max_size=m + 1)))
    return SimplexMap(tuple(vals), n)


@st.composite
def composable_triples(draw):
    ranks = [draw(st.integers(0, 4)) for _ in range(4)]
    maps = []
    for a, b in zip(ranks, ranks[1:]):
        vals = sorted(draw(st.lists(st.integers(0, b), min_size=a + 1, max_size=a + 1)))
        maps.append(SimplexMap(tuple(vals), b))
    return maps


def test_compose_examples():
    assert compose(SimplexMap((0, 1), 2), SimplexMap.identity(2)) == SimplexMap((0, 1), 2)
    assert compose(SimplexMap((0, 1), 2), SimplexMap((0, 2, 3), 3)) == SimplexMap((0, 2), 3)
    with pytest.raises(RankMismatch):
        compose(SimplexMap((0, 1), 2), SimplexMap((0, 1), 1))


def test_invalid_maps_rejected():
    with pytest.raises(ValueError):
        SimplexMap((1, 0), 2)
    with pytest.raises(ValueError):
        SimplexMap((0, 3), 2)


@given(composable_triples())
def test_compose_associative(t):
    f, g, h = t
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


@given(simplex_maps())
def test_identities_neutral(f):
    assert compose(SimplexMap.identity(f.source_rank), f) == f
    assert compose(f, SimplexMap.identity(f.target_rank)) == f


def test_classify_examples():
    assert classify(SimplexMap((1, 2), 3)) is MapClass.INERT
    assert classify(SimplexMap((0, 0, 1, 1), 1)) is MapClass.ACTIVE
    assert classify(SimplexMap((0, 2), 3)) is MapClass.GENERIC
    assert classify(SimplexMap.identity(3)) is MapClass.IDENTITY


def test_factor_examples():
    a, i = factor_active_inert(SimplexMap((1, 3), 4))
    assert a == SimplexMap((0, 2), 2)
    assert i == SimplexMap((1, 2, 3), 4)
    ident = SimplexMap.identity(3)
    assert factor_active_inert(ident) == (ident, ident)


def test_factorization_exists_and_is_unique():
    for m, n in product(range(6), repeat=2):
        for f in enumerate_maps(m, n):
            a, i = factor_active_inert(f)
            assert compose(a, i) == f and is_active(a) and is_inert(i)
            # uniqueness: an inert map is injective, so it admits at most one lift
            # of f; collect every sub-interval whose lift exists and is active
            hits = []
            for k, start in product(range(n + 1), repeat=2):
                if start + k > n:
                    continue
                i2 = SimplexMap(tuple(range(start, start + k + 1)), n)
                if set(f.values) <= set(i2.values):
                    a2 = SimplexMap(tuple(i2.values.index(v) for v in f.values), k)
                    if is_active(a2):
                        hits.append((a2, i2))
            assert hits == [(a, i)]


def test_rho():
    assert rho(1, 3) == SimplexMap((0, 1), 3)
    assert rho(3, 3) == SimplexMap((2, 3), 3)
    with pytest.raises(ValueError):
        rho(2, 1)
    for n in range(1, 7):
        for i in range(1, n + 1):
            # rho(1, 1) is the identity, which classifies as both
            expected = MapClass.IDENTITY if n == 1 else MapClass.INERT
            assert is_inert(rho(i, n)) and classify(rho(i, n)) is expected


def test_cellular_examples():
    assert is_cellular(SimplexMap((0, 1, 1, 2), 2))
    assert not is_cellular(SimplexMap((0, 2), 2))
    for m in range(5):
        brute = [v for v in brute_maps(m, 2) if all(b - a <= 1 for a, b in zip(v, v[1:]))]
        assert [f.values for f in enumerate_maps(m, 2) if is_cellular(f)] == brute


def test_phi_cellular_against_identity():
    for m, n in product(range(5), repeat=2):
        for a in enumerate_maps(m, n):
            assert is_phi_cellular(a, SimplexMap.identity(n)) == is_cellular(a)


def test_phi_cellular_endpoints_accepts_everything():
    for n in range(4):
        phi = SimplexMap((0, n), n)
        for m in range(4):
            assert all(is_phi_cellular(a, phi) for a in enumerate_maps(m, n))


def test_phi_cellular_block_example():
    assert not is_phi_cellular(SimplexMap((0, 2), 2), SimplexMap((0, 1), 2))
    with pytest.raises(RankMismatch):
        is_phi_cellular(SimplexMap((0, 1), 1), SimplexMap((0, 1), 2))


def test_cellular_closed_under_inert_precomposition():
    for m, n in product(range(5), repeat=2):
        for f in enumerate_maps(m, n):
            if not is_cellular(f):
                continue
            for k in range(m + 1):
                for i in enumerate_maps(k, m):
                    if is_inert(i):
                        assert is_cellular(compose(i, f))


def test_enumerate_examples():
    assert [f.values for f in enumerate_maps(0, 1)] == [(0,), (1,)]
    assert len(enumerate_maps(1, 2)) == 6
    assert [f.values for f in enumerate_maps(2, 0)] == [(0, 0, 0)]


def test_enumerate_matches_brute_force_and_count():
    for m, n in product(range(5), repeat=2):
        maps = enumerate_maps(m, n)
        assert [f.values for f in maps] == brute_maps(m, n)     # lexicographic and complete
        assert len(maps) == count_maps(m, n) == comb(n + m + 1, m + 1)
        assert len(set(maps)) == len(maps)


def test_enumerate_respects_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_maps(6, 6, bound=10)


def test_cosimplicial_identities():
    for n in range(2, 6):
        for i in range(n + 1):
            for j in range(i + 1, n + 1):
                # d^j d^i = d^i d^{j-1} as maps [n-2] -> [n], written diagrammatically
                assert compose(face(i, n - 1), face(j, n)) == compose(face(j - 1, n - 1), face(i, n))
        for i in range(n + 1):
            assert compose(face(i, n + 1), degeneracy(i, n)) == SimplexMap.identity(n)
            assert compose(face(i + 1, n + 1), degeneracy(i, n)) == SimplexMap.identity(n)


def test_slice_category_small_cases():
    s0 = slice_category(0, max_rank=3)
    assert [f.values for f in s0.objects] == [(0,) * (m + 1) for m in range(4)]
    s1 = slice_category(1, cellular_only=True, max_rank=2)
    expect = [v for m in range(3) for v in brute_maps(m, 1)]
    assert [f.values for f in s1.objects] == expect
    assert s1.validate() == []


def test_slice_hom_counts_match_brute_force():
    s = slice_category(2, max_rank=2)
    for phi, psi in product(s.objects, repeat=2):
        brute = [d for d in brute_maps(psi.source_rank, phi.source_rank)
                 if tuple(phi.values[i] for i in d) == psi.values]
        assert len(s.hom(phi, psi)) == len(brute)
    assert s.validate() == []


def test_maps_up_to():
    assert len(maps_up_to(2, 1)) == sum(count_maps(m, 1) for m in range(3))
    assert all(is_cellular(f) for f in maps_up_to(3, 2, cellular_only=True))
