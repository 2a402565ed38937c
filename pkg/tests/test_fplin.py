import random

import pytest

from lienilp.fplin import (
    FpSubspace,
    FpVector,
    contains,
    echelon_insert,
    is_prime,
    subspace_equal,
)


def test_prime_validation():
    assert is_prime(2) and is_prime(3) and is_prime(97)
    assert not is_prime(1) and not is_prime(4) and not is_prime(91)
    with pytest.raises(ValueError):
        FpVector(6, (1, 2))
    with pytest.raises(ValueError):
        FpSubspace.empty(9, 4)


def test_vector_reduction_and_ops():
    v = FpVector(3, (4, -1, 0))
    assert v.to_tuple() == (1, 2, 0)
    w = FpVector(3, (2, 2, 1))
    assert (v + w).to_tuple() == (0, 1, 1)
    assert (v - w).to_tuple() == (2, 0, 2)
    assert (-w).to_tuple() == (1, 1, 2)
    assert v.scale(2).to_tuple() == (2, 1, 0)
    assert FpVector.zero(3, 3).is_zero()
    with pytest.raises(ValueError):
        v + FpVector(3, (1, 1))
    with pytest.raises(ValueError):
        v + FpVector(5, (1, 1, 1))


def test_insert_zero_vector_unchanged():
    S = FpSubspace.span(2, 3, [FpVector(2, (1, 1, 0))])
    S2, grew = echelon_insert(S, FpVector.zero(2, 3))
    assert not grew and subspace_equal(S, S2)


def test_insert_into_empty():
    S, grew = echelon_insert(FpSubspace.empty(2, 3), FpVector(2, (0, 1, 1)))
    assert grew and S.dimension == 1 and S.pivot_columns == (1,)


def test_f2_insert_example():
    S = FpSubspace.span(2, 3, [FpVector(2, (1, 1, 0))])
    S2, grew = echelon_insert(S, FpVector(2, (0, 1, 1)))
    assert grew
    assert S2.dimension == 2
    assert S2.pivot_columns == (0, 1)
    # reduced form clears column 1 of the first row
    assert [v.to_tuple() for v in S2.basis] == [(1, 0, 1), (0, 1, 1)]


def test_contains_examples():
    S = FpSubspace.span(2, 3, [FpVector(2, (1, 1, 0))])
    assert contains(S, FpVector.zero(2, 3))
    assert contains(S, FpVector(2, (1, 1, 0)))
    assert not contains(S, FpVector(2, (1, 0, 0)))
    with pytest.raises(ValueError):
        contains(S, FpVector(2, (1, 0)))
    with pytest.raises(ValueError):
        contains(S, FpVector(3, (1, 0, 0)))


def test_subspace_equality_examples():
    A = FpSubspace.span(2, 2, [FpVector(2, (1, 0)), FpVector(2, (0, 1))])
    B = FpSubspace.span(2, 2, [FpVector(2, (1, 1)), FpVector(2, (0, 1))])
    assert subspace_equal(A, B)
    C = FpSubspace.span(2, 2, [FpVector(2, (1, 0))])
    D = FpSubspace.span(2, 2, [FpVector(2, (0, 1))])
    assert not subspace_equal(C, D)
    with pytest.raises(ValueError):
        subspace_equal(A, FpSubspace.empty(2, 3))


def test_insert_never_decreases_and_reproduces():
    rng = random.Random(9001)
    for p in (2, 3, 5):
        n = 10
        vecs = [FpVector(p, [rng.randrange(p) for _ in range(n)]) for _ in range(14)]
        S = FpSubspace.span(p, n, vecs)
        rebuilt = FpSubspace.span(p, n, S.basis)
        assert subspace_equal(S, rebuilt)
        for v in vecs:
            S2, _ = echelon_insert(S, v)
            assert S2.dimension >= S.dimension
            assert subspace_equal(S, S2)


def test_canonical_form_independent_of_insertion_order():
    rng = random.Random(515)
    for p in (2, 3, 5):
        n = 12
        vecs = [FpVector(p, [rng.randrange(p) for _ in range(n)]) for _ in range(8)]
        base = FpSubspace.span(p, n, vecs)
        for _ in range(5):
            shuffled = vecs[:]
            rng.shuffle(shuffled)
            assert subspace_equal(base, FpSubspace.span(p, n, shuffled))


def test_contains_iff_no_growth_randomized():
    rng = random.Random(77)
    for p in (2, 3, 5):
        for n in (6, 17, 64):
            vecs = [
                FpVector(p, [rng.randrange(p) for _ in range(n)]) for _ in range(n // 2)
            ]
            S = FpSubspace.span(p, n, vecs)
            for _ in range(25):
                v = FpVector(p, [rng.randrange(p) for _ in range(n)])
                _, grew = echelon_insert(S, v)
                assert contains(S, v) == (not grew)


def test_full_space():
    F = FpSubspace.full(3, 5)
    assert F.dimension == 5
    assert contains(F, FpVector(3, (1, 2, 0, 1, 2)))
