import pytest

from lienilp.algebra import (
    BOUND_EXCEEDED,
    REACHED_ZERO,
    STABILIZED,
    build_algebra,
    dimension_subgroup_oracle,
    ideal_closure,
    is_ideal,
    lie_bracket,
    lower_lie_chain,
    upper_lie_chain,
)
from lienilp.catalog import build_named
from lienilp.fplin import FpSubspace, FpVector, contains, subspace_equal
from lienilp.groups import derived_subgroup, subgroup_closure


def _gen(G, label):
    return G.labels.index(label)


def test_build_algebra():
    C1 = build_named("C1")
    assert build_algebra(C1, 2).dim == 1
    D8 = build_named("D8")
    A = build_algebra(D8, 2)
    assert A.dim == 8
    with pytest.raises(ValueError):
        build_algebra(D8, 6)


def test_basis_multiplication_follows_table():
    D8 = build_named("D8")
    A = build_algebra(D8, 2)
    a, b = _gen(D8, "a"), _gen(D8, "b")
    prod = A.multiply(A.basis_vector(a), A.basis_vector(b))
    assert prod == A.basis_vector(D8.mul(a, b))


def test_lie_bracket_examples():
    D8 = build_named("D8")
    A = build_algebra(D8, 2)
    a, b = _gen(D8, "a"), _gen(D8, "b")
    x = A.basis_vector(a) + A.basis_vector(b)
    assert lie_bracket(A, x, x).is_zero()
    C6 = build_named("C6")
    B = build_algebra(C6, 2)
    assert lie_bracket(B, B.basis_vector(1), B.basis_vector(4)).is_zero()
    # char 2: [e_a, e_b] = e_{ab} + e_{a^-1 b}
    br = lie_bracket(A, A.basis_vector(a), A.basis_vector(b))
    expected = A.basis_vector(D8.mul(a, b)) + A.basis_vector(D8.mul(D8.inv(a), b))
    assert br == expected
    with pytest.raises(ValueError):
        lie_bracket(A, A.basis_vector(a), FpVector(2, (1, 0)))


def test_ideal_closure_examples():
    D8 = build_named("D8")
    A = build_algebra(D8, 2)
    zero = FpSubspace.empty(2, 8)
    assert ideal_closure(A, zero).dimension == 0
    unit = FpSubspace.span(2, 8, [A.one()])
    assert ideal_closure(A, unit).dimension == 8
    # F2 C2: span{1 + g} is already an ideal of dimension 1
    C2 = build_named("C2")
    B = build_algebra(C2, 2)
    S = FpSubspace.span(2, 2, [FpVector(2, (1, 1))])
    closed = ideal_closure(B, S)
    assert closed.dimension == 1 and subspace_equal(closed, S)


def test_lower_chain_examples():
    C9 = build_named("C9")
    chain = lower_lie_chain(build_algebra(C9, 3))
    assert chain.nilpotency_index == 2 and chain.status == REACHED_ZERO
    D8 = build_named("D8")
    assert lower_lie_chain(build_algebra(D8, 2)).nilpotency_index == 3
    Q8 = build_named("Q8")
    assert lower_lie_chain(build_algebra(Q8, 2)).nilpotency_index == 3


def test_upper_chain_examples():
    C6 = build_named("C6")
    assert upper_lie_chain(build_algebra(C6, 3)).nilpotency_index == 2
    D8 = build_named("D8")
    assert upper_lie_chain(build_algebra(D8, 2)).nilpotency_index == 3
    E27 = build_named("E27exp3")
    assert upper_lie_chain(build_algebra(E27, 3)).nilpotency_index == 4


def test_chain_terms_are_ideals_and_nested():
    for name, p in (("D16", 2), ("Q8", 2), ("E27exp3", 3)):
        G = build_named(name)
        A = build_algebra(G, p)
        lower = lower_lie_chain(A)
        upper = upper_lie_chain(A)
        bound = derived_subgroup(G).order + 1
        assert lower.nilpotency_index <= upper.nilpotency_index <= bound
        for term in lower.terms[1:] + upper.terms[1:]:
            assert is_ideal(A, term)
        # every lower power sits inside the matching upper power
        for m in range(1, len(lower.terms) + 1):
            low = lower.term(m)
            up = upper.term(m)
            assert all(contains(up, v) for v in low.basis)
        # chain dimensions drop strictly until zero
        for chain in (lower, upper):
            dims = [t.dimension for t in chain.terms]
            assert all(x > y for x, y in zip(dims, dims[1:]))


def test_seeding_from_group_elements_matches_ideal_seeding():
    # Re-bracketing the previous ideal's full basis (the upper chain) must
    # reproduce the bracket-span seeded chain on small instances.
    for name, p in (("D8", 2), ("Q8", 2)):
        G = build_named(name)
        A = build_algebra(G, p)
        lower = lower_lie_chain(A)
        upper = upper_lie_chain(A)
        assert len(lower.terms) == len(upper.terms)
        for lo, up in zip(lower.terms, upper.terms):
            assert subspace_equal(lo, up)


def test_non_nilpotent_chain_does_not_terminate():
    S3 = build_named("S3")
    A = build_algebra(S3, 2)
    chain = lower_lie_chain(A, max_steps=S3.order + 2)
    assert chain.nilpotency_index is None
    assert chain.status in (STABILIZED, BOUND_EXCEEDED)
    assert all(t.dimension > 0 for t in chain.terms)


def test_oracle_examples():
    D16 = build_named("D16")
    A = build_algebra(D16, 2)
    chain = upper_lie_chain(A)
    assert dimension_subgroup_oracle(A, 1, chain).is_whole()
    assert dimension_subgroup_oracle(A, 2, chain) == derived_subgroup(D16)
    a = _gen(D16, "a")
    third = dimension_subgroup_oracle(A, 3, chain)
    assert third == subgroup_closure(D16, [D16.power(a, 4)])
    assert third.order == 2
    # beyond the zero term the oracle collapses to the identity
    assert dimension_subgroup_oracle(A, 9, chain).is_trivial()
    with pytest.raises(ValueError):
        dimension_subgroup_oracle(A, 0, chain)


def test_oracle_terms_are_nested_normal_subgroups():
    for name, p in (("Q16", 2), ("E27exp9", 3), ("D8xC3", 2)):
        G = build_named(name)
        A = build_algebra(G, p)
        chain = upper_lie_chain(A)
        terms = [
            dimension_subgroup_oracle(A, m, chain)
            for m in range(1, chain.nilpotency_index + 1)
        ]
        assert terms[1] == derived_subgroup(G)
        for prev, nxt in zip(terms, terms[1:]):
            assert nxt.issubset(prev)
            assert nxt.is_normal()


def test_nilpotency_equivalence_on_controls():
    # chain reaches zero exactly when G is nilpotent with a p-group
    # derived subgroup
    cases = [
        ("D8", 2, True),
        ("D8", 3, False),
        ("S3", 2, False),
        ("S3", 3, False),
        ("C6", 5, True),
        ("D8xC3", 2, True),
    ]
    for name, p, expect in cases:
        G = build_named(name)
        chain = lower_lie_chain(build_algebra(G, p), max_steps=G.order + 2)
        reached = chain.nilpotency_index is not None
        assert reached == expect, (name, p)


def test_chain_memoized_on_algebra():
    D8 = build_named("D8")
    A = build_algebra(D8, 2)
    c1 = upper_lie_chain(A)
    c2 = upper_lie_chain(A)
    assert c1 is c2
