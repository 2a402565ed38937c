import pytest

from lienilp.catalog import (
    GroupSpec,
    build,
    build_named,
    cyclic_spec,
    family_spec,
    group_fingerprint,
    semidirect_product,
    spec_from_name,
    standard_corpus,
    sweep_klein_commutator,
)
from lienilp.groups import (
    derived_subgroup,
    exponent,
    is_cyclic,
    is_klein_four,
    lower_central_series,
    whole_subgroup,
)


def _gen(G, label):
    return G.labels.index(label)


def test_cyclic_builds():
    assert build(cyclic_spec(1)).order == 1
    C12 = build(cyclic_spec(12))
    assert C12.order == 12 and C12.element_order(_gen(C12, "g")) == 12
    with pytest.raises(ValueError):
        build(cyclic_spec(0))


def test_family_relations():
    for kind, n, e_expect, t_expect in (
        ("dihedral", 4, -1, 0),
        ("quaternion", 3, -1, 2),
        ("quaternion", 4, -1, 4),
        ("semidihedral", 4, 3, 0),
        ("modular", 4, 5, 0),
    ):
        G = build(family_spec(kind, n))
        half = 2 ** (n - 1)
        a, b = _gen(G, "a"), _gen(G, "b")
        assert G.order == 2**n
        assert G.power(a, half) == 0
        assert G.mul(b, b) == G.power(a, t_expect)
        assert G.conj(a, b) == G.power(a, e_expect % half)


def test_family_parameter_constraints():
    with pytest.raises(ValueError):
        build(family_spec("dihedral", 2))
    with pytest.raises(ValueError):
        build(family_spec("quaternion", 2))
    with pytest.raises(ValueError):
        build(family_spec("semidihedral", 3))
    with pytest.raises(ValueError):
        build(family_spec("modular", 3))


def test_family_derived_orders():
    for prefix, kind in (("D", "dihedral"), ("Q", "quaternion")):
        for n in (3, 4, 5):
            G = build(family_spec(kind, n))
            assert derived_subgroup(G).order == 2 ** (n - 2), (prefix, n)


def test_direct_products():
    G = build_named("C2xD8")
    assert G.order == 16
    assert derived_subgroup(G).order == 2
    H = build_named("C2xC2xC2")
    assert H.order == 8 and exponent(whole_subgroup(H)) == 2


def test_semidirect_trivial_action_is_direct_product():
    triv = tuple(range(8))
    G = semidirect_product(cyclic_spec(8), cyclic_spec(2), {1: triv})
    assert group_fingerprint(G) == group_fingerprint(build_named("C8xC2"))


def test_semidirect_inversion_gives_dihedral():
    invert = tuple((-i) % 8 for i in range(8))
    G = semidirect_product(cyclic_spec(8), cyclic_spec(2), {1: invert}, name="C8:C2")
    assert group_fingerprint(G) == group_fingerprint(build_named("D16"))
    assert [s.order for s in lower_central_series(G)] == [16, 4, 2, 1]


def test_semidirect_rejects_bad_actions():
    # not an automorphism: does not fix the identity
    swap = (1, 0, 2, 3)
    with pytest.raises(ValueError, match="automorphism"):
        semidirect_product(cyclic_spec(4), cyclic_spec(2), {1: swap})
    # automorphism of order 4 cannot define a C2 action
    order4 = tuple((2 * i) % 5 for i in range(5))
    with pytest.raises(ValueError, match="incompatible"):
        semidirect_product(cyclic_spec(5), cyclic_spec(2), {1: order4})
    # keys must generate the acting group
    with pytest.raises(ValueError, match="generate"):
        semidirect_product(cyclic_spec(4), cyclic_spec(4), {2: tuple(range(4))})


def test_extraspecial_27_groups():
    e3 = build_named("E27exp3")
    e9 = build_named("E27exp9")
    for G, expo in ((e3, 3), (e9, 9)):
        assert G.order == 27
        der = derived_subgroup(G)
        assert der.order == 3 and is_cyclic(der)
        assert exponent(whole_subgroup(G)) == expo


def test_heisenberg_mod4():
    G = build_named("HeisZ4")
    assert G.order == 64
    der = derived_subgroup(G)
    assert der.order == 4 and is_cyclic(der)
    assert [s.order for s in lower_central_series(G)] == [64, 4, 1]


def test_sweep_finds_witnesses_and_controls():
    records = sweep_klein_commutator(max_order=32)
    assert records, "sweep found nothing"
    assert len({r.fingerprint for r in records}) == len(records)
    witnesses = [r for r in records if r.gamma3_order > 1]
    controls = [r for r in records if r.gamma3_order == 1]
    assert witnesses and controls
    for rec in records:
        G = build(rec.spec)
        assert G.order <= 32
        der = derived_subgroup(G)
        assert is_klein_four(der)
        series = lower_central_series(G)
        gamma3 = series[2].order if len(series) > 2 else 1
        assert gamma3 == rec.gamma3_order


def test_spec_from_name_errors():
    with pytest.raises(ValueError):
        spec_from_name("D12")  # not a power of two
    with pytest.raises(ValueError):
        spec_from_name("SD8")  # family starts at order 16
    with pytest.raises(ValueError):
        spec_from_name("whatever")


def test_standard_corpus_contents():
    corpus = standard_corpus()
    keyed = {(e.spec.name, e.p): e for e in corpus}
    assert len(keyed) == len(corpus), "duplicate corpus keys"
    assert ("D8", 2) in keyed and keyed[("D8", 2)].expect_lie_nilpotent
    assert ("E27exp3", 3) in keyed
    assert ("S3", 2) in keyed and not keyed[("S3", 2)].expect_lie_nilpotent
    assert ("D8", 3) in keyed and not keyed[("D8", 3)].expect_lie_nilpotent
    assert any(name.startswith("SW") for name, _ in keyed)
    assert any(name.startswith("SC") for name, _ in keyed)
    # determinism
    again = standard_corpus()
    assert [(e.spec.name, e.p) for e in again] == [(e.spec.name, e.p) for e in corpus]


def test_fingerprint_separates_d16_and_q16():
    assert group_fingerprint(build_named("D16")) != group_fingerprint(build_named("Q16"))


def test_raw_table_kind():
    C3 = build_named("C3")
    spec = GroupSpec("raw_table", {"table": C3.table, "labels": C3.labels}, "copy")
    assert build(spec).order == 3
    with pytest.raises(ValueError):
        build(GroupSpec("mystery", {}, "nope"))
