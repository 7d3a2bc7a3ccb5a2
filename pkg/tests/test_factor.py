import pytest

from oracles import Oracle, RingOracle
from factorlab.catalog import iter_instances, module_catalog, ring_catalog
from factorlab.factor import (AssocKind, Factorization, IrrKind, PrimKind, UnitInput, associates,
                              classify, compact_factorizations, enumerate_factorizations,
                              factorizations_up_to_iso, is_irreducible, is_presimplifiable,
                              is_primitive, pair_name)
from factorlab.modules import regular_module
from factorlab.rings import build_gf, build_zmod
from factorlab.satsets import all_satsets, saturate, units_satset, whole_ring


@pytest.fixture
def z6():
    R = build_zmod(6)
    return regular_module(R), saturate(R, [2])


def test_associates_z6(z6):
    M, S = z6
    assert associates(M, S, 2, 4, AssocKind.ASSOC)
    assert not associates(M, S, 2, 4, AssocKind.VERY_STRONG)
    assert associates(M, S, 3, 3, AssocKind.ASSOC)


def test_primitivity_z6(z6):
    M, S = z6
    assert is_primitive(M, S, 3, PrimKind.VERY_STRONGLY)
    assert not is_primitive(M, S, 2, PrimKind.PRIMITIVE)


def test_zero_primitive_iff_S_misses_zero_divisors():
    R = build_zmod(6)
    M = regular_module(R)
    assert is_primitive(M, units_satset(R), 0)
    # 0 = 2*3 with 3 not associate to 0
    assert not is_primitive(M, saturate(R, [2]), 0)


def test_irreducible():
    R6 = build_zmod(6)
    assert is_irreducible(R6, 2)
    with pytest.raises(UnitInput):
        is_irreducible(R6, 1)
    R4 = build_zmod(4)
    assert is_irreducible(R4, 2, IrrKind.VERY_STRONGLY) == RingOracle(R4).irreducible(2, 2)


def test_presimplifiable_witness(z6):
    M, S = z6
    ok, (s, m) = is_presimplifiable(M, S)
    assert not ok
    assert s not in M.ring.units and m != 0 and M.act[s, m] == m
    R = build_zmod(6)
    assert is_presimplifiable(M, units_satset(R))[0]


def test_unbounded_cycle(z6):
    M, S = z6
    enum = enumerate_factorizations(M, S, 4, "all")
    assert enum.status == "unbounded"
    assert set(enum.cycle) == {2, 4}
    rep = classify(M, S)
    assert not rep.flags["BFM"]


def test_primitive_atomic_has_trivial_factorization(z6):
    M, S = z6
    facs = enumerate_factorizations(M, S, 3, "atomic").factorizations
    assert Factorization(3, (), 3, "atomic") in facs


def test_compact_includes_four_one(z6):
    M, S = z6
    assert (4, 1) in compact_factorizations(M, S, 4)


def test_iso_classes_permutation(z6):
    M, S = z6
    a = Factorization(2, (2, 4), 2)
    b = Factorization(2, (4, 2), 2)
    assert len(factorizations_up_to_iso([a, b], M, S)) == 1


def test_field_is_ufm():
    G = build_gf(4)
    for S in all_satsets(G):
        assert classify(regular_module(G), S).flags["UFM"]


def test_truncation_is_explicit():
    R = build_zmod(8)
    M, S = regular_module(R), whole_ring(R)
    enum = enumerate_factorizations(M, S, 4, "all", max_len=1)
    assert enum.status in ("truncated", "unbounded", "complete")
    assert all(f.length <= 1 for f in enum.factorizations)
    assert all(f.recompute(M) == 4 for f in enum.factorizations)


def test_pair_names():
    assert pair_name(IrrKind.IRREDUCIBLE, PrimKind.PRIMITIVE) == "atomic(irreducible,primitive)"


@pytest.mark.parametrize("inst", list(iter_instances(6, 6, with_prime=False)), ids=lambda i: i.id)
def test_flags_match_oracle(inst):
    o = Oracle(inst.module, inst.S)
    rep = classify(inst.module, inst.S)
    for k, v in o.flags().items():
        assert rep.flags[k] == v, k
    for (a, b), v in o.pair_flags().items():
        assert rep.flags[pair_name(list(IrrKind)[a], list(PrimKind)[b])] == v


def test_relations_match_oracle():
    for R in ring_catalog(6):
        for M in module_catalog(R, 6):
            for S in all_satsets(R):
                o = Oracle(M, S)
                for m in M.elements:
                    for n in M.elements:
                        for lvl, kind in enumerate(AssocKind):
                            assert associates(M, S, m, n, kind) == o.rel(lvl)(m, n)
