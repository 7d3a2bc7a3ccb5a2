"""Randomized invariants over small catalog objects."""
import json

from hypothesis import given, settings
from hypothesis import strategies as st

from factorlab.catalog import module_catalog, ring_catalog
from factorlab.factor import (classify, compact_factorizations, enumerate_factorizations,
                              is_primitive, relations)
from factorlab.localization import CollapsedToZero, induce_T, localize_ring
from factorlab.report import canonical_json
from factorlab.rings import build_zmod
from factorlab.satsets import all_satsets, is_satset, saturate

RINGS = ring_catalog(12)
ring_st = st.sampled_from(RINGS)


@st.composite
def ring_and_gens(draw):
    R = draw(ring_st)
    gens = draw(st.lists(st.integers(0, R.size - 1), max_size=3))
    return R, gens


@st.composite
def instance(draw, max_module=8):
    R = draw(st.sampled_from(ring_catalog(8)))
    M = draw(st.sampled_from(module_catalog(R, max_module)))
    S = draw(st.sampled_from(all_satsets(R)))
    return M, S


@given(ring_and_gens())
def test_saturate_is_least_satset(rg):
    R, gens = rg
    S = saturate(R, gens)
    assert is_satset(R, S.members)
    assert set(gens) <= S.members
    assert saturate(R, S.members) == S
    for T in all_satsets(R):
        if set(gens) <= T.members:
            assert S.members <= T.members


@given(st.integers(2, 30), st.data())
def test_localization_is_hom_and_inverts_S(n, data):
    R = build_zmod(n)
    S = saturate(R, data.draw(st.lists(st.integers(1, n - 1), max_size=2)))
    try:
        LR = localize_ring(R, S)
    except CollapsedToZero:
        assert R.zero in S.members
        return
    L = LR.ring
    a, b = data.draw(st.integers(0, n - 1)), data.draw(st.integers(0, n - 1))
    assert LR.map_to(int(R.mul[a, b])) == L.mul[LR.map_to(a), LR.map_to(b)]
    assert LR.map_to(int(R.add[a, b])) == L.add[LR.map_to(a), LR.map_to(b)]
    assert all(LR.map_to(s) in L.units for s in S.members)


@settings(deadline=None)
@given(instance(), st.sampled_from(["all", "atomic"]))
def test_factorizations_recompute(inst, mode):
    M, S = inst
    for m in M.nonzero:
        enum = enumerate_factorizations(M, S, m, mode, max_len=6)
        for f in enum.factorizations:
            assert f.recompute(M) == m
            assert all(s in S.members and s not in M.ring.units for s in f.scalars)
            if mode == "atomic":
                assert is_primitive(M, S, f.tail)


@settings(deadline=None)
@given(instance())
def test_compact_tails_primitive(inst):
    M, S = inst
    for m in M.nonzero:
        for s, n in compact_factorizations(M, S, m):
            assert s in S.members and int(M.act[s, n]) == m
            assert is_primitive(M, S, n)


@settings(deadline=None)
@given(instance())
def test_relations_are_equivalences(inst):
    M, S = inst
    rel = relations(M, S).rel
    for r in rel[:2]:
        assert (r == r.T).all()
        assert r.diagonal().all()
        assert ((r.astype(int) @ r.astype(int) > 0) <= r).all()
    # very strong is not reflexive: s*m = m with s a nonunit breaks m with m
    assert (rel[2] <= rel[1]).all()


@settings(deadline=None)
@given(instance())
def test_flag_order(inst):
    M, S = inst
    f = classify(M, S).flags
    assert not f["UFM"] or (f["FFM"] and f["HFM"])
    assert not f["BFM"] or f["presimplifiable"]
    assert not (f["FFM"] or f["HFM"]) or f["atomic"]


@settings(deadline=None)
@given(st.sampled_from(ring_catalog(8)), st.data())
def test_T_contains_image_of_S_prime(R, data):
    sats = [S for S in all_satsets(R) if not S.is_whole_ring]
    S = data.draw(st.sampled_from(sats))
    Sp = data.draw(st.sampled_from([T for T in all_satsets(R) if S.members <= T.members]))
    LR = localize_ring(R, S)
    T = induce_T(LR, S, Sp)
    assert {LR.map_to(s) for s in Sp.members} <= T.members
    assert LR.ring.units <= T.members


@given(st.recursive(st.one_of(st.integers(), st.text(), st.booleans(), st.none()),
                    lambda c: st.one_of(st.lists(c), st.dictionaries(st.text(), c)),
                    max_leaves=10))
def test_canonical_json_round_trip(obj):
    text = canonical_json(obj)
    assert json.loads(text) == obj
    assert canonical_json(json.loads(text)) == text
