from collections import Counter

import pytest

from factorlab.axb import axb_fragment, axb_is_S_primitive, zq_star_check
from factorlab.catalog import iter_instances
from factorlab.modules import regular_module
from factorlab.rings import build_gf, build_zmod
from factorlab.satsets import all_satsets, saturate, units_satset
from factorlab.split import (NotDomain, analyze_subset, check_splitting_equiv_domain,
                             split_checks, star_condition)


def test_field_splits_trivially():
    G = build_gf(4)
    v = analyze_subset(regular_module(G), units_satset(G))
    assert v.splits and v.factorable


def test_z6_verdict_is_decided():
    R = build_zmod(6)
    v = analyze_subset(regular_module(R), saturate(R, [2]))
    assert v.flags == {"compactly_atomic": True, "semi_factorable": True, "factorable": True,
                       "splits": True}


def test_subset_restriction():
    R = build_zmod(6)
    M = regular_module(R)
    S = saturate(R, [2])
    assert analyze_subset(M, S, [0]).splits
    assert analyze_subset(M, S, [3]).compactly_atomic


@pytest.fixture(scope="module")
def split_statuses():
    c = Counter()
    for inst in iter_instances(6, 6):
        for rep in split_checks(inst):
            c[(rep.theorem, rep.status)] += 1
    return c


def test_no_violations(split_statuses):
    assert not [k for k in split_statuses if k[1] == "VIOLATION"]


@pytest.mark.parametrize("thm", ["prop_semi_elem", "thm_SX", "cor_split_pre", "prop_M_split"])
def test_non_vacuous(split_statuses, thm):
    assert split_statuses[(thm, "holds")] > 0


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8])
def test_splitting_iff_star_on_fields(q):
    G = build_gf(q) if q in (4, 8) else build_zmod(q)
    for S in all_satsets(G):
        assert all(r.status != "VIOLATION" for r in check_splitting_equiv_domain(G, S))


def test_not_domain():
    with pytest.raises(NotDomain):
        check_splitting_equiv_domain(build_zmod(6), units_satset(build_zmod(6)))


def test_star_on_axb_fragment():
    F = axb_fragment(2, 4, 4)
    R = F.ring
    prim = [f for f in R.elements if f != R.zero and axb_is_S_primitive(F, f)]
    assert len(prim) == 256
    assert all(star_condition(R, F.satX, f)[0] for f in prim)
    # X itself is in S, not primitive, and fails the condition against t = X
    assert not star_condition(R, F.satX, F.X)[0]


def test_zq_star_witness():
    res = zq_star_check([2], [0, 1], [0, 1])
    assert res["star_violated"]
    assert not res["r_S_primitive"]
