import pytest

from factorlab.catalog import iter_instances
from factorlab.localization import (CollapsedToZero, NotNested, induce_T, localize_module,
                                    localize_ring)
from factorlab.modules import regular_module, zmod_over
from factorlab.rings import build_zmod, find_isomorphism
from factorlab.satsets import saturate, units_satset, whole_ring


def test_z6_at_two_is_z3():
    R = build_zmod(6)
    LR = localize_ring(R, saturate(R, [2]))
    assert find_isomorphism(LR.ring, build_zmod(3)) is not None
    assert not LR.is_injective()


@pytest.mark.parametrize("n", [4, 6, 8, 12])
def test_units_give_iso_copy(n):
    R = build_zmod(n)
    LR = localize_ring(R, units_satset(R))
    assert LR.is_injective() and LR.ring.size == n
    assert find_isomorphism(LR.ring, R) is not None


def test_localize_module():
    R = build_zmod(6)
    S = saturate(R, [2])
    assert localize_module(regular_module(R), S).module.size == 3
    LM = localize_module(zmod_over(R, 3), S)
    assert LM.module.size == 3 and LM.is_injective()


def test_map_is_ring_hom():
    R = build_zmod(12)
    LR = localize_ring(R, saturate(R, [3]))
    L = LR.ring
    for a in R.elements:
        for b in R.elements:
            assert LR.map_to(int(R.mul[a, b])) == L.mul[LR.map_to(a), LR.map_to(b)]
            assert LR.map_to(int(R.add[a, b])) == L.add[LR.map_to(a), LR.map_to(b)]


def test_fractions_of_S_are_units():
    R = build_zmod(12)
    S = saturate(R, [2])
    LR = localize_ring(R, S)
    for s in S.members:
        assert LR.map_to(s) in LR.ring.units


def test_T_extremes():
    R = build_zmod(6)
    S = saturate(R, [2])
    LR = localize_ring(R, S)
    assert induce_T(LR, S, S).members == LR.ring.units
    assert induce_T(LR, S, whole_ring(R)).members == set(LR.ring.elements)


def test_errors():
    R = build_zmod(6)
    with pytest.raises(CollapsedToZero):
        localize_ring(R, whole_ring(R))
    LR = localize_ring(R, saturate(R, [2]))
    with pytest.raises(NotNested):
        induce_T(LR, saturate(R, [2]), saturate(R, [3]))


def test_annihilated_module_collapses():
    R = build_zmod(6)
    with pytest.raises(CollapsedToZero):
        localize_module(zmod_over(R, 2), saturate(R, [2]))


def test_module_map_injective_iff_S_misses_ZM():
    for inst in iter_instances(8, 8, with_prime=False):
        if inst.S.is_whole_ring:
            continue
        try:
            LM = localize_module(inst.module, inst.S)
        except CollapsedToZero:
            assert not inst.S_misses_ZM
            continue
        assert LM.is_injective() == inst.S_misses_ZM
