import pytest

from factorlab.rings import build_gf, build_zmod
from factorlab.satsets import (SatSet, SatSetError, all_satsets, is_satset, saturate,
                               units_satset, whole_ring)


def test_saturate_z6():
    R = build_zmod(6)
    assert saturate(R, [2]).members == {1, 2, 4, 5}
    assert saturate(R, [3]).members == {1, 3, 5}
    assert saturate(R, []).members == R.units


def test_counts():
    assert len(all_satsets(build_gf(4))) == 2
    assert len(all_satsets(build_zmod(4))) == 2


def test_not_saturated():
    R = build_zmod(6)
    assert not is_satset(R, [1, 2])
    with pytest.raises(SatSetError):
        SatSet.from_members(R, [1, 2])


def test_zero_means_whole_ring():
    R = build_zmod(6)
    assert SatSet.from_members(R, [0, 1, 5]).is_whole_ring
    assert saturate(R, [0]) == whole_ring(R)


@pytest.mark.parametrize("n", range(2, 13))
def test_every_satset_is_saturated(n):
    R = build_zmod(n)
    sats = all_satsets(R)
    assert units_satset(R) in sats and whole_ring(R) in sats
    for S in sats:
        assert is_satset(R, S.members)
        assert saturate(R, S.members) == S
