import pytest

from factorlab.modules import (ModuleError, all_ideals, ann_of_scalar, ann_of_subset,
                               is_submodule, module_from_json, product_module, quotient_module,
                               regular_module, submodule_generated, zero_divisors, zmod_over)
from factorlab.rings import build_zmod


def test_ann_of_z3_over_z6():
    M = zmod_over(build_zmod(6), 3)
    assert M.annihilator == {0, 3}
    assert ann_of_subset(M, M.elements) == {0, 3}


def test_ann_of_scalar():
    assert ann_of_scalar(regular_module(build_zmod(6)), 2) == {0, 3}


def test_zero_divisors():
    R = build_zmod(6)
    assert regular_module(R).zero_divisor_set == {0, 2, 3, 4}
    assert zero_divisors(zmod_over(build_zmod(4), 2)) == {0, 2}
    assert zero_divisors(regular_module(build_zmod(4)), [2]) == {0, 2}


def test_quotient_size():
    M = regular_module(build_zmod(6))
    assert quotient_module(M, [0, 3]).size == 3
    with pytest.raises(ModuleError):
        quotient_module(M, [0, 1])


def test_submodules():
    M = regular_module(build_zmod(4))
    assert submodule_generated(M, [2]) == {0, 2}
    assert is_submodule(M, [0, 2]) and not is_submodule(M, [0, 1])
    assert len(all_ideals(build_zmod(4))) == 3


def test_product_module():
    R = build_zmod(6)
    P = product_module(zmod_over(R, 2), zmod_over(R, 3))
    assert P.size == 6
    assert P.annihilator == {0}


def test_zmod_over_requires_divisor():
    with pytest.raises(ModuleError):
        zmod_over(build_zmod(6), 4)


def test_json_round_trip():
    R = build_zmod(6)
    M = quotient_module(product_module(regular_module(R), zmod_over(R, 2)), [0])
    M2 = module_from_json(R, M.to_json())
    assert (M2.act == M.act).all() and (M2.add == M.add).all()
