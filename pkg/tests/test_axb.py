import pytest

from factorlab.axb import (HeightOverflow, axb_checks, axb_compact_factor, axb_fragment,
                           axb_is_S_primitive, axb_nonbfd_witness, check_ex_main,
                           check_ex_splits, check_fragment_invariants, zq_factorization_valid,
                           zq_mul)
from factorlab.factor import Factorization


@pytest.fixture(scope="module")
def F():
    return axb_fragment(2, 4, 4)


def test_fragment_shape(F):
    assert F.ring.size == 2 * 4 ** 4
    assert F.satX.members >= {F.X}
    assert F.X not in F.ring.units


def test_constant_term_in_subfield(F):
    for f in F.ring.elements:
        assert F.decode(f)[0] in F.A


def test_invariants(F):
    assert all(check_fragment_invariants(F).values())


def test_primitive_iff_nonzero_constant(F):
    for f in F.ring.elements:
        if f != F.ring.zero:
            assert axb_is_S_primitive(F, f) == (F.decode(f)[0] != 0)


def test_compact_factor_recomputes(F):
    for f in [F.X, F.encode([1, 1]), F.encode([0, 0, 2, 1])]:
        s, n = axb_compact_factor(F, f)
        assert int(F.ring.mul[s, n]) == f
        assert s in F.satX.members and axb_is_S_primitive(F, n)


@pytest.mark.parametrize("pair", [(2, 4), (2, 8), (3, 9)])
def test_finite_pairs_split(pair):
    res = check_ex_splits(pair, 3 if pair != (3, 9) else 2)
    assert res["condition_1"] and res["condition_2"] and res["condition_3"]
    assert res["S_splits_R"]


def test_equal_fields_are_ufd():
    res = check_ex_main(2, 2, 4)
    assert res["unit_index"] == 1 and res["flags"]["UFM"]


def test_zq_witness_height():
    with pytest.raises(HeightOverflow):
        axb_nonbfd_witness(5, height=16)
    with pytest.raises(ValueError):
        axb_nonbfd_witness(0)


def test_zq_bad_factorization():
    from fractions import Fraction
    fac = axb_nonbfd_witness(3)
    bogus = Factorization(fac.target, (2, 1, 2), fac.tail, "zq")
    assert not zq_factorization_valid(bogus)
    assert zq_mul((Fraction(2),), (Fraction(0), Fraction(1, 2))) == (Fraction(0), Fraction(1))


def test_axb_checks_hold():
    reports = axb_checks(3, 2)
    assert {r.theorem for r in reports} == {"thm_ex_splits", "thm_ex_main", "axb_compact",
                                            "axb_invariants", "cor_laurent"}
    assert all(r.status == "holds" for r in reports)
