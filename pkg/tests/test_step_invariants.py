import pytest

from fenchel import (
    AbelianShape,
    HasTorsion,
    PerfectInput,
    Shape,
    affine_3step_check,
    affineness_equation,
    chen_ranks,
    derived_length_upto3,
    hyperbolic_3step_check,
    metabelian_torsion_free,
    sig,
    verify_perm_hom,
)
from fenchel.covers import image_group
from fenchel.groups import derived_length
from fenchel.step_invariants import ChenData, heisenberg_hom


def test_chen_ranks():
    assert chen_ranks(sig(0, 3)) == ChenData(2, 1, Shape.FREE)
    assert chen_ranks(sig(2, 0)) == ChenData(4, 5, Shape.SURFACE)
    with pytest.raises(HasTorsion):
        chen_ranks(sig(0, 0, 2, 2))
    with pytest.raises(AbelianShape):
        chen_ranks(sig(1, 0))
    with pytest.raises(AbelianShape):
        chen_ranks(sig(0, 2))


def test_affineness_equation():
    assert affineness_equation(ChenData(2, 1, Shape.FREE))
    assert not affineness_equation(ChenData(4, 5, Shape.SURFACE))
    assert affineness_equation(ChenData(5, 10, Shape.FREE))


def test_affine_3step():
    assert affine_3step_check(sig(0, 3, 2))
    assert not affine_3step_check(sig(1, 0, 2))
    assert not affine_3step_check(sig(0, 0, 2, 3, 7 * 2))


def test_metabelian_torsion():
    assert metabelian_torsion_free(sig(1, 0)).torsion_free
    check = metabelian_torsion_free(sig(1, 0, 2))
    assert not check
    assert "Heisenberg" in check.witness and check.hom is not None
    check = metabelian_torsion_free(sig(0, 1, 3))
    assert not check and "survives" in check.witness
    with pytest.raises(PerfectInput):
        metabelian_torsion_free(sig(0, 0, 2, 3, 5))


@pytest.mark.parametrize("l", [2, 3, 5])
def test_heisenberg_quotient_is_metabelian(l):
    s = sig(2, 0, l * 2)
    h = heisenberg_hom(s, 0, l)
    assert verify_perm_hom(h)
    group = image_group(h)
    assert len(group) == l ** 3
    assert derived_length(group, l ** 3) == 2
    # δ1 maps to an element of order exactly l
    d = h.delta[0]
    assert all(d[x] != x for x in range(l ** 3))


def test_derived_length_upto3():
    assert derived_length_upto3(sig(0, 0, 2, 3, 6)) == 2
    assert derived_length_upto3(sig(0, 0, 2, 3, 4)) == 3
    assert derived_length_upto3(sig(0, 0, 2, 2, 3)) == 2
    assert derived_length_upto3(sig(0, 0, 2, 3, 5)) == 0


def test_hyperbolic_3step():
    assert not hyperbolic_3step_check(sig(0, 0, 2, 3, 4))
    assert hyperbolic_3step_check(sig(0, 0, 2, 4, 5))
    assert not hyperbolic_3step_check(sig(0, 0, 3, 3, 3))
    with pytest.raises(PerfectInput):
        hyperbolic_3step_check(sig(0, 0, 2, 3, 7))


def test_sigma_family_separates_at_two():
    def sigma(n):
        return sig(0, 0, 2, 2 ** n, 3)
    assert derived_length_upto3(sigma(1)) == 2
    assert derived_length_upto3(sigma(2)) == 3
    assert not hyperbolic_3step_check(sigma(1))
    assert not hyperbolic_3step_check(sigma(2))
    for n in range(3, 7):
        assert hyperbolic_3step_check(sigma(n))
