import pytest

from fenchel import (
    IdentityCover,
    NegativeParameter,
    Status,
    WrongShape,
    commutator_signature_01,
    derived_tower,
    euler_characteristic,
    m_derived_perfect,
    s4_uniqueness_scan,
    sig,
    torsion_kernel_signature,
)
from fenchel.covers import induced_signature_abelian
from fenchel.runs import RunTuple
from fenchel.tower import (
    EXPLICIT_DIMENSION_LIMIT,
    has_s4_fingerprint,
    inertia_orders,
    s4_fingerprint,
    torsion_kernel_closed_form,
    torsion_quotient_dimension,
    torsion_quotient_hom,
)


def test_torsion_kernel_examples():
    res = torsion_kernel_signature(sig(0, 0, 2, 3, 4))
    assert res.subgroup_signature == sig(0, 0, 2, 3, 3) and res.index == 2
    res = torsion_kernel_signature(sig(0, 3, 2))
    assert res.subgroup_signature == sig(0, 5) and res.index == 2
    with pytest.raises(IdentityCover):
        torsion_kernel_signature(sig(2, 0))


@pytest.mark.parametrize("s,expected,index", [
    (sig(0, 1, 2, 2), sig(0, 2), 4),
    (sig(0, 1, 5), sig(0, 1), 5),
    (sig(0, 1, 2, 3, 7), sig(22, 1), 42),
])
def test_commutator_01(s, expected, index):
    res = commutator_signature_01(s)
    assert res.subgroup_signature == expected
    assert res.index == index
    assert res == torsion_kernel_signature(s)


def test_commutator_01_wrong_shape():
    with pytest.raises(WrongShape):
        commutator_signature_01(sig(0, 2, 3))


def test_s4_tower():
    tower = derived_tower(sig(0, 0, 2, 3, 4), 4)
    assert [st.signature for st in tower.steps] == [sig(0, 0, 2, 3, 3), sig(0, 0, 2, 2, 2), sig(0, 0)]
    assert tower.quotient_orders == [2, 3, 4]
    assert tower.status is Status.TORSION_FREE
    assert s4_fingerprint(tower)


def test_example_tower_two_stages():
    tower = derived_tower(sig(0, 0, 5, 6, 14), 2)
    assert tower.signatures[1:] == [sig(0, 0, 5, 5, 3, 7), sig(0, 0, *([3] * 5 + [7] * 5))]
    assert tower.quotient_orders == [2, 5]


def test_perfect_tower_is_immediate():
    tower = derived_tower(sig(0, 0, 2, 3, 5), 5)
    assert tower.steps == () and tower.status is Status.PERFECT


def test_m_derived_perfect():
    assert m_derived_perfect(sig(0, 0, 2, 3, 5), 0) is True
    assert m_derived_perfect(sig(0, 0, 2, 3, 4), 2) is False
    assert m_derived_perfect(sig(0, 0, 2, 3, 4), 3) is True
    assert m_derived_perfect(sig(0, 3, 2), 5) is False
    with pytest.raises(NegativeParameter):
        m_derived_perfect(sig(0, 3, 2), -1)


def test_s4_uniqueness():
    assert s4_uniqueness_scan(60) == [sig(0, 0, 2, 3, 4)]
    assert s4_uniqueness_scan(24) == [sig(0, 0, 2, 3, 4)]
    assert s4_uniqueness_scan(23) == []


def test_fingerprint_shortcut_agrees_with_tower():
    for s in (sig(0, 0, 2, 3, 4), sig(0, 0, 2, 3, 3), sig(0, 0, 2, 4, 5), sig(0, 0, 2, 2, 2)):
        assert has_s4_fingerprint(s) == s4_fingerprint(derived_tower(s, 4))


@pytest.mark.parametrize("s", [
    sig(0, 0, 2, 4, 6), sig(0, 0, 6, 10, 15), sig(1, 0, 4, 6), sig(0, 2, 3, 9),
    sig(2, 0, 2, 2, 3), sig(0, 0, 4, 4, 4, 4), sig(0, 1, 2, 3, 4, 6),
])
def test_closed_form_matches_explicit_hom(s):
    assert torsion_quotient_dimension(s) <= EXPLICIT_DIMENSION_LIMIT
    explicit = induced_signature_abelian(s, torsion_quotient_hom(s))
    assert torsion_kernel_closed_form(s) == explicit


def test_inertia_orders_divide_periods():
    s = sig(0, 0, 4, 6, 9)
    for n, o in zip(s.periods, inertia_orders(s)):
        assert n % o == 0


def test_closed_form_on_run_length_periods():
    # 5000 copies of 2 plus one 3: stored run-length encoded
    s = sig(0, 0, *([2] * 5000 + [3, 3]))
    assert isinstance(s.periods, RunTuple)
    res = torsion_kernel_closed_form(s)
    assert euler_characteristic(res.subgroup_signature) == res.index * euler_characteristic(s)
    assert res.subgroup_signature.genus >= 0
