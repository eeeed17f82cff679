"""Property tests: closed forms against brute-force oracles on random signatures."""
import math
from fractions import Fraction

from hypothesis import assume, given, settings
from hypothesis import strategies as st

from fenchel import (
    CoverChain,
    FiniteAbelianGroup,
    Signature,
    abelian_period_condition,
    abelianization,
    certify_chain,
    classify_curvature,
    enumerate_abelian_homs,
    enumerate_perm_homs,
    euler_characteristic,
    fn_chain,
    induced_signature,
    induced_signature_abelian,
    invariants_report,
    is_perfect,
    is_trivial_group,
    metabelian_torsion_free,
    normalize_signature,
    regular_action,
    torsion_kernel_signature,
    torsion_subgroup_order,
)
from fenchel.covers import is_surjective, iter_abelian_homs
from fenchel.signature import CurvatureClass, inertia_order_in_abelianization
from fenchel.tower import torsion_quotient_hom

periods = st.lists(st.integers(2, 12), max_size=4)


@st.composite
def signatures(draw, g_max=2, r_max=3):
    return normalize_signature(draw(st.integers(0, g_max)), draw(st.integers(0, r_max)), draw(periods))


@given(st.integers(0, 3), st.integers(0, 3), st.lists(st.integers(1, 12), max_size=5))
def test_normalization_is_canonical(g, r, ns):
    s = normalize_signature(g, r, ns)
    assert s == normalize_signature(g, r, list(reversed(ns)))
    assert 1 not in s.periods and list(s.periods) == sorted(s.periods)
    assert normalize_signature(s.genus, s.cusps, s.periods) == s
    assert Signature.from_dict(s.to_dict()) == s


@given(signatures())
def test_euler_and_curvature(s):
    chi = euler_characteristic(s)
    assert chi == 2 - 2 * s.genus - s.cusps - sum((1 - Fraction(1, n) for n in s.periods), Fraction(0))
    cls = classify_curvature(s)
    assert (cls is CurvatureClass.HYPERBOLIC) == (chi < 0)
    assert (cls is CurvatureClass.PARABOLIC) == (chi == 0)


@given(signatures())
def test_report_identity(s):
    rep = invariants_report(s)
    assert rep.euler == 2 - rep.rank_tf - rep.epsilon - sum((1 - Fraction(1, n) for n in s.periods), Fraction(0))


@given(signatures())
def test_torsion_order_closed_form(s):
    assert abelianization(s).torsion_order == torsion_subgroup_order(s)


@given(signatures())
def test_perfect_iff_trivial_abelianization(s):
    assert is_perfect(s) == abelianization(s).is_trivial


@given(signatures(r_max=0))
def test_abelian_period_condition_via_inertia(s):
    full = all(inertia_order_in_abelianization(s, i) == n for i, n in enumerate(s.periods))
    assert abelian_period_condition(s) == full


@given(st.lists(st.integers(1, 100), min_size=1, max_size=6))
def test_gcd_lcm_identities(ns):
    from fenchel.signature import gcd_subset_products, lcm_gcd_identity
    a, b = gcd_subset_products(ns)
    assert a == b
    a, b = lcm_gcd_identity(ns)
    assert a == b


def _brute_gcd_products(ns):
    # independent oracle: direct products over index pairs and subsets
    from itertools import combinations
    left = math.prod(math.gcd(a, b) for a, b in combinations(ns, 2))
    right = 1
    for size in range(1, len(ns)):
        right *= math.gcd(*(math.prod(c) for c in combinations(ns, size)))
    return left, right


@given(st.lists(st.integers(1, 30), min_size=1, max_size=5))
def test_gcd_identity_against_oracle(ns):
    from fenchel.signature import gcd_subset_products
    assert gcd_subset_products(ns) == _brute_gcd_products(ns)


@settings(max_examples=60, deadline=None)
@given(signatures(g_max=1, r_max=2), st.sampled_from([(2,), (3,), (4,), (2, 2), (6,), (2, 4)]), st.data())
def test_abelian_formula_matches_coset_action(s, moduli, data):
    homs = enumerate_abelian_homs(s, FiniteAbelianGroup(moduli), True)
    assume(homs)
    h = data.draw(st.sampled_from(homs))
    by_formula = induced_signature_abelian(s, h)
    by_action = induced_signature(s, regular_action(h))
    assert by_formula == by_action
    sub = by_formula.subgroup_signature
    assert sub.genus >= 0
    assert euler_characteristic(sub) == by_formula.index * euler_characteristic(s)


@settings(max_examples=80, deadline=None)
@given(signatures())
def test_torsion_kernel_is_normal_cover(s):
    assume(s.periods and torsion_subgroup_order(s) > 1)
    res = torsion_kernel_signature(s)
    assert res.index == torsion_subgroup_order(s)
    assert euler_characteristic(res.subgroup_signature) == res.index * euler_characteristic(s)
    # kernel is torsion-free exactly under the abelian-period condition (or with cusps)
    torsion_free = not res.subgroup_signature.periods
    assert torsion_free == (s.cusps >= 1 or abelian_period_condition(s))


@settings(max_examples=30, deadline=None)
@given(st.builds(normalize_signature, st.integers(0, 1), st.integers(0, 1),
                 st.lists(st.integers(2, 12), max_size=3)))
def test_cusps_appear_only_with_cusps(s):
    for d in (2, 3):
        for h in enumerate_perm_homs(s, d):
            has = bool(induced_signature(s, h).subgroup_signature.cusps)
            assert has == bool(s.cusps)


PERFECT = [normalize_signature(0, 0, ns) for ns in
           [(2, 3, 5), (2, 3, 7), (3, 5, 7), (2, 5, 7), (2, 3, 5, 7), (5, 7, 11)]]


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(PERFECT))
def test_perfect_groups_have_no_abelian_quotient(s):
    assert is_perfect(s)
    for moduli in [(2,), (3,), (5,), (2, 2)]:
        assert enumerate_abelian_homs(s, FiniteAbelianGroup(moduli), True) == []


@settings(max_examples=30, deadline=None)
@given(signatures(g_max=0, r_max=1))
def test_enumeration_order_is_lexicographic(s):
    flats = [h.flat() for h in enumerate_abelian_homs(s, FiniteAbelianGroup((2, 2)))]
    assert flats == sorted(flats)
    assert len(flats) == sum(1 for _ in iter_abelian_homs(s, FiniteAbelianGroup((2, 2))))
    perms = [tuple(x for p in h.images() for x in p) for h in enumerate_perm_homs(s, 3)]
    assert perms == sorted(perms)


@settings(max_examples=80, deadline=None)
@given(signatures())
def test_fn_chain_certifies_and_roundtrips(s):
    assume(not is_perfect(s) and not is_trivial_group(s))
    chain = fn_chain(s)
    assert certify_chain(chain)
    assert chain.quotient_derived_length <= 3
    assert CoverChain.from_dict(chain.to_dict()) == chain


@settings(max_examples=60, deadline=None)
@given(signatures())
def test_metabelian_torsion_iff_periods(s):
    assume(not is_perfect(s) and not is_trivial_group(s))
    check = metabelian_torsion_free(s)
    assert check.torsion_free == (not s.periods)
    if not check.torsion_free:
        assert check.witness


@settings(max_examples=40, deadline=None)
@given(signatures(g_max=1, r_max=0))
def test_explicit_quotient_hom_is_surjective_and_canonical(s):
    assume(s.periods and torsion_subgroup_order(s) > 1)
    h = torsion_quotient_hom(s)
    assert is_surjective(h)
    assert h.target.order == torsion_subgroup_order(s)
    for i, n in enumerate(s.periods):
        assert h.target.element_order(h.delta[i]) == inertia_order_in_abelianization(s, i)
