import dataclasses
import json

import pytest

from fenchel import (
    CoverChain,
    NegativeParameter,
    NotAffine,
    PerfectInput,
    TrivialInput,
    certify_chain,
    cusp_growth_chain,
    euler_characteristic,
    fn_chain,
    m_delta_upper_bound,
    sig,
)
from fenchel.errors import ZeroOneObstruction
from fenchel.fenchel_nielsen import CUSP_DOUBLING, MOD_N, PRIME_CHARACTER, TORSION_KERNEL


def kinds(chain):
    return [st.kind for st in chain.steps]


def test_branch_a():
    chain = fn_chain(sig(0, 3, 2))
    assert kinds(chain) == [TORSION_KERNEL]
    assert chain.final_signature == sig(0, 5)
    assert chain.total_index == 2 and chain.quotient_derived_length == 1
    assert certify_chain(chain)


def test_branch_b():
    chain = fn_chain(sig(1, 0, 2))
    assert kinds(chain) == [MOD_N, TORSION_KERNEL]
    assert chain.steps[0].params == (2,)
    assert [st.signature for st in chain.steps] == [sig(1, 0, 2, 2, 2, 2), sig(9, 0)]
    assert chain.total_index == 32 and chain.quotient_derived_length == 2
    assert certify_chain(chain)


def test_branch_c():
    # Δ^(1) of S4 is A4 = (0,0;{2,3,3}), which fails abelian-period, so (c) is skipped;
    # (0,0;{2,4,6}) has Δ^(1) = (0,0;{2,2,3,3}), which satisfies it
    chain = fn_chain(sig(0, 0, 2, 4, 6))
    assert kinds(chain) == [TORSION_KERNEL, TORSION_KERNEL]
    assert certify_chain(chain)


def test_branch_d_example():
    chain = fn_chain(sig(0, 0, 5, 6, 14))
    assert kinds(chain) == [PRIME_CHARACTER, TORSION_KERNEL, TORSION_KERNEL]
    assert chain.steps[0].params[0] == 2
    assert chain.quotient_derived_length == 3
    assert not chain.final_signature.periods
    assert certify_chain(chain)


def test_errors():
    with pytest.raises(PerfectInput):
        fn_chain(sig(0, 0, 2, 3, 5))
    with pytest.raises(TrivialInput):
        fn_chain(sig(0, 0, 2, 3))


def test_torsion_free_input_gives_empty_chain():
    chain = fn_chain(sig(2, 0))
    assert chain.steps == () and chain.total_index == 1
    assert certify_chain(chain)


def test_tampered_genus_is_caught():
    chain = fn_chain(sig(0, 3, 2))
    st = chain.steps[0]
    bad_sig = dataclasses.replace(st.result.subgroup_signature, genus=1)
    bad = dataclasses.replace(chain, steps=(dataclasses.replace(
        st, result=dataclasses.replace(st.result, subgroup_signature=bad_sig)),))
    report = certify_chain(bad)
    assert not report
    assert any("Riemann" in p for p in report.problems)


def test_leftover_period_is_caught():
    chain = fn_chain(sig(1, 0, 2))
    truncated = dataclasses.replace(chain, steps=chain.steps[:1], total_index=4,
                                    quotient_derived_length=1)
    report = certify_chain(truncated)
    assert not report
    assert any("still has periods" in p for p in report.problems)


def test_chain_roundtrip_recertifies():
    for s in (sig(0, 0, 5, 6, 14), sig(1, 0, 2), sig(0, 1, 2, 3, 7)):
        chain = fn_chain(s)
        doc = json.loads(json.dumps(chain.to_dict()))
        again = CoverChain.from_dict(doc)
        assert again == chain
        assert certify_chain(again)


def test_cusp_growth_examples():
    chain = cusp_growth_chain(sig(0, 3, 2), 8)
    assert [st.signature for st in chain.steps] == [sig(0, 5), sig(0, 8)]
    assert chain.steps[1].kind == CUSP_DOUBLING and chain.steps[1].params == (2,)
    assert certify_chain(chain)
    chain = cusp_growth_chain(sig(0, 1, 2, 2, 2), 3)
    assert len(chain.steps) == 1 and chain.final_signature.cusps == 4
    with pytest.raises(NotAffine):
        cusp_growth_chain(sig(2, 0, 3), 5)
    with pytest.raises(NegativeParameter):
        cusp_growth_chain(sig(0, 3, 2), 0)


def test_cusp_growth_is_monotone():
    for s in (sig(0, 3), sig(1, 1), sig(0, 2, 3), sig(0, 1, 2, 3, 7), sig(2, 2, 4)):
        for r0 in (1, 2, 5, 17, 40):
            chain = cusp_growth_chain(s, r0)
            cusps = [s.cusps] + [st.signature.cusps for st in chain.steps]
            assert chain.final_signature.cusps >= r0
            assert not chain.final_signature.periods
            for st in chain.steps:
                if st.kind == CUSP_DOUBLING:
                    assert st.signature.cusps > st.source.cusps
            assert certify_chain(chain), cusps


def test_zero_one_obstruction():
    with pytest.raises(ZeroOneObstruction):
        cusp_growth_chain(sig(0, 1, 2, 3, 7), 10 ** 9, index_limit=10 ** 4)


def test_m_delta_upper_bound():
    assert m_delta_upper_bound(sig(3, 0)) == 0
    assert m_delta_upper_bound(sig(0, 3, 2)) == 1
    assert m_delta_upper_bound(sig(0, 0, 2, 3, 4)) == 3


def test_huge_chain_still_certifies():
    # the last torsion kernel here has far too many periods to write a hom for
    s = sig(0, 0, 5, 9, 10, 11)
    chain = fn_chain(s)
    assert chain.quotient_derived_length == 3
    assert chain.steps[-1].hom is None
    assert certify_chain(chain)
    final = chain.final_signature
    assert euler_characteristic(final) == chain.total_index * euler_characteristic(s)
