import math

import numpy as np
import pytest

from cpd.catalog import c3_on_c4xc4, catalog, heisenberg_c2, q8_module
from cpd.classifier import (BOUNDARY, DEGENERATE, HOMOGENEOUS_CYCLIC, NCP, NOT_MEMBER,
                            SUPERSOLVABLE, VACUOUS, brute_force_cpd, classify,
                            corollary_c_necessary, theorem_a_classify, theorem_b_classify)
from cpd.errors import CapExceeded, HypothesisViolated
from cpd.modrep import (HModule, diagonal_module, direct_sum, homogeneous_sum, semidirect_group,
                        singer_module)
from cpd.numtheory import p_part

from conftest import all_subgroups_oracle, cyclic, elementary_abelian_2


def naive_cpd(g, p, d):
    """Every subgroup of order p^d meets some subgroup of complementary order trivially."""
    subs = all_subgroups_oracle(g)
    q = p**d
    if p_part(g.order, p).value < q:
        return True
    tops = [s for s in subs if len(s) == q]
    bottoms = [s for s in subs if len(s) == g.order // q]
    return all(any(len(h & k) == 1 for k in bottoms) for h in tops)


ORACLE_GROUPS = {
    "S3": lambda: catalog("S3").group,
    "A4": lambda: catalog("A4").group,
    "D8": lambda: catalog("D8").group,
    "S4": lambda: catalog("S4").group,
    "SL(2,3)": lambda: catalog("SL(2,3)").group,
    "C6": lambda: cyclic(6),
    "C4": lambda: cyclic(4),
    "C2^3": lambda: elementary_abelian_2(3),
    "C7:C3": lambda: semidirect_group(diagonal_module(7, [[2]])),
    "C3:C2": lambda: semidirect_group(HModule(3, [[[2]]])),
}


@pytest.mark.parametrize("name", sorted(ORACLE_GROUPS))
def test_brute_force_against_naive_search(name):
    g = ORACLE_GROUPS[name]()
    for p in (2, 3, 5, 7):
        if g.order % p:
            continue
        for d in range(1, p_part(g.order, p).d + 1):
            v = brute_force_cpd(g, p, d)
            assert v.is_cpd == naive_cpd(g, p, d), (name, p, d)
            for rep, comp in v.complement_table:
                if comp is not None:
                    assert comp.order * rep.order == g.order
                    assert len(set(comp.members) & set(rep.members)) == 1


def test_a4_refuted_with_witness(a4):
    v = brute_force_cpd(a4, 2, 1)
    assert not v.is_cpd and v.nontrivial and not v.member
    assert v.uncomplemented_witness.order == 2
    assert brute_force_cpd(a4, 2, 1, fast=False).is_cpd is False


def test_vacuous_instance(psl27):
    v = brute_force_cpd(psl27, 2, 4)
    assert v.is_cpd and not v.nontrivial and not v.member
    assert classify(psl27, 2, 4).case == VACUOUS


def test_brute_cap(a7):
    with pytest.raises(CapExceeded):
        brute_force_cpd(a7, 7, 1, cap=1000)


# -- module criterion ----------------------------------------------------------------


def test_order_48_homogeneous_cyclic(g48):
    m = homogeneous_sum(singer_module(2, 2, 3), 2)
    r = theorem_b_classify(m, 2)
    assert (r.case, r.member, r.e, r.t, r.n) == (HOMOGENEOUS_CYCLIC, True, 2, 2, 4)
    assert brute_force_cpd(g48, 2, 2).member
    for d in (1, 3):
        assert theorem_b_classify(m, d).case == NOT_MEMBER
        assert not brute_force_cpd(g48, 2, d).member


def test_supersolvable_case():
    m = diagonal_module(5, [[2, 3]])
    r = theorem_b_classify(m, 1)
    assert r.case == SUPERSOLVABLE and r.member
    assert brute_force_cpd(semidirect_group(m), 5, 1).member


@pytest.mark.parametrize("build,d,reason", [
    (lambda: direct_sum(singer_module(2, 2, 3), singer_module(2, 3, 7)), 2, "not homogeneous"),
    (q8_module, 1, "not cyclic"),
    (lambda: homogeneous_sum(singer_module(2, 3, 7), 2), 2, "does not divide"),
])
def test_module_non_members(build, d, reason):
    m = build()
    r = theorem_b_classify(m, d)
    assert r.case == NOT_MEMBER and reason in r.reason
    assert not brute_force_cpd(semidirect_group(m), m.p, d).member


def test_module_hypotheses():
    m = singer_module(2, 2, 3)
    with pytest.raises(HypothesisViolated):
        theorem_b_classify(m, 2)
    with pytest.raises(HypothesisViolated):
        theorem_b_classify(m, 0)
    z = singer_module(3, 2, 8)
    with pytest.raises(HypothesisViolated):
        theorem_b_classify(HModule(3, [[[2]]], group_generators=z.generators), 1)


def test_boundary_routed_directly(g12):
    r = classify(g12, 2, 2)
    assert r.case == BOUNDARY and r.member
    assert brute_force_cpd(g12, 2, 2).member


@pytest.mark.parametrize("t", [1, 2, 3])
def test_gcd_condition_tracks_brute_force(t):
    m = homogeneous_sum(singer_module(2, 2, 3), t)
    g = semidirect_group(m)
    for d in range(1, m.n):
        expected = math.gcd(d, m.n) % 2 == 0
        assert theorem_b_classify(m, d).member == expected
        assert brute_force_cpd(g, 2, d).member == expected


# -- O_p'-trivial criterion -------------------------------------------------------------


def test_ncp_case_for_elementary_abelian():
    g = elementary_abelian_2(4)
    for d in (1, 2):
        r = theorem_a_classify(g, 2, d)
        assert r.case == NCP and r.member
        assert brute_force_cpd(g, 2, d).member


def test_theorem_a_order_48(g48):
    r = theorem_a_classify(g48, 2, 2)
    assert (r.case, r.e, r.t) == (HOMOGENEOUS_CYCLIC, 2, 2)
    r1 = theorem_a_classify(g48, 2, 1)
    assert r1.case == NOT_MEMBER and "does not divide 1" in r1.reason


def test_theorem_a_a4(a4):
    r = theorem_a_classify(a4, 2, 1)
    assert r.case == NOT_MEMBER and not r.data["ncp"]


def test_theorem_a_hypotheses(psl27):
    with pytest.raises(HypothesisViolated):
        theorem_a_classify(psl27, 2, 2)  # |G|_2 = 8 < 16
    with pytest.raises(HypothesisViolated):
        theorem_a_classify(cyclic(12), 2, 1)  # O_2' = C3
    with pytest.raises(HypothesisViolated):
        theorem_a_classify(psl27, 7, 1)


def test_theorem_a_non_normal_sylow():
    s4 = catalog("S4").group
    r = theorem_a_classify(s4, 2, 1)
    assert r.case == NOT_MEMBER
    assert r.member == brute_force_cpd(s4, 2, 1).member


# -- necessary condition on the Frattini quotient ----------------------------------------


def test_corollary_degenerate_when_d_le_s():
    g = c3_on_c4xc4()
    for d in (1, 2):
        r = corollary_c_necessary(g, 2, d)
        assert r.case == DEGENERATE and r.s == 2 and r.member is None and not r.applicable


def test_corollary_refutes_and_brute_agrees():
    g = c3_on_c4xc4()
    r = corollary_c_necessary(g, 2, 3)
    assert r.case == NOT_MEMBER and r.member is False
    assert not brute_force_cpd(g, 2, 3).member


def test_corollary_supersolvable_pass():
    g = heisenberg_c2()
    r = corollary_c_necessary(g, 3, 2)
    assert r.case == SUPERSOLVABLE and r.member is None and r.data["passes"]
    assert r.s == 1


@pytest.mark.parametrize("build", [
    lambda: homogeneous_sum(singer_module(2, 2, 3), 2),
    lambda: homogeneous_sum(singer_module(2, 3, 7), 2),
    lambda: direct_sum(singer_module(2, 2, 3), singer_module(2, 3, 7)),
    lambda: diagonal_module(5, [[2, 3]]),
    lambda: homogeneous_sum(singer_module(3, 2, 8), 2),
])
def test_corollary_with_trivial_frattini_matches_module_criterion(build):
    m = build()
    g = semidirect_group(m)
    for d in range(1, m.n):
        r = corollary_c_necessary(g, m.p, d)
        b = theorem_b_classify(m, d)
        assert r.s == 0
        assert r.case == b.case
        assert r.data["passes"] == bool(b.member)


def test_corollary_needs_normal_sylow(a4):
    with pytest.raises(HypothesisViolated):
        corollary_c_necessary(catalog("S4").group, 2, 1)


# -- catalog --------------------------------------------------------------------


@pytest.mark.parametrize("name", ["PSL(2,7)", "PSL(3,2)"])
def test_psl27_membership_is_complete(name):
    entry = catalog(name)
    g = entry.group
    for p in (2, 3, 7):
        for d in range(1, p_part(g.order, p).d + 1):
            assert brute_force_cpd(g, p, d).member == ((p, d) in entry.members), (p, d)


def test_psl2_11_member_at_11():
    g = catalog("PSL(2,11)").group
    assert brute_force_cpd(g, 11, 1).member
    assert not brute_force_cpd(g, 5, 1).member


def test_classify_routes(a4, g48):
    assert classify(g48, 2, 2).method == "TheoremB"
    assert classify(a4, 2, 1).method == "TheoremA"
    m = singer_module(3, 2, 8)
    g = semidirect_group(m)
    # a prime other than the module's characteristic falls back to the other criterion
    with pytest.raises(HypothesisViolated):
        classify(g, 2, 1)


@pytest.mark.slow
def test_m11_with_raised_cap():
    g = catalog("M11").group
    assert brute_force_cpd(g, 11, 1, cap=8000).member
    assert not brute_force_cpd(g, 5, 1, cap=8000).member


def test_inverse_twist_of_order_three_singer_is_homogeneous():
    # over F_2 the inverse of an order-3 Singer element is its Frobenius conjugate
    s = singer_module(2, 2, 3)
    twist = HModule(2, [np.linalg.matrix_power(s.generators[0], 2) % 2])
    m = direct_sum(s, twist)
    r = theorem_b_classify(m, 2)
    assert (r.case, r.e, r.t) == (HOMOGENEOUS_CYCLIC, 2, 2)
    assert brute_force_cpd(semidirect_group(m), 2, 2).member
