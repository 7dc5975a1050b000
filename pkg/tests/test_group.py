import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cpd.catalog import catalog
from cpd.errors import CapExceeded, NotNormal
from cpd.group import FiniteGroup
from cpd.lattice import (frattini, is_complemented, is_supersolvable, lattice, maximal_classes,
                         minimal_normal_subgroups, o_pprime, subgroups_up_to_conjugacy)
from cpd.modrep import semidirect_parts

from conftest import all_subgroups_oracle, cyclic, elementary_abelian_2, table_closure


def _find(g, predicate):
    return next(x for x in range(g.order) if predicate(x))


def _perm_index(g, img):
    return g.labels.index(tuple(img))


# -- closure and canonical ordering -----------------------------------------


def test_closure_empty_is_trivial(a7):
    h = a7.closure([])
    assert h.order == 1 and h.members == (0,)


def test_closure_of_seven_cycle(a7):
    x = _find(a7, lambda i: a7.element_orders[i] == 7)
    assert a7.closure([x]).order == 7


def test_psl27_generators_close_to_168(psl27):
    q = 7
    assert psl27.order == q * (q * q - 1) // math.gcd(2, q - 1)
    assert psl27.closure(list(psl27.generators)).order == 168


def test_identity_is_index_zero(psl27):
    assert psl27.labels[0] == tuple(range(8))
    assert np.array_equal(psl27.mul[0], np.arange(168))
    assert all(psl27.mul[x, psl27.inv[x]] == 0 for x in range(168))


def test_element_order_is_deterministic():
    a = catalog("PSL(2,11)").group
    b = catalog("PSL(2,11)").group
    assert a.labels == b.labels
    assert np.array_equal(a.mul, b.mul)


def test_cayley_table_is_associative_on_sample(psl27):
    rng = np.random.default_rng(0)
    m = psl27.mul.astype(np.int64)
    for _ in range(200):
        a, b, c = rng.integers(0, 168, 3)
        assert m[m[a, b], c] == m[a, m[b, c]]


def test_element_cap(a7):
    gens = [list(a7.labels[x]) for x in a7.generators]
    with pytest.raises(CapExceeded):
        FiniteGroup.from_permutations(7, gens, cap=100)


# -- quotient, normality -------------------------------------------------------


def test_quotient_by_whole_is_trivial(a4):
    assert a4.quotient(a4.whole).order == 1


def test_a4_mod_v4(a4):
    v4 = next(h for h in subgroups_up_to_conjugacy(a4) if h.order == 4)
    q = a4.quotient(v4)
    assert q.order == 3


def test_semidirect_mod_translations_is_c3(g48):
    _, v = semidirect_parts(g48)
    q = g48.quotient(v)
    assert q.order == 3
    # cyclic of order 3: some element has order 3 and its powers are everything
    assert sorted(q.element_orders.tolist()) == [1, 3, 3]
    x = int(np.argmax(q.element_orders))
    assert q.closure([x]).order == 3


def test_quotient_requires_normal(a4):
    h = a4.closure([_find(a4, lambda i: a4.element_orders[i] == 3)])
    with pytest.raises(NotNormal):
        a4.quotient(h)


def test_normality_examples(a4):
    assert a4.is_normal(a4.trivial)
    c3 = a4.closure([_perm_index(a4, [1, 2, 0, 3])])
    assert not a4.is_normal(c3)
    # four Sylow 3-subgroups by enumeration
    sylow3 = {a4.closure([x]).key for x in range(12) if a4.element_orders[x] == 3}
    assert len(sylow3) == 4


def test_normal_closure_of_double_transposition(a4):
    h = a4.closure([_perm_index(a4, [1, 0, 3, 2])])
    n = a4.normal_closure(h)
    assert n.order == 4
    assert all(a4.element_orders[x] <= 2 for x in n.members)


def test_conjugate_preserves_order(psl27):
    h = psl27.closure([3, 5])
    for x in range(0, 168, 17):
        assert psl27.conjugate(h, x).order == h.order


# -- lattice -------------------------------------------------------------------


LATTICE_GROUPS = {
    "C2^3": lambda: elementary_abelian_2(3),
    "D8": lambda: catalog("D8").group,
    "A4": lambda: catalog("A4").group,
    "S4": lambda: catalog("S4").group,
    "SL(2,3)": lambda: catalog("SL(2,3)").group,
}


@pytest.mark.parametrize("name", sorted(LATTICE_GROUPS))
def test_lattice_complete_against_two_generated_joins(name):
    g = LATTICE_GROUPS[name]()
    oracle = all_subgroups_oracle(g)
    lat = lattice(g)
    ours = {frozenset(int(x) for x in row) for cls in lat.classes for row in cls.rows}
    assert ours == oracle
    # one representative per class: reps pairwise non-conjugate
    keys = [cls.rep.key for cls in lat.classes]
    assert len(set(keys)) == len(keys)


def test_known_lattice_sizes():
    sizes = {"A4": (5, 10), "S4": (11, 30), "D8": (8, 10), "A5": (9, 59), "PSL(2,7)": (15, 179)}
    for name, (classes, total) in sizes.items():
        lat = lattice(catalog(name).group)
        assert len(lat.classes) == classes, name
        assert sum(c.size for c in lat.classes) == total, name


def test_a4_has_no_subgroup_of_order_6(a4):
    assert subgroups_up_to_conjugacy(a4, orders=[6]) == []
    closures = {table_closure(a4.mul, [a, b]) for a in range(12) for b in range(12)}
    assert not any(len(c) == 6 for c in closures)


def test_psl27_order_8_single_class(psl27):
    reps = subgroups_up_to_conjugacy(psl27, order_filter=lambda o: o == 8)
    assert len(reps) == 1


def test_order_one_single_class(psl27):
    reps = subgroups_up_to_conjugacy(psl27, order_filter=lambda o: o == 1)
    assert [h.order for h in reps] == [1]


def test_lattice_cap():
    with pytest.raises(CapExceeded):
        lattice(catalog("M11").group)


def test_a7_restricted_lattice(a7):
    reps = subgroups_up_to_conjugacy(a7, orders=[360])
    assert [h.order for h in reps if h.order == 360] == [360]


# -- complements ---------------------------------------------------------------


def test_trivial_subgroup_complemented_by_whole(a4):
    res = is_complemented(a4.trivial, a4)
    assert res.complemented and res.witness.order == 12


def test_a4_double_transposition_not_complemented(a4):
    h = a4.closure([_perm_index(a4, [1, 0, 3, 2])])
    assert not is_complemented(h, a4).complemented
    assert not is_complemented(h, a4, fast=False).complemented


def test_a7_sylow7_complemented_by_point_stabilizer(a7):
    x = _find(a7, lambda i: a7.element_orders[i] == 7)
    h = a7.closure([x])
    res = is_complemented(h, a7)
    assert res.complemented
    k = res.witness
    assert k.order == 360
    assert len(set(h.members) & set(k.members)) == 1


def _complement_product_size(g, h, k):
    return len({int(g.mul[a, b]) for a in h.members for b in k.members})


def test_complement_order_identity(psl27):
    for cls in lattice(psl27).classes:
        res = is_complemented(cls.rep, psl27)
        if res.complemented and 1 < cls.order < 168:
            assert _complement_product_size(psl27, cls.rep, res.witness) == 168


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=167), st.integers(min_value=0, max_value=14))
def test_conjugation_invariance(x, k):
    g = catalog("PSL(2,7)").group
    cls = lattice(g).classes[k]
    a = is_complemented(cls.rep, g).complemented
    b = is_complemented(g.conjugate(cls.rep, x), g).complemented
    assert a == b


# -- Frattini, O_p', minimal normal, supersolvable -------------------------------


def test_frattini_examples(a4):
    assert frattini(cyclic(4)).order == 2
    assert frattini(a4).order == 1
    assert frattini(elementary_abelian_2(3)).order == 1


def test_frattini_inside_every_maximal(psl27):
    phi = set(frattini(psl27).members)
    for m in maximal_classes(psl27):
        for row in m.rows:
            assert phi <= set(int(v) for v in row)


def test_o_pprime_examples(psl27, g48):
    assert o_pprime(psl27, 2).order == 1
    assert o_pprime(g48, 2).order == 1
    c6 = cyclic(6)
    assert o_pprime(c6, 2).order == 3


def test_o_pprime_by_enumeration(g48):
    # oracle: join of every normal subgroup of odd order
    lat = lattice(g48)
    odd_normal = [c for c in lat.classes if c.size == 1 and c.order % 2]
    assert max(c.order for c in odd_normal) == 1


def test_minimal_normal_subgroups(psl27, g48):
    assert [n.order for n in minimal_normal_subgroups(psl27)] == [168]
    mins = minimal_normal_subgroups(g48)
    assert len(mins) == 5 == (2**4 - 1) // (2**2 - 1)
    assert all(n.order == 4 for n in mins)
    assert [n.order for n in minimal_normal_subgroups(elementary_abelian_2(2))] == [2, 2, 2]


def test_supersolvable_examples(a4):
    assert is_supersolvable(catalog("S3").group)
    assert not is_supersolvable(a4)
    # A4 has maximal subgroups of index 3 (V4) and 4 (the C3's)
    assert sorted({12 // m.order for m in maximal_classes(a4)}) == [3, 4]
    assert is_supersolvable(catalog("D8").group)
    assert is_supersolvable(elementary_abelian_2(3))


# -- random permutation groups --------------------------------------------------


perms = st.permutations(list(range(5)))


@settings(max_examples=25, deadline=None)
@given(st.lists(perms, min_size=1, max_size=2))
def test_random_groups_lattice_invariants(gens):
    g = FiniteGroup.from_permutations(5, [list(p) for p in gens])
    lat = lattice(g)
    total = sum(c.size for c in lat.classes)
    # class sizes are indices of normalizers
    for c in lat.classes:
        assert c.size * c.normalizer_order == g.order
        assert g.order % c.order == 0
    # Frattini sits inside every maximal subgroup; the whole group is the last class
    assert lat.classes[-1].order == g.order
    assert total >= 2 or g.order == 1
