"""Sylow and Hall subgroups, and subgroups of a given p-power order."""

from __future__ import annotations

import random

import numpy as np

from .group import LATTICE_CAP, FiniteGroup, SubgroupHandle, handle, key_of
from .lattice import SubgroupClass, lattice, make_class, subgroup_classes
from .numtheory import PrimePower, p_part

__all__ = [
    "p_part",
    "sylow_p",
    "subgroups_of_order_pd",
    "subgroup_classes_of_order_pd",
    "hall_pprime_complement",
    "is_elementary_abelian",
    "is_p_element",
]


def is_p_element(g: FiniteGroup, x: int, p: int) -> bool:
    return p_part(int(g.element_orders[x]), p).value == g.element_orders[x]


def sylow_p(g: FiniteGroup, p: int, seed: int | None = None) -> SubgroupHandle:
    """A Sylow p-subgroup, grown one factor of p at a time.

    P starts trivial; while |P| < |G|_p some p-element of N_G(P) lies outside
    P, and a suitable power of it extends P by exactly p. ``seed`` shuffles
    the choice of extending element (None: smallest index).
    """
    target = p_part(g.order, p).value
    rng = random.Random(seed) if seed is not None else None
    orders = g.element_orders
    pel = np.array([p_part(int(o), p).value == o for o in orders])
    members = np.array([0], dtype=np.int64)
    gens: list[int] = []
    while members.size < target:
        pmask = g.mask(members)
        nmask = g.normalizer_mask(members, gens) if gens else np.ones(g.order, bool)
        cand = np.nonzero(nmask & ~pmask & pel)[0]
        x = int(cand[0]) if rng is None else int(rng.choice(cand.tolist()))
        # raise x to a power whose image in N/P has order exactly p
        while not pmask[g.power(x, p)]:
            x = g.power(x, p)
        gens.append(x)
        members = g.closure_array(gens)
    return handle(members, gens)


def subgroup_classes_of_order_pd(g: FiniteGroup, pp: PrimePower,
                                 cap: int = LATTICE_CAP) -> list[SubgroupClass]:
    """G-classes of subgroups of order p^d, found inside one Sylow p-subgroup
    and then fused under G-conjugacy."""
    if pp.value == 1:
        return [make_class(g, np.array([0]), [])]
    if g.order % pp.value:
        return []
    sylow = sylow_p(g, pp.p)
    sgroup = g.subgroup_as_group(sylow)
    emb = sgroup.info["embedding"]
    local = lattice(sgroup, orders=[pp.value], cap=cap)
    fused: dict[bytes, SubgroupClass] = {}
    out = []
    for cls in local.of_order(pp.value):
        members = np.sort(emb[cls.rep.array.astype(np.int64)])
        if key_of(members) in fused:
            continue
        gens = [int(emb[x]) for x in cls.rep.generators]
        gcls = make_class(g, members, gens)
        for row in gcls.rows:
            fused[key_of(row)] = gcls
        out.append(gcls)
    out.sort(key=lambda c: c.rep.members)
    return out


def subgroups_of_order_pd(g: FiniteGroup, pp: PrimePower, cap: int = LATTICE_CAP) -> list[SubgroupHandle]:
    return [c.rep for c in subgroup_classes_of_order_pd(g, pp, cap)]


def hall_pprime_complement(g: FiniteGroup, p: int, cap: int = LATTICE_CAP) -> SubgroupHandle | None:
    """A subgroup of order |G|/|G|_p, or None when none exists."""
    target = g.order // p_part(g.order, p).value
    if target == 1:
        return g.trivial
    classes = [c for c in subgroup_classes(g, orders=[target], cap=cap) if c.order == target]
    return classes[0].rep if classes else None


def is_elementary_abelian(g: FiniteGroup, h: SubgroupHandle, p: int) -> bool:
    if h.order == 1:
        return True
    orders = g.element_orders[h.array.astype(np.int64)]
    return bool(np.all(orders[1:] == p)) and g.is_abelian(h)
