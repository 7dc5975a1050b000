"""Named corpora for the cross-validation suite.

Each item is a lazily built group together with the (p, d) instances to run
on it. Semidirect items also carry their module so the module criterion can
be compared against exhaustive search.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from . import catalog as cat
from .group import FiniteGroup
from .modrep import (HModule, diagonal_module, direct_sum, homogeneous_sum, semidirect_group,
                     singer_module, _matpow)
from .numtheory import divisors, multiplicative_order, p_part, prime_divisors


@dataclass
class CorpusItem:
    name: str
    build: Callable[[], FiniteGroup]
    instances: list[tuple[int, int]]
    module: Callable[[], HModule] | None = None
    # (p, d) pairs asserted as members by the simple-group classification
    expected: dict[tuple[int, int], bool] = field(default_factory=dict)


def singer_parameters(p: int, max_e: int = 3) -> list[tuple[int, int]]:
    """All (e, m) with m | p^e - 1 and ord_m(p) = e."""
    out = []
    for e in range(1, max_e + 1):
        for m in divisors(p**e - 1):
            if multiplicative_order(p, m) == e:
                out.append((e, m))
    return out


def _power_module(w: HModule, k: int) -> HModule:
    return HModule(w.p, [_matpow(w.generators[0], k, w.p)])


def mixed_modules() -> list[tuple[str, Callable[[], HModule]]]:
    """Faithful modules that are not homogeneous, or whose acting group is not cyclic."""
    def singer_plus_trivial():
        s = singer_module(2, 2, 3)
        return HModule(2, [np.block([[s.generators[0], np.zeros((2, 1), int)],
                                     [np.zeros((1, 2), int), np.eye(1, dtype=int)]])],
                       name="singer(2,2,3)+1")

    def c8_twisted():
        z = singer_module(3, 2, 8)
        m = direct_sum(z, _power_module(z, 5))
        m.name = "C8:z+z^5"
        return m

    def c7_dual():
        z = singer_module(2, 3, 7)
        m = direct_sum(z, _power_module(z, 6))
        m.name = "C7:z+z^-1"
        return m

    def c21():
        m = direct_sum(singer_module(2, 2, 3), singer_module(2, 3, 7))
        m.name = "C21:3+7"
        return m

    def c3xc3():
        s = singer_module(2, 2, 3).generators[0]
        i2 = np.eye(2, dtype=int)
        z = np.zeros((2, 2), dtype=int)
        return HModule(2, [np.block([[s, z], [z, i2]]), np.block([[i2, z], [z, s]])], name="C3xC3")

    def q8_doubled():
        return homogeneous_sum(cat.q8_module(), 2)

    return [
        ("singer(2,2,3)+trivial", singer_plus_trivial),
        ("C8 on F3^4: z+z^5", c8_twisted),
        ("C7 on F2^6: z+z^-1", c7_dual),
        ("C21 on F2^5", c21),
        ("C3xC3 on F2^4", c3xc3),
        ("GammaL(1,8) on F2^3", cat.frobenius21_module),
        ("Q8 on F3^2", cat.q8_module),
        ("Q8 doubled on F3^4", q8_doubled),
    ]


def semidirect_modules() -> list[tuple[str, Callable[[], HModule]]]:
    """Modules for the module-criterion sweep: Singer sums over F_2 (p^n <= 2^6)
    and F_3 (p^n <= 3^4), diagonal characters over F_5 with n <= 2, and the
    mixed examples."""
    out: list[tuple[str, Callable[[], HModule]]] = []
    for p, max_n in ((2, 6), (3, 4)):
        for e, m in singer_parameters(p):
            for t in range(1, max_n // e + 1):
                out.append((f"singer({p},{e},{m},{t})",
                            lambda p=p, e=e, m=m, t=t: homogeneous_sum(singer_module(p, e, m), t)))
    for a in range(1, 5):
        out.append((f"diag(5,{a})", lambda a=a: diagonal_module(5, [[a]])))
    for a in range(1, 5):
        for b in range(1, 5):
            out.append((f"diag(5,{a},{b})", lambda a=a, b=b: diagonal_module(5, [[a, b]])))
    out.append(("diag(5,[2,1],[1,2])", lambda: diagonal_module(5, [[2, 1], [1, 2]])))
    out.append(("diag(5,[4,1],[1,2])", lambda: diagonal_module(5, [[4, 1], [1, 2]])))
    out.extend(mixed_modules())
    return out


def _module_item(name: str, build_module: Callable[[], HModule]) -> CorpusItem:
    m = build_module()
    return CorpusItem(name, lambda: semidirect_group(build_module()),
                      [(m.p, d) for d in range(1, m.n)], module=build_module)


def semidirect_corpus() -> list[CorpusItem]:
    return [_module_item(name, build) for name, build in semidirect_modules()]


def _all_instances(order: int) -> list[tuple[int, int]]:
    out = []
    for p in prime_divisors(order):
        for d in range(1, p_part(order, p).d + 1):
            out.append((p, d))
    return out


def small_corpus() -> list[CorpusItem]:
    """Small permutation groups, every (p, d) with p^d dividing the order."""
    items = []
    for name in ("S3", "A4", "D8", "S4", "SL(2,3)", "A5"):
        g = cat.catalog(name).group
        items.append(CorpusItem(name, lambda name=name: cat.catalog(name).group, _all_instances(g.order)))
    extra = {
        "C2^3": lambda: FiniteGroup.from_permutations(
            6, [[1, 0, 2, 3, 4, 5], [0, 1, 3, 2, 4, 5], [0, 1, 2, 3, 5, 4]], name="C2^3"),
        "C6": lambda: FiniteGroup.from_permutations(5, [[1, 0, 2, 3, 4], [0, 1, 3, 4, 2]], name="C6"),
        "C4": lambda: FiniteGroup.from_permutations(4, [[1, 2, 3, 0]], name="C4"),
        "F2^4": lambda: semidirect_group(HModule(2, [np.eye(4, dtype=int)], name="trivial")),
        "C3:C4x4": cat.c3_on_c4xc4,
        "Heis3:C2": cat.heisenberg_c2,
    }
    for name, build in extra.items():
        items.append(CorpusItem(name, build, _all_instances(build().order)))
    return items


def catalog_corpus() -> list[CorpusItem]:
    """The desk-scale simple groups at every (p, d) with p^d <= |S|_p.

    The asserted list of memberships is complete for these groups, so every
    other (p, d) is expected to be a non-member.
    """
    items = []
    for name in ("PSL(2,7)", "PSL(3,2)", "PSL(2,11)", "A7"):
        entry = cat.catalog(name)
        inst = _all_instances(entry.group.order)
        expected = {pd: pd in entry.members for pd in inst}
        items.append(CorpusItem(name, lambda name=name: cat.catalog(name).group, inst, expected=expected))
    return items


CORPORA: dict[str, Callable[[], list[CorpusItem]]] = {
    "small": small_corpus,
    "semidirect": semidirect_corpus,
    "catalog": catalog_corpus,
    "empty": lambda: [],
}
