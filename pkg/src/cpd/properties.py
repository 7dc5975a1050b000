"""Inheritance properties of the complement condition, checked on concrete
groups through the full subgroup lattice.

These are theorems, so a violation indicates a bug. The checks deliberately
avoid ``brute_force_cpd``: they read complements off the lattice of the
ambient group as bitsets, giving an independent second code path.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import CapExceeded
from .group import LATTICE_CAP, FiniteGroup, SubgroupHandle
from .lattice import frattini, lattice, o_pprime
from .numtheory import p_part
from .pstructure import is_elementary_abelian, sylow_p


@dataclass
class CheckResult:
    check: str
    p: int
    d: int
    passed: bool
    applicable: bool = True
    checked: int = 0
    violations: list[dict[str, Any]] = field(default_factory=list)

    def as_dict(self) -> dict[str, Any]:
        return {"check": self.check, "p": self.p, "d": self.d, "passed": self.passed,
                "applicable": self.applicable, "checked": self.checked, "violations": self.violations}


def _witness(g: FiniteGroup, h: SubgroupHandle | np.ndarray) -> dict[str, Any]:
    members = h.array if isinstance(h, SubgroupHandle) else np.asarray(h)
    return {"order": int(members.size), "members": [int(x) for x in members[:64]]}


class _Bitsets:
    """Every subgroup of G (all conjugates) as rows of a boolean matrix."""

    def __init__(self, g: FiniteGroup, cap: int):
        lat = lattice(g, cap=cap)
        rows, orders, rep_index = [], [], []
        for cls in lat.classes:
            rep_index.append(len(rows))
            for r in cls.rows:
                m = np.zeros(g.order, dtype=bool)
                m[r] = True
                rows.append(m)
                orders.append(cls.order)
        self.masks = np.asarray(rows).reshape(len(rows), g.order)
        self.dense = self.masks.astype(np.float32)
        self.orders = np.asarray(orders, dtype=np.int64)
        self.classes = lat.classes
        self.rep_index = rep_index
        # normal subgroups are the classes of size one
        self.normal = [i for c, i in zip(lat.classes, rep_index) if c.size == 1]

    def inside(self, i: int) -> np.ndarray:
        """Indices of subgroups contained in subgroup i."""
        sizes = self.dense @ self.dense[i]
        return np.nonzero(sizes.astype(np.int64) == self.orders)[0]

    def containing(self, i: int) -> np.ndarray:
        sizes = self.dense @ self.dense[i]
        return np.nonzero(sizes.astype(np.int64) == self.orders[i])[0]

    def uncovered(self, tops: np.ndarray, bottoms: np.ndarray, meet: int) -> np.ndarray:
        """Rows of ``tops`` with no row of ``bottoms`` meeting them in exactly ``meet`` elements."""
        if tops.size == 0:
            return tops
        if bottoms.size == 0:
            return tops
        inter = self.dense[tops] @ self.dense[bottoms].T
        ok = (inter.astype(np.int64) == meet).any(axis=1)
        return tops[~ok]


def _bitsets(g: FiniteGroup, cap: int) -> _Bitsets:
    with g._lock:
        b = g._cache.get("bitsets")
        if b is None:
            b = _Bitsets(g, cap)
            g._cache["bitsets"] = b
        return b


def _has_complements(bs: _Bitsets, ambient: int, pd: int) -> np.ndarray:
    """Subgroups of order pd inside subgroup ``ambient`` without a complement there."""
    inner = bs.inside(ambient)
    order = int(bs.orders[ambient])
    tops = inner[bs.orders[inner] == pd]
    bottoms = inner[bs.orders[inner] == order // pd]
    return bs.uncovered(tops, bottoms, 1)


def check_subgroup_closure(g: FiniteGroup, p: int, d: int, cap: int = LATTICE_CAP) -> CheckResult:
    """Every subgroup of a Cp^d-group is a Cp^d-group (one check per class)."""
    bs = _bitsets(g, cap)
    pd = p**d
    res = CheckResult("subgroup_closure", p, d, True)
    for cls, i in zip(bs.classes, bs.rep_index):
        if cls.order % pd:
            continue  # vacuous: no subgroups of order p^d inside
        res.checked += 1
        bad = _has_complements(bs, i, pd)
        if bad.size:
            res.passed = False
            res.violations.append({"subgroup": _witness(g, cls.rep),
                                   "uncomplemented": _witness(g, np.nonzero(bs.masks[bad[0]])[0])})
    return res


def check_quotients(g: FiniteGroup, p: int, d: int, cap: int = LATTICE_CAP) -> CheckResult:
    """G/N is Cp^(d-e) for each normal N with |N|_p = p^e <= p^d.

    Read through the correspondence: subgroups A/N of order p^(d-e) and
    candidate complements B/N, with A, B running over overgroups of N, and
    A/N ∩ B/N = 1 meaning |A ∩ B| = |N|.
    """
    bs = _bitsets(g, cap)
    res = CheckResult("quotients", p, d, True)
    for i in bs.normal:
        n = int(bs.orders[i])
        e = p_part(n, p).d
        if e > d:
            continue
        r = d - e
        res.checked += 1
        quotient_order = g.order // n
        if quotient_order % p**r:
            continue  # vacuous in the quotient
        over = bs.containing(i)
        tops = over[bs.orders[over] == n * p**r]
        bottoms = over[bs.orders[over] == g.order // p**r]
        bad = bs.uncovered(tops, bottoms, n)
        if bad.size:
            res.passed = False
            res.violations.append({"normal": _witness(g, np.nonzero(bs.masks[i])[0]), "e": e,
                                   "uncomplemented": _witness(g, np.nonzero(bs.masks[bad[0]])[0])})
    return res


def check_multiples(g: FiniteGroup, p: int, d: int, cap: int = LATTICE_CAP) -> CheckResult:
    """G is Cp^(md) for every m >= 0; past |G|_p the condition is vacuous."""
    bs = _bitsets(g, cap)
    whole = bs.rep_index[-1]
    gp = p_part(g.order, p).value
    res = CheckResult("multiples", p, d, True)
    m = 0
    while True:
        pmd = p ** (m * d)
        res.checked += 1
        if pmd > gp:
            tops = np.nonzero(bs.orders == pmd)[0]
            if tops.size:
                res.passed = False
                res.violations.append({"m": m, "reason": "subgroup of order beyond |G|_p"})
            break
        bad = _has_complements(bs, whole, pmd)
        if bad.size:
            res.passed = False
            res.violations.append({"m": m, "uncomplemented": _witness(g, np.nonzero(bs.masks[bad[0]])[0])})
        if d == 0:
            break
        m += 1
    return res


def check_frattini_trivial(g: FiniteGroup, p: int, cap: int = LATTICE_CAP) -> CheckResult:
    """O_{p'}(G) = 1 with elementary abelian Sylow p-subgroups forces Φ(G) = 1."""
    res = CheckResult("frattini_trivial", p, 0, True)
    if g.order % p or o_pprime(g, p, cap).order != 1 or not is_elementary_abelian(g, sylow_p(g, p), p):
        res.applicable = False
        return res
    res.checked = 1
    phi = frattini(g, cap)
    if phi.order != 1:
        res.passed = False
        res.violations.append({"frattini": _witness(g, phi)})
    return res


def check_lattice_agrees(g: FiniteGroup, p: int, d: int, is_cpd: bool, cap: int = LATTICE_CAP) -> CheckResult:
    """The bitset route and the exhaustive complement search give the same verdict."""
    bs = _bitsets(g, cap)
    pd = p**d
    res = CheckResult("lattice_agrees", p, d, True, checked=1)
    lattice_cpd = g.order % pd != 0 or _has_complements(bs, bs.rep_index[-1], pd).size == 0
    if lattice_cpd != is_cpd:
        res.passed = False
        res.violations.append({"brute": is_cpd, "lattice": bool(lattice_cpd)})
    return res


def property_suite(corpus, cap: int = LATTICE_CAP) -> dict[str, Any]:
    """Run the inheritance checks over ``(name, G, p, d, is_cpd)`` tuples.

    Membership checks run on members only; the Frattini check runs on every
    group once per prime. Items beyond the cap are skipped and listed.
    """
    results, skipped = [], []
    frattini_done: set[tuple[str, int]] = set()
    for name, g, p, d, is_cpd in corpus:
        try:
            checks = [check_lattice_agrees(g, p, d, is_cpd, cap)]
            if is_cpd:
                checks += [check_subgroup_closure(g, p, d, cap), check_quotients(g, p, d, cap),
                           check_multiples(g, p, d, cap)]
            if (name, p) not in frattini_done:
                frattini_done.add((name, p))
                checks.append(check_frattini_trivial(g, p, cap))
        except CapExceeded as exc:
            skipped.append({"item": name, "p": p, "d": d, "reason": str(exc)})
            continue
        for c in checks:
            if c.applicable:
                results.append({"item": name, **c.as_dict()})
    return {"passed": all(r["passed"] for r in results), "checks": results, "skipped": skipped,
            "violations": sum(len(r["violations"]) for r in results)}


__all__ = ["CheckResult", "check_subgroup_closure", "check_quotients", "check_multiples",
           "check_frattini_trivial", "check_lattice_agrees", "property_suite"]
