"""Membership in the class of groups whose subgroups of order p^d are all
complemented, decided two ways: by exhaustive complement search and by the
structural criteria for p'-groups acting on elementary abelian p-groups.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import CapExceeded, HypothesisViolated
from .group import LATTICE_CAP, FiniteGroup, SubgroupHandle, generators_of, handle
from .lattice import frattini, is_complemented, is_supersolvable, o_pprime
from .modrep import HModule, conjugation_module, decompose, is_homogeneous
from .numtheory import PrimePower, log_p, p_part
from .pstructure import (hall_pprime_complement, is_elementary_abelian,
                         subgroup_classes_of_order_pd, sylow_p)

SUPERSOLVABLE = "Supersolvable"
NCP = "NCp"
HOMOGENEOUS_CYCLIC = "HomogeneousCyclic"
NOT_MEMBER = "NotMember"
DEGENERATE = "Degenerate"
BOUNDARY = "boundary d=n"
VACUOUS = "vacuous"


@dataclass
class CpdVerdict:
    """Outcome of the exhaustive check.

    ``complement_table`` pairs each class representative of subgroups of
    order p^d with a complement, or None where none exists.
    """

    p: int
    d: int
    group_order: int
    is_cpd: bool
    nontrivial: bool
    uncomplemented_witness: SubgroupHandle | None = None
    complement_table: list[tuple[SubgroupHandle, SubgroupHandle | None]] = field(default_factory=list)
    method: str = "BruteForce"

    @property
    def member(self) -> bool:
        """Nontrivial membership, the predicate the structural criteria decide."""
        return self.is_cpd and self.nontrivial


@dataclass
class ClassificationReport:
    applicable: bool
    case: str
    member: bool | None
    p: int
    d: int
    n: int | None = None
    e: int | None = None
    t: int | None = None
    s: int | None = None
    reason: str | None = None
    method: str = "TheoremB"
    data: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if self.case == HOMOGENEOUS_CYCLIC:
            assert self.e and self.e > 1, "homogeneous-cyclic case needs e > 1"


def brute_force_cpd(g: FiniteGroup, p: int, d: int, cap: int = LATTICE_CAP,
                    fast: bool = True) -> CpdVerdict:
    """Check every class of subgroups of order p^d for a complement.

    One representative per class suffices: if K complements H then K^x
    complements H^x.
    """
    pp = PrimePower(p, d)
    gp = p_part(g.order, p).value
    if pp.value > gp:
        return CpdVerdict(p, d, g.order, True, False)
    if g.order > cap:
        raise CapExceeded(f"|G| = {g.order} exceeds lattice cap {cap}")
    table = []
    witness = None
    for cls in subgroup_classes_of_order_pd(g, pp, cap):
        res = is_complemented(cls.rep, g, cap, fast=fast)
        table.append((cls.rep, res.witness))
        if not res.complemented and witness is None:
            witness = cls.rep
    return CpdVerdict(p, d, g.order, witness is None, True, witness, table)


def _check_module_hypotheses(m: HModule, d: int):
    if not m.is_faithful:
        raise HypothesisViolated("action is not faithful")
    if math.gcd(m.h_order, m.p) != 1:
        raise HypothesisViolated(f"acting group of order {m.h_order} is not a {m.p}'-group")
    if not 1 <= d < m.n:
        raise HypothesisViolated(f"need 1 <= d < n, got d={d}, n={m.n}")


def _module_case(m: HModule, p: int, d: int, n: int, divisor: int, method: str,
                 supersolvable: bool | None = None, data: dict | None = None) -> ClassificationReport:
    """Shared case split: supersolvable / cyclic homogeneous with e | divisor."""
    data = dict(data or {})
    comps = decompose(m)
    dims = [c.dim for c in comps]
    data["component_dims"] = dims
    if supersolvable is None:
        supersolvable = all(k == 1 for k in dims)
    if supersolvable:
        return ClassificationReport(True, SUPERSOLVABLE, True, p, d, n, 1 if dims and all(k == 1 for k in dims) else None,
                                    len(dims), method=method, data=data)
    if not m.is_cyclic:
        return ClassificationReport(True, NOT_MEMBER, False, p, d, n, reason="acting group is not cyclic",
                                    method=method, data=data)
    hom = is_homogeneous(m)
    if not hom.homogeneous:
        return ClassificationReport(True, NOT_MEMBER, False, p, d, n, t=hom.t,
                                    reason="module is not homogeneous", method=method, data=data)
    e = hom.e
    if e == 1:
        return ClassificationReport(True, NOT_MEMBER, False, p, d, n, e, hom.t,
                                    reason="components have dimension 1 but the group is not supersolvable",
                                    method=method, data=data)
    if divisor % e:
        return ClassificationReport(True, NOT_MEMBER, False, p, d, n, e, hom.t,
                                    reason=f"e={e} does not divide {divisor}", method=method, data=data)
    return ClassificationReport(True, HOMOGENEOUS_CYCLIC, True, p, d, n, e, hom.t, method=method, data=data)


def theorem_b_classify(m: HModule, d: int) -> ClassificationReport:
    """Decide H ⋉ V ∈ NCp^d for a faithful p'-action on V = F_p^n, 1 <= d < n.

    Member iff every irreducible component is 1-dimensional (supersolvable
    case) or H is cyclic and V is homogeneous with component dimension
    e > 1 dividing gcd(d, n).
    """
    _check_module_hypotheses(m, d)
    return _module_case(m, m.p, d, m.n, math.gcd(d, m.n), "TheoremB",
                        data={"h_order": m.h_order})


def _is_cyclic_subgroup(g: FiniteGroup, h: SubgroupHandle) -> bool:
    return bool(np.any(g.element_orders[h.array.astype(np.int64)] == h.order))


def theorem_a_classify(g: FiniteGroup, p: int, d: int, cap: int = LATTICE_CAP) -> ClassificationReport:
    """Decide G ∈ NCp^d when O_{p'}(G) = 1 and |G|_p >= p^(2d).

    The first case (G ∈ NCp) is decided by exhaustive search at d = 1; the
    second by recognizing G = H ⋉ P with H a cyclic Hall p'-subgroup and P a
    faithful homogeneous module with e > 1 dividing gcd(d, log_p |P|).
    """
    if d < 1:
        raise HypothesisViolated("need d >= 1")
    gp = p_part(g.order, p)
    if gp.value < p ** (2 * d):
        raise HypothesisViolated(f"|G|_p = {gp.value} < p^(2d) = {p ** (2 * d)}")
    if g.order > cap:
        raise CapExceeded(f"|G| = {g.order} exceeds lattice cap {cap}")
    if o_pprime(g, p, cap).order != 1:
        raise HypothesisViolated("O_{p'}(G) is not trivial")
    n = gp.d
    ncp = brute_force_cpd(g, p, 1, cap)
    data: dict[str, Any] = {"ncp": ncp.member}
    if ncp.member:
        return ClassificationReport(True, NCP, True, p, d, n, method="TheoremA", data=data)

    def no(reason, **kw):
        return ClassificationReport(True, NOT_MEMBER, False, p, d, n, reason=reason, method="TheoremA",
                                    data=data, **kw)

    sylow = sylow_p(g, p)
    data["sylow"] = sylow
    if not g.is_normal(sylow):
        return no("Sylow p-subgroup is not normal")
    if not is_elementary_abelian(g, sylow, p):
        return no("Sylow p-subgroup is not elementary abelian")
    hall = hall_pprime_complement(g, p, cap)
    if hall is None:
        return no("no Hall p'-subgroup")
    data["hall"] = hall
    if not _is_cyclic_subgroup(g, hall):
        return no("Hall p'-subgroup is not cyclic")
    m, _ = conjugation_module(g, sylow, hall, p)
    if len(m.matrix_group) != hall.order:
        return no("Hall p'-subgroup does not act faithfully")
    rep = _module_case(m, p, d, n, math.gcd(d, n), "TheoremA", supersolvable=False, data=data)
    return rep


def _split(g: FiniteGroup, p: int, cap: int) -> tuple[SubgroupHandle, SubgroupHandle]:
    sylow = sylow_p(g, p)
    if not g.is_normal(sylow):
        raise HypothesisViolated("Sylow p-subgroup is not normal")
    hall = hall_pprime_complement(g, p, cap)
    if hall is None:
        raise HypothesisViolated("no Hall p'-complement")
    return sylow, hall


def corollary_c_necessary(g: FiniteGroup, p: int, d: int, cap: int = LATTICE_CAP) -> ClassificationReport:
    """Necessary condition for G = H ⋉ P ∈ NCp^d, read on G/Φ(G).

    A NotMember result refutes membership; a passing case is not a proof.
    When d <= s (|Φ(G)| = p^s) the condition is not meaningful and the case
    is reported as Degenerate.
    """
    if g.order > cap:
        raise CapExceeded(f"|G| = {g.order} exceeds lattice cap {cap}")
    sylow, hall = _split(g, p, cap)
    if g.centralizer_mask(sylow.generators)[hall.array.astype(np.int64)].sum() > 1:
        raise HypothesisViolated("H does not act faithfully on P")
    n = log_p(sylow.order, p)
    if not 1 <= d < n:
        raise HypothesisViolated(f"need 1 <= d < n, got d={d}, n={n}")
    phi = frattini(g, cap)
    s = log_p(phi.order, p)
    data: dict[str, Any] = {"frattini_order": phi.order, "necessary_only": True}
    if d <= s:
        return ClassificationReport(False, DEGENERATE, None, p, d, n, s=s,
                                    reason=f"d={d} <= s={s}", method="CorollaryC", data=data)
    q = g.quotient(phi)
    coset_of = q.info["coset_of"]

    def image(h: SubgroupHandle) -> SubgroupHandle:
        members = np.unique(coset_of[h.array.astype(np.int64)])
        return handle(members, generators_of(q, members))

    pbar, hbar = image(sylow), image(hall)
    m, _ = conjugation_module(q, pbar, hbar, p)
    ss = is_supersolvable(q, cap)
    rep = _module_case(m, p, d, n, math.gcd(d - s, n - s), "CorollaryC", supersolvable=ss, data=data)
    rep.s = s
    rep.n = n
    if rep.member:
        rep.member = None  # passing is necessary only
    rep.data["passes"] = rep.case != NOT_MEMBER
    return rep


def classify(g: FiniteGroup, p: int, d: int, cap: int = LATTICE_CAP) -> ClassificationReport:
    """Route to the applicable structural criterion.

    Semidirect-product groups use the module criterion (with the d = n and
    vacuous cases decided directly); other groups use the O_{p'}-trivial
    criterion.
    """
    gp = p_part(g.order, p)
    if p ** d > gp.value:
        return ClassificationReport(True, VACUOUS, True, p, d, gp.d, method="Vacuous",
                                    reason="p^d exceeds |G|_p")
    if g.backend == "semidirect" and g.info.get("p") == p:
        m = g.info["module"]
        if d == m.n:
            # the Sylow subgroup V is the only subgroup of order p^n and H complements it
            return ClassificationReport(True, BOUNDARY, True, p, d, m.n, method="Boundary")
        return theorem_b_classify(m, d)
    return theorem_a_classify(g, p, d, cap)
