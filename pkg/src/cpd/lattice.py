"""Subgroup classes up to conjugacy and the normal-structure computations
that depend on them (complements, Frattini subgroup, supersolvability,
minimal normal subgroups, O_{p'}).

Lattice construction is bottom-up cyclic extension: a class representative H
is extended by every element g of prime-power order that normalizes H with
g^q in H, giving H<g> of order q|H|. Only solvable-over-perfect subgroups are
reachable that way, so when G is not solvable the perfect subgroups are found
first (as 2-generated closures, up to conjugacy of the generating pair) and
used as additional seeds.
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .errors import CapExceeded
from .group import LATTICE_CAP, FiniteGroup, SubgroupHandle, generators_of, handle, key_of
from .numtheory import divisors, factorize, is_prime

log = logging.getLogger(__name__)

# smallest order of a nontrivial perfect group (A_5)
_MIN_PERFECT = 60


@dataclass
class SubgroupClass:
    """One conjugacy class of subgroups.

    ``rows`` holds every conjugate as a sorted member array; ``rep`` is the
    lexicographically smallest of them, which makes representatives
    independent of the order in which classes were discovered.
    """

    rep: SubgroupHandle
    rows: np.ndarray
    transversal: np.ndarray
    normalizer_order: int

    @property
    def order(self) -> int:
        return self.rep.order

    @property
    def size(self) -> int:
        return self.rows.shape[0]

    def conjugates(self, g: FiniteGroup) -> list[SubgroupHandle]:
        """Expansion helper: every subgroup in the class as a handle."""
        out = []
        for t in self.transversal:
            out.append(g.conjugate(self.rep, int(t)))
        return out


def make_class(g: FiniteGroup, members: np.ndarray, gens: Iterable[int]) -> SubgroupClass:
    members = np.asarray(members, dtype=np.int64)
    gens = [int(x) for x in gens if x != 0] or generators_of(g, members)
    nmask = g.normalizer_mask(members, gens)
    narr = np.nonzero(nmask)[0]
    covered = np.zeros(g.order, dtype=bool)
    trans, rows = [], []
    for x in range(g.order):
        if covered[x]:
            continue
        covered[g.mul[narr, x].astype(np.int64)] = True
        trans.append(x)
        rows.append(g.conjugate_array(members, x))
    rows = np.asarray(rows, dtype=np.int64).reshape(len(trans), members.size)
    trans = np.asarray(trans, dtype=np.int64)
    order = np.lexsort(rows.T[::-1])
    rows, trans = rows[order], trans[order]
    t0 = int(trans[0])
    rep_gens = tuple(int(g.mul[g.inv[t0], g.mul[k, t0]]) for k in gens)
    rep = SubgroupHandle(tuple(int(v) for v in rows[0]), rep_gens)
    # transversal relative to the rep: rep^(t0^-1 t) = row
    rel = np.asarray([int(g.mul[g.inv[t0], t]) for t in trans], dtype=np.int64)
    return SubgroupClass(rep, rows, rel, int(narr.size))


class Lattice:
    """Conjugacy classes of subgroups whose orders lie in ``explored``
    (a divisor-closed set of orders; None means every order)."""

    def __init__(self, group: FiniteGroup, explored: frozenset[int] | None):
        self.group = group
        self.explored = explored
        self.classes: list[SubgroupClass] = []
        self.by_key: dict[bytes, int] = {}

    def allows(self, order: int) -> bool:
        return self.explored is None or order in self.explored

    def covers(self, wanted: frozenset[int] | None) -> bool:
        if self.explored is None:
            return True
        return wanted is not None and wanted <= self.explored

    def class_of(self, members: np.ndarray) -> SubgroupClass | None:
        i = self.by_key.get(key_of(members))
        return None if i is None else self.classes[i]

    def _register(self, members: np.ndarray, gens) -> int | None:
        k = key_of(members)
        if k in self.by_key:
            return None
        cls = make_class(self.group, members, gens)
        idx = len(self.classes)
        self.classes.append(cls)
        for row in cls.rows:
            self.by_key[key_of(row)] = idx
        return idx

    def build(self) -> "Lattice":
        g = self.group
        heap: list[tuple[int, int]] = []
        self._register(np.array([0]), [])
        heap.append((1, 0))
        for members, gens in _perfect_subgroups(g, self):
            idx = self._register(members, gens)
            if idx is not None:
                heapq.heappush(heap, (members.size, idx))
        prime_of, pow_q = _prime_power_data(g)
        while heap:
            _, idx = heapq.heappop(heap)
            cls = self.classes[idx]
            h = cls.rep.array.astype(np.int64)
            hmask = g.mask(h)
            nmask = g.normalizer_mask(h, cls.rep.generators)
            cand = np.nonzero(nmask & ~hmask & (prime_of > 0))[0]
            cand = cand[hmask[pow_q[cand]]]
            allowed_q = {q for q in set(prime_of[cand].tolist()) if self.allows(q * h.size)}
            if not allowed_q:
                continue
            cand = cand[np.isin(prime_of[cand], list(allowed_q))]
            covered = np.zeros(g.order, dtype=bool)
            for x in cand:
                x = int(x)
                if covered[x]:
                    continue
                q = int(prime_of[x])
                pows = [0]
                for _ in range(q - 1):
                    pows.append(int(g.mul[pows[-1], x]))
                k = np.unique(g.mul[np.ix_(h, pows)].ravel()).astype(np.int64)
                covered[k] = True
                new = self._register(k, list(cls.rep.generators) + [x])
                if new is not None:
                    heapq.heappush(heap, (k.size, new))
        self._sort()
        return self

    def _sort(self):
        order = sorted(range(len(self.classes)),
                       key=lambda i: (self.classes[i].order, self.classes[i].rep.members))
        self.classes = [self.classes[i] for i in order]
        remap = {old: new for new, old in enumerate(order)}
        self.by_key = {k: remap[v] for k, v in self.by_key.items()}

    def of_order(self, order: int) -> list[SubgroupClass]:
        if not self.allows(order):
            raise ValueError(f"order {order} was not explored")
        return [c for c in self.classes if c.order == order]

    def filtered(self, pred: Callable[[int], bool]) -> list[SubgroupClass]:
        return [c for c in self.classes if pred(c.order)]


def _prime_power_data(g: FiniteGroup) -> tuple[np.ndarray, np.ndarray]:
    """For each element: its prime if it has prime-power order (else 0), and x^q."""
    with g._lock:
        if "ppdata" not in g._cache:
            orders = g.element_orders
            prime_of = np.zeros(g.order, dtype=np.int64)
            for o in set(orders.tolist()):
                f = factorize(o)
                if len(f) == 1:
                    prime_of[orders == o] = next(iter(f))
            pow_q = np.zeros(g.order, dtype=np.int64)
            idx = np.arange(g.order)
            for q in set(prime_of.tolist()) - {0}:
                sel = prime_of == q
                cur = idx.copy()
                for _ in range(q - 1):
                    cur = g.mul[cur, idx].astype(np.int64)
                pow_q[sel] = cur[sel]
            g._cache["ppdata"] = (prime_of, pow_q)
        return g._cache["ppdata"]


def _perfect_subgroups(g: FiniteGroup, lat: Lattice):
    """Nontrivial perfect subgroups with explored orders, up to conjugacy.

    Pairs (a, b) run over element-class representatives a and C(a)-orbit
    representatives b; closures stop as soon as they exceed the largest
    explored order.
    """
    limit = g.order if lat.explored is None else max(lat.explored)
    if limit < _MIN_PERFECT or g.is_solvable():
        return
    seen: set[bytes] = set()
    for cl in g.conjugacy_classes:
        a = int(cl[0])
        if a == 0:
            continue
        cmask = g.centralizer_mask([a])
        carr = np.nonzero(cmask)[0]
        done = cmask.copy()  # b commuting with a gives an abelian closure
        for b in range(g.order):
            if done[b]:
                continue
            done[g.mul[g.inv[carr], g.mul[b, carr]].astype(np.int64)] = True
            k = g.closure_array([a, b], limit=limit)
            if k is None or k.size < _MIN_PERFECT or not lat.allows(k.size):
                continue
            key = key_of(k)
            if key in seen or key in lat.by_key:
                continue
            seen.add(key)
            if g.is_perfect(handle(k, [a, b])):
                yield k, [a, b]


def divisor_closure(group_order: int, orders: Iterable[int] | None = None,
                    order_filter: Callable[[int], bool] | None = None) -> frozenset[int] | None:
    if orders is None and order_filter is None:
        return None
    targets = set()
    if orders is not None:
        targets |= {int(o) for o in orders if group_order % int(o) == 0}
    if order_filter is not None:
        targets |= {o for o in divisors(group_order) if order_filter(o)}
    out = set()
    for t in targets:
        out.update(divisors(t))
    out.add(1)
    return frozenset(out)


def lattice(g: FiniteGroup, orders: Iterable[int] | None = None,
            order_filter: Callable[[int], bool] | None = None,
            cap: int = LATTICE_CAP) -> Lattice:
    """Cached lattice covering every subgroup order that divides a target."""
    if g.order > cap:
        raise CapExceeded(f"|G| = {g.order} exceeds lattice cap {cap}")
    wanted = divisor_closure(g.order, orders, order_filter)
    if wanted is not None and wanted >= set(divisors(g.order)):
        wanted = None
    with g._lock:
        for lat in g._cache.setdefault("lattices", []):
            if lat.covers(wanted):
                return lat
        lat = Lattice(g, wanted).build()
        g._cache["lattices"].append(lat)
        log.debug("lattice of %r: %d classes", g, len(lat.classes))
        return lat


def subgroups_up_to_conjugacy(g: FiniteGroup, order_filter: Callable[[int], bool] | None = None,
                              orders: Iterable[int] | None = None,
                              cap: int = LATTICE_CAP) -> list[SubgroupHandle]:
    return [c.rep for c in subgroup_classes(g, order_filter, orders, cap)]


def subgroup_classes(g: FiniteGroup, order_filter: Callable[[int], bool] | None = None,
                     orders: Iterable[int] | None = None,
                     cap: int = LATTICE_CAP) -> list[SubgroupClass]:
    lat = lattice(g, orders, order_filter, cap)
    keep = set(orders) if orders is not None else None

    def pred(o):
        if keep is not None and o in keep:
            return True
        if order_filter is not None and order_filter(o):
            return True
        return keep is None and order_filter is None

    return lat.filtered(pred)


# -- complements --------------------------------------------------------


@dataclass(frozen=True)
class ComplementResult:
    complemented: bool
    witness: SubgroupHandle | None = None


def _grow_witness(g: FiniteGroup, h: SubgroupHandle, target: int, budget: int) -> SubgroupHandle | None:
    """Backtracking generator growth toward a complement of order ``target``.

    A branch is cut when its closure meets H nontrivially, overshoots, or has
    an order not dividing ``target``. Returns None when the budget runs out.
    """
    hmask = g.mask(h.array)
    orders = g.element_orders
    pool = [x for x in range(1, g.order) if not hmask[x] and target % orders[x] == 0]
    calls = 0

    def rec(gens: list[int], members: np.ndarray, start: int):
        nonlocal calls
        if members.size == target:
            return handle(members, gens)
        mmask = g.mask(members)
        for i in range(start, len(pool)):
            x = pool[i]
            if mmask[x]:
                continue
            calls += 1
            if calls > budget:
                return None
            k = g.closure_array(gens + [x], limit=target)
            if k is None or target % k.size or hmask[k].sum() > 1:
                continue
            found = rec(gens + [x], k, i + 1)
            if found is not None or calls > budget:
                return found
        return None

    return rec([], np.array([0]), 0)


def is_complemented(h: SubgroupHandle, g: FiniteGroup, cap: int = LATTICE_CAP,
                    fast: bool = True, budget: int = 64) -> ComplementResult:
    """Decide whether H has a complement in G.

    Positive answers may come from the budgeted growth search; a negative
    answer is only ever given after every conjugate of every class of
    subgroups of order |G|/|H| has been checked.
    """
    target = g.order // h.order
    if h.order == 1:
        return ComplementResult(True, g.whole)
    if target == 1:
        return ComplementResult(True, g.trivial)
    if fast:
        w = _grow_witness(g, h, target, budget)
        if w is not None:
            return ComplementResult(True, w)
    hmask = g.mask(h.array)
    for cls in subgroup_classes(g, orders=[target], cap=cap):
        if cls.order != target:
            continue
        hits = np.nonzero(hmask[cls.rows].sum(axis=1) == 1)[0]
        if hits.size:
            i = int(hits[0])
            return ComplementResult(True, g.conjugate(cls.rep, int(cls.transversal[i])))
    return ComplementResult(False, None)


# -- maximal subgroups and friends ---------------------------------------


def maximal_classes(g: FiniteGroup, cap: int = LATTICE_CAP) -> list[SubgroupClass]:
    with g._lock:
        if "maximal" in g._cache:
            return g._cache["maximal"]
    lat = lattice(g, cap=cap)
    proper = [c for c in lat.classes if c.order < g.order]
    out = []
    for m in proper:
        contained = False
        for c in proper:
            if c.order <= m.order or c.order % m.order:
                continue
            cmask = g.mask(c.rep.array)
            if cmask[m.rows].all(axis=1).any():
                contained = True
                break
        if not contained:
            out.append(m)
    with g._lock:
        g._cache["maximal"] = out
    return out


def frattini(g: FiniteGroup, cap: int = LATTICE_CAP) -> SubgroupHandle:
    """Intersection of all maximal subgroups."""
    if g.order == 1:
        return g.trivial
    mask = np.ones(g.order, dtype=bool)
    for m in maximal_classes(g, cap):
        for row in m.rows:
            mask &= g.mask(row)
    members = np.nonzero(mask)[0]
    return handle(members, generators_of(g, members))


def is_supersolvable(g: FiniteGroup, cap: int = LATTICE_CAP) -> bool:
    """Every maximal subgroup has prime index."""
    return all(is_prime(g.order // m.order) for m in maximal_classes(g, cap))


def minimal_normal_subgroups(g: FiniteGroup, cap: int = LATTICE_CAP) -> list[SubgroupHandle]:
    if g.order > cap:
        raise CapExceeded(f"|G| = {g.order} exceeds lattice cap {cap}")
    closures: dict[bytes, SubgroupHandle] = {}
    for cl in g.conjugacy_classes:
        x = int(cl[0])
        if x == 0:
            continue
        n = g.normal_closure(g.closure(cl[:1].tolist()))
        closures.setdefault(n.key, n)
    cands = sorted(closures.values(), key=lambda s: (s.order, s.members))
    out = []
    for n in cands:
        nmask = g.mask(n.array)
        if not any(m.order < n.order and nmask[m.array].all() for m in out):
            out.append(n)
    return out


def o_pprime(g: FiniteGroup, p: int, cap: int = LATTICE_CAP) -> SubgroupHandle:
    """Largest normal subgroup of order prime to p."""
    current = g.trivial
    while True:
        q = g.quotient(current)
        mins = [m for m in minimal_normal_subgroups(q, cap) if m.order % p]
        if not mins:
            return current
        gens = [x for m in mins for x in m.generators]
        joined = q.closure_array(gens)
        coset_of = q.info["coset_of"]
        members = np.nonzero(np.isin(coset_of, joined))[0]
        current = handle(members, generators_of(g, members))
