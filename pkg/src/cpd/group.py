"""Finite groups as multiplication tables over a canonical element order.

Every group, whatever it was built from, ends up as a ``FiniteGroup``: a list
of native labels (permutation tuples, ``(h, v)`` pairs, coset
representatives...) together with a Cayley table ``mul[a, b] = a*b`` on
element indices. Index 0 is always the identity.

Permutations compose left to right: ``(a*b)[i] == b[a[i]]``.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable, Hashable, Iterable, Sequence

import numpy as np

from .errors import BadInput, CapExceeded, NotNormal

ELEMENT_CAP = 10_000
LATTICE_CAP = 5_000


def _index_dtype(n: int):
    return np.uint16 if n <= np.iinfo(np.uint16).max else np.int32


def key_of(members: np.ndarray) -> bytes:
    """Canonical hashable key of a sorted member array."""
    return np.asarray(members, dtype=np.int32).tobytes()


@dataclass(frozen=True)
class SubgroupHandle:
    """A subgroup given by its sorted member indices.

    Equality and hashing look only at ``members``; ``generators`` is kept for
    cheap normality and conjugation tests.
    """

    members: tuple[int, ...]
    generators: tuple[int, ...] = field(compare=False, default=())

    @property
    def order(self) -> int:
        return len(self.members)

    @property
    def array(self) -> np.ndarray:
        return np.fromiter(self.members, dtype=np.int32, count=len(self.members))

    @property
    def key(self) -> bytes:
        return key_of(self.array)

    def __contains__(self, x) -> bool:
        i = np.searchsorted(self.array, x)
        return i < self.order and self.members[i] == x

    def __repr__(self):
        return f"SubgroupHandle(order={self.order}, generators={list(self.generators)})"


def handle(members, generators: Iterable[int] = ()) -> SubgroupHandle:
    arr = np.unique(np.asarray(members, dtype=np.int64))
    return SubgroupHandle(tuple(int(x) for x in arr), tuple(int(g) for g in generators))


class FiniteGroup:
    """A finite group stored as a full Cayley table.

    ``labels[i]`` is the backend-native element with index ``i``;
    ``generators`` are element indices that generate the group.
    """

    def __init__(self, labels: list, mul: np.ndarray, generators: Sequence[int],
                 backend: str, info: dict | None = None, name: str | None = None):
        self.labels = labels
        self.mul = mul
        self.order = len(labels)
        self.generators = tuple(int(g) for g in generators)
        self.backend = backend
        self.info = dict(info or {})
        self.name = name
        self.identity = 0
        rows, cols = np.nonzero(mul == 0)
        inv = np.empty(self.order, dtype=np.int64)
        inv[rows] = cols
        self.inv = inv
        self._cache: dict = {}
        self._lock = threading.RLock()

    def __repr__(self):
        label = self.name or self.backend
        return f"FiniteGroup({label}, order={self.order})"

    # -- construction ---------------------------------------------------

    @classmethod
    def from_generators(cls, gens: Sequence[Hashable], compose: Callable, identity: Hashable,
                        backend: str, info: dict | None = None, name: str | None = None,
                        sort_key: Callable | None = None, cap: int = ELEMENT_CAP) -> "FiniteGroup":
        """Breadth-first closure from ``gens`` in input order.

        Each BFS layer is ordered by ``sort_key`` on the native labels, so the
        element table is a pure function of the generator list.
        """
        sort_key = sort_key or (lambda x: x)
        labels = [identity]
        index = {identity: 0}
        parent, via = [0], [0]
        layer = [0]
        while layer:
            fresh = []
            for i in layer:
                x = labels[i]
                for j, g in enumerate(gens):
                    y = compose(x, g)
                    if y not in index:
                        index[y] = -1
                        fresh.append((y, i, j))
            fresh.sort(key=lambda t: sort_key(t[0]))
            layer = []
            for y, i, j in fresh:
                index[y] = len(labels)
                layer.append(len(labels))
                labels.append(y)
                parent.append(i)
                via.append(j)
                if len(labels) > cap:
                    raise CapExceeded(f"group order exceeds element cap {cap}")
        n = len(labels)
        dt = _index_dtype(n)
        rmul = np.empty((n, max(len(gens), 1)), dtype=np.int64)
        for i, x in enumerate(labels):
            for j, g in enumerate(gens):
                rmul[i, j] = index[compose(x, g)]
        # right-multiplication columns: t[b, a] = a*b, built along the BFS tree
        t = np.empty((n, n), dtype=dt)
        t[0] = np.arange(n)
        for b in range(1, n):
            t[b] = rmul[t[parent[b]], via[b]]
        mul = np.ascontiguousarray(t.T)
        gen_idx = [index[g] for g in gens]
        return cls(labels, mul, gen_idx, backend, info, name)

    @classmethod
    def from_permutations(cls, degree: int, generators: Sequence[Sequence[int]],
                          name: str | None = None, cap: int = ELEMENT_CAP) -> "FiniteGroup":
        gens = []
        for g in generators:
            g = tuple(int(x) for x in g)
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise BadInput(f"not a permutation of {degree} points: {list(g)}")
            gens.append(g)
        ident = tuple(range(degree))

        def compose(a, b):
            return tuple(b[i] for i in a)

        info = {"degree": degree, "generators": [list(g) for g in gens]}
        return cls.from_generators(gens, compose, ident, "perm", info, name, cap=cap)

    @classmethod
    def from_table(cls, mul: np.ndarray, generators: Sequence[int], labels: list,
                   backend: str, info: dict | None = None, name: str | None = None) -> "FiniteGroup":
        return cls(labels, mul.astype(_index_dtype(len(labels))), generators, backend, info, name)

    # -- element level ----------------------------------------------------

    def conj_all(self, x: int) -> np.ndarray:
        """x^g = g^-1 x g for every g, indexed by g."""
        return self.mul[self.inv, self.mul[x]].astype(np.int64)

    def power(self, x: int, k: int) -> int:
        r = 0
        for _ in range(k):
            r = int(self.mul[r, x])
        return r

    @property
    def element_orders(self) -> np.ndarray:
        with self._lock:
            if "orders" not in self._cache:
                n = self.order
                idx = np.arange(n)
                cur = idx.copy()
                orders = np.zeros(n, dtype=np.int64)
                k = 1
                while True:
                    hit = (cur == 0) & (orders == 0)
                    orders[hit] = k
                    if orders.all():
                        break
                    cur = self.mul[cur, idx].astype(np.int64)
                    k += 1
                self._cache["orders"] = orders
            return self._cache["orders"]

    @property
    def conjugacy_classes(self) -> list[np.ndarray]:
        with self._lock:
            if "classes" not in self._cache:
                seen = np.zeros(self.order, dtype=bool)
                classes = []
                for x in range(self.order):
                    if seen[x]:
                        continue
                    cl = np.unique(self.conj_all(x))
                    seen[cl] = True
                    classes.append(cl)
                self._cache["classes"] = classes
            return self._cache["classes"]

    # -- subgroup level ---------------------------------------------------

    def closure_array(self, gens: Iterable[int], limit: int | None = None) -> np.ndarray | None:
        """Sorted members of <gens>; None once more than ``limit`` are reached."""
        gens = np.asarray(sorted(set(int(g) for g in gens) - {0}), dtype=np.int64)
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        if gens.size == 0:
            return np.array([0], dtype=np.int64)
        frontier = np.array([0], dtype=np.int64)
        count = 1
        while frontier.size:
            new = np.unique(self.mul[frontier][:, gens].ravel())
            new = new[~mask[new]]
            if new.size == 0:
                break
            mask[new] = True
            count += new.size
            if limit is not None and count > limit:
                return None
            frontier = new.astype(np.int64)
        return np.nonzero(mask)[0]

    def closure(self, gens: Iterable[int]) -> SubgroupHandle:
        gens = [int(g) for g in gens]
        for g in gens:
            if not 0 <= g < self.order:
                raise BadInput(f"element index {g} out of range")
        return handle(self.closure_array(gens), [g for g in gens if g != 0])

    @property
    def whole(self) -> SubgroupHandle:
        return SubgroupHandle(tuple(range(self.order)), self.generators)

    @property
    def trivial(self) -> SubgroupHandle:
        return SubgroupHandle((0,), ())

    def mask(self, members) -> np.ndarray:
        m = np.zeros(self.order, dtype=bool)
        m[np.asarray(members, dtype=np.int64)] = True
        return m

    def conjugate_array(self, members: np.ndarray, x: int) -> np.ndarray:
        members = np.asarray(members, dtype=np.int64)
        return np.sort(self.mul[self.inv[x], self.mul[members, x]].astype(np.int64))

    def conjugate(self, h: SubgroupHandle, x: int) -> SubgroupHandle:
        gens = [int(self.mul[self.inv[x], self.mul[g, x]]) for g in h.generators]
        return SubgroupHandle(tuple(int(v) for v in self.conjugate_array(h.array, x)), tuple(gens))

    def normalizer_mask(self, members: np.ndarray, gens: Sequence[int]) -> np.ndarray:
        """Mask of g with K^g = K, for K = <gens> with the given members."""
        kmask = self.mask(members)
        out = np.ones(self.order, dtype=bool)
        for k in gens:
            out &= kmask[self.conj_all(int(k))]
        return out

    def normalizer(self, h: SubgroupHandle) -> SubgroupHandle:
        gens = h.generators or _generators_of(self, h.array)
        members = np.nonzero(self.normalizer_mask(h.array, gens))[0]
        return handle(members, _generators_of(self, members))

    def is_subgroup(self, members) -> bool:
        members = np.asarray(members, dtype=np.int64)
        m = self.mask(members)
        return bool(m[0] and m[self.mul[np.ix_(members, members)]].all())

    def is_normal(self, h: SubgroupHandle) -> bool:
        gens = h.generators or _generators_of(self, h.array)
        hmask = self.mask(h.array)
        for k in gens:
            for g in self.generators:
                if not hmask[self.mul[self.inv[g], self.mul[k, g]]]:
                    return False
        return True

    def normal_closure(self, h: SubgroupHandle, within: SubgroupHandle | None = None) -> SubgroupHandle:
        """Smallest subgroup normal in ``within`` (default G) containing h."""
        conj_by = within.generators if within is not None else self.generators
        if within is not None and not conj_by:
            conj_by = _generators_of(self, within.array)
        gens = list(h.generators or _generators_of(self, h.array))
        members = self.closure_array(gens)
        while True:
            mmask = self.mask(members)
            extra = []
            for k in gens:
                for g in conj_by:
                    c = int(self.mul[self.inv[g], self.mul[k, g]])
                    if not mmask[c]:
                        extra.append(c)
            if not extra:
                return handle(members, gens)
            gens.extend(sorted(set(extra)))
            members = self.closure_array(gens)

    def derived_subgroup(self, h: SubgroupHandle | None = None) -> SubgroupHandle:
        h = h or self.whole
        gens = h.generators or _generators_of(self, h.array)
        comms = set()
        for a in gens:
            for b in gens:
                c = int(self.mul[self.mul[self.inv[a], self.inv[b]], self.mul[a, b]])
                if c:
                    comms.add(c)
        if not comms:
            return self.trivial
        base = handle(self.closure_array(comms), sorted(comms))
        return self.normal_closure(base, within=h)

    def is_solvable(self, h: SubgroupHandle | None = None) -> bool:
        h = h or self.whole
        while h.order > 1:
            d = self.derived_subgroup(h)
            if d.order == h.order:
                return False
            h = d
        return True

    def is_perfect(self, h: SubgroupHandle) -> bool:
        return self.derived_subgroup(h).order == h.order

    def is_abelian(self, h: SubgroupHandle | None = None) -> bool:
        h = h or self.whole
        gens = h.generators or _generators_of(self, h.array)
        return all(self.mul[a, b] == self.mul[b, a] for a in gens for b in gens)

    def intersection(self, a: SubgroupHandle, b: SubgroupHandle) -> SubgroupHandle:
        common = np.intersect1d(a.array, b.array)
        return handle(common, _generators_of(self, common))

    def join(self, a: SubgroupHandle, b: SubgroupHandle) -> SubgroupHandle:
        gens = list(a.generators) + list(b.generators)
        return handle(self.closure_array(gens), gens)

    def center(self) -> SubgroupHandle:
        mask = np.ones(self.order, dtype=bool)
        for g in self.generators:
            mask &= self.mul[:, g] == self.mul[g, :]
        members = np.nonzero(mask)[0]
        return handle(members, _generators_of(self, members))

    def centralizer_mask(self, elements: Iterable[int]) -> np.ndarray:
        mask = np.ones(self.order, dtype=bool)
        for x in elements:
            mask &= self.mul[:, x] == self.mul[x, :]
        return mask

    # -- derived groups ---------------------------------------------------

    def quotient(self, n: SubgroupHandle) -> "FiniteGroup":
        """G/N on right cosets, cosets ordered by their smallest member."""
        if not self.is_normal(n):
            raise NotNormal("quotient by a subgroup that is not normal")
        coset_of = np.full(self.order, -1, dtype=np.int64)
        reps = []
        narr = n.array.astype(np.int64)
        for g in range(self.order):
            if coset_of[g] < 0:
                coset_of[self.mul[narr, g].astype(np.int64)] = len(reps)
                reps.append(g)
        reps = np.asarray(reps, dtype=np.int64)
        qmul = coset_of[self.mul[np.ix_(reps, reps)].astype(np.int64)]
        gens = sorted({int(coset_of[g]) for g in self.generators} - {0})
        info = {"parent_order": self.order, "kernel_order": n.order,
                "coset_of": coset_of, "reps": reps}
        return FiniteGroup.from_table(qmul, gens, [int(r) for r in reps], "quotient", info)

    def subgroup_as_group(self, h: SubgroupHandle) -> "FiniteGroup":
        """The subgroup as a group in its own right; labels are parent indices."""
        arr = h.array.astype(np.int64)
        pos = np.full(self.order, -1, dtype=np.int64)
        pos[arr] = np.arange(arr.size)
        smul = pos[self.mul[np.ix_(arr, arr)].astype(np.int64)]
        gens = h.generators or _generators_of(self, arr)
        gens = [int(pos[g]) for g in gens if g != 0]
        info = {"parent_order": self.order, "embedding": arr}
        return FiniteGroup.from_table(smul, gens, [int(x) for x in arr], "subgroup", info)

    def describe(self, x: int):
        """JSON-friendly native label of element ``x``."""
        lab = self.labels[x]
        if self.backend == "perm":
            return list(lab)
        if self.backend == "semidirect":
            h, v = lab
            return {"h": int(h), "v": [int(c) for c in v]}
        return int(lab) if isinstance(lab, (int, np.integer)) else lab


def _generators_of(g: FiniteGroup, members: np.ndarray) -> list[int]:
    """A small generating set of the subgroup with the given members.

    Greedy: add the largest-order remaining element outside the current
    closure until it is everything.
    """
    members = np.asarray(members, dtype=np.int64)
    if members.size <= 1:
        return []
    orders = g.element_orders[members]
    ranked = members[np.lexsort((members, -orders))]
    gens: list[int] = []
    cur = np.array([0], dtype=np.int64)
    cmask = g.mask(cur)
    for x in ranked:
        if cmask[x]:
            continue
        gens.append(int(x))
        cur = g.closure_array(gens)
        if cur.size == members.size:
            break
        cmask = g.mask(cur)
    return gens


generators_of = _generators_of
