"""F_p[H]-modules for p'-groups H given by matrices.

Vectors are rows and H acts on the right: ``v . h = v @ rho(h)``. With the
semidirect multiplication ``(h1, v1)(h2, v2) = (h1 h2, v1 rho(h2) + v2)`` this
makes conjugation of a translation by ``(h, 0)`` equal to applying rho(h).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Sequence

import numpy as np

from . import fpla
from .errors import BadParameters, CapExceeded, NotFaithful, NotInvariant
from .group import ELEMENT_CAP, FiniteGroup, SubgroupHandle, generators_of, handle
from .numtheory import is_prime, multiplicative_order, prime_divisors

SPIN_CAP = 2**20


def _mkey(a: np.ndarray) -> bytes:
    return np.ascontiguousarray(a, dtype=np.int64).tobytes()


def matrix_closure(gens: Sequence[np.ndarray], p: int, n: int, cap: int = ELEMENT_CAP) -> list[np.ndarray]:
    """All products of the generators, identity first, BFS layers sorted."""
    ident = np.eye(n, dtype=np.int64)
    out = [ident]
    seen = {_mkey(ident)}
    layer = [ident]
    while layer:
        fresh = {}
        for x in layer:
            for g in gens:
                y = (x @ g) % p
                k = _mkey(y)
                if k not in seen and k not in fresh:
                    fresh[k] = y
        layer = [fresh[k] for k in sorted(fresh, key=lambda k: tuple(np.frombuffer(k, dtype=np.int64)))]
        seen.update(fresh)
        out.extend(layer)
        if len(out) > cap:
            raise CapExceeded(f"matrix group order exceeds cap {cap}")
    return out


class HModule:
    """An action of a p'-group on F_p^n by invertible matrices.

    ``group_generators`` optionally names the abstract acting group by a
    faithful matrix realization of it (same number of generators). It is set
    on restrictions to submodules so that kernels stay visible; when absent
    the acting group is the matrix group generated by ``generators``.
    """

    def __init__(self, p: int, generators: Sequence, group_generators: Sequence | None = None,
                 name: str | None = None, require_pprime: bool = True, n: int | None = None):
        if not is_prime(p):
            raise BadParameters(f"{p} is not prime")
        gens = [fpla.as_fp(g, p) for g in generators]
        if n is None:
            if not gens:
                raise BadParameters("need at least one generator or an explicit dimension")
            n = gens[0].shape[0]
        for g in gens:
            if g.shape != (n, n):
                raise BadParameters("generators must be square of equal size")
            if n and not fpla.is_invertible(g, p):
                raise BadParameters("generator matrix is singular mod p")
        if not gens:
            gens = [np.eye(n, dtype=np.int64)]
        self.p = p
        self.n = n
        self.generators = gens
        self.group_generators = None if group_generators is None else [np.asarray(g, dtype=np.int64) for g in group_generators]
        if self.group_generators is not None and len(self.group_generators) != len(gens):
            raise BadParameters("group_generators must match generators one to one")
        self.name = name
        if require_pprime and math.gcd(self.h_order, p) != 1:
            raise BadParameters(f"acting group of order {self.h_order} is not a {p}'-group")

    def __repr__(self):
        return f"HModule(p={self.p}, n={self.n}, h_order={self.h_order})"

    @cached_property
    def matrix_group(self) -> list[np.ndarray]:
        """Image of the acting group in GL(n, p)."""
        return matrix_closure(self.generators, self.p, self.n)

    @cached_property
    def _pairs(self) -> list[tuple[np.ndarray, np.ndarray]]:
        """Closure of (abstract, image) generator pairs: the graph of rho."""
        if self.group_generators is None:
            return [(m, m) for m in self.matrix_group]
        q = [g.shape[0] for g in self.group_generators][0]
        pgens = [fpla.block_diag([a, b], self.p) for a, b in zip(self.group_generators, self.generators)]
        # group generators live over the same field by construction
        return [(m[:q, :q], m[q:, q:]) for m in matrix_closure(pgens, self.p, q + self.n)]

    @property
    def h_order(self) -> int:
        return len(self._pairs)

    @property
    def kernel(self) -> list[np.ndarray]:
        ident = np.eye(self.n, dtype=np.int64)
        return [a for a, b in self._pairs if np.array_equal(b, ident)]

    @property
    def is_faithful(self) -> bool:
        return len(self.matrix_group) == self.h_order

    @property
    def is_cyclic(self) -> bool:
        """Whether the acting (image) group is cyclic."""
        mats = self.matrix_group
        target = len(mats)
        ident = np.eye(self.n, dtype=np.int64)
        for m in mats:
            k, x = 1, m
            while not np.array_equal(x, ident):
                x = (x @ m) % self.p
                k += 1
            if k == target:
                return True
        return False

    def restrict(self, basis: np.ndarray) -> "HModule":
        """The submodule spanned by ``basis`` rows, in those coordinates."""
        basis = fpla.as_fp(basis, self.p)
        mats = [fpla.solve_rows(basis, fpla.matmul(basis, g, self.p), self.p) for g in self.generators]
        group = self.group_generators or self.generators
        return HModule(self.p, mats, group, require_pprime=False, n=basis.shape[0])

    def nonzero_vectors(self) -> np.ndarray:
        """Nonzero vectors with leading coordinate 1, in lexicographic order."""
        if self.p**self.n > SPIN_CAP:
            raise CapExceeded(f"{self.p}^{self.n} vectors exceeds spin cap {SPIN_CAP}")
        out = []
        for lead in range(self.n):
            tail = fpla.vectors(self.n - lead - 1, self.p)
            block = np.zeros((tail.shape[0], self.n), dtype=np.int64)
            block[:, lead] = 1
            block[:, lead + 1 :] = tail
            out.append(block)
        rows = np.concatenate(out) if out else np.zeros((0, self.n), dtype=np.int64)
        order = np.lexsort(rows.T[::-1])
        return rows[order]


@dataclass(frozen=True, eq=False)
class SubmoduleBasis:
    """An H-invariant subspace stored as its reduced row echelon basis."""

    basis: np.ndarray
    p: int

    @property
    def dim(self) -> int:
        return int(self.basis.shape[0])

    @property
    def key(self) -> tuple:
        return (self.p, self.basis.shape, _mkey(self.basis))

    def __eq__(self, other):
        return isinstance(other, SubmoduleBasis) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def contains(self, v) -> bool:
        return fpla.in_row_space(v, self.basis, self.p)


def submodule(rows, p: int, n: int) -> SubmoduleBasis:
    rows = fpla.as_fp(rows, p).reshape(-1, n)
    return SubmoduleBasis(fpla.row_space(rows, p) if rows.shape[0] else np.zeros((0, n), np.int64), p)


def is_invariant(basis: np.ndarray, m: HModule) -> bool:
    if basis.shape[0] == 0:
        return True
    return all(fpla.rank(np.vstack([basis, fpla.matmul(basis, g, m.p)]), m.p) == basis.shape[0]
               for g in m.generators)


def spin(v, m: HModule) -> SubmoduleBasis:
    """Smallest invariant subspace containing v."""
    p = m.p
    v = fpla.as_fp(v, p).reshape(m.n)
    if not v.any():
        return submodule(np.zeros((0, m.n)), p, m.n)
    ech = fpla.row_space(v[None, :], p)
    queue = [v]
    while queue:
        w = queue.pop()
        for g in m.generators:
            u = (w @ g) % p
            grown = fpla.row_space(np.vstack([ech, u]), p)
            if grown.shape[0] > ech.shape[0]:
                ech = grown
                queue.append(u)
                if ech.shape[0] == m.n:
                    return SubmoduleBasis(ech, p)
    return SubmoduleBasis(ech, p)


def is_irreducible(m: HModule) -> bool:
    if m.n == 0:
        return False
    if m.n == 1:
        return True
    return all(spin(v, m).dim == m.n for v in m.nonzero_vectors())


def maschke_complement(w: SubmoduleBasis, m: HModule) -> SubmoduleBasis:
    """Invariant complement of W, by averaging a projection onto W over H."""
    p, n = m.p, m.n
    if not is_invariant(w.basis, m):
        raise NotInvariant("subspace is not H-invariant")
    mats = m.matrix_group
    if math.gcd(len(mats), p) != 1:
        raise BadParameters("Maschke averaging needs a p'-group")
    if w.dim == 0:
        return SubmoduleBasis(np.eye(n, dtype=np.int64), p)
    if w.dim == n:
        return SubmoduleBasis(np.zeros((0, n), dtype=np.int64), p)
    b, piv = fpla.rref(w.basis, p)
    sel = np.zeros((n, w.dim), dtype=np.int64)
    for i, c in enumerate(piv):
        sel[c, i] = 1
    proj = fpla.matmul(sel, b[: w.dim], p)
    acc = np.zeros((n, n), dtype=np.int64)
    for a in mats:
        acc = (acc + a @ proj @ fpla.inverse(a, p)) % p
    avg = acc * fpla.inv_mod(len(mats), p) % p
    return submodule(fpla.left_nullspace(avg, p), p, n)


def _lift(sub: SubmoduleBasis, basis: np.ndarray, p: int) -> SubmoduleBasis:
    return submodule(fpla.matmul(sub.basis, basis, p), p, basis.shape[1])


def decompose(m: HModule) -> list[SubmoduleBasis]:
    """Irreducible submodules whose direct sum is V.

    At each step the smallest spin (first lexicographic spinning vector among
    those of minimal dimension) is split off with a Maschke complement and
    the complement is decomposed in its own coordinates.
    """
    if m.n == 0:
        return []
    best = None
    for v in m.nonzero_vectors():
        s = spin(v, m)
        if best is None or s.dim < best.dim:
            best = s
            if s.dim == 1:
                break
    if best.dim == m.n:
        return [SubmoduleBasis(np.eye(m.n, dtype=np.int64), m.p)]
    comp = maschke_complement(best, m)
    rest = decompose(m.restrict(comp.basis))
    return [best] + [_lift(s, comp.basis, m.p) for s in rest]


def _intertwiner_system(left: Sequence[np.ndarray], right: Sequence[np.ndarray], p: int) -> np.ndarray:
    """Rows of the linear system A X - X B = 0 in the entries of X (row-major)."""
    k, l = left[0].shape[0], right[0].shape[0]
    blocks = [np.kron(a, np.eye(l, dtype=np.int64)) - np.kron(np.eye(k, dtype=np.int64), b.T)
              for a, b in zip(left, right)]
    return np.vstack(blocks) % p


def are_isomorphic(w: HModule, u: HModule) -> np.ndarray | None:
    """An invertible X with rho_W(g) X = X rho_U(g) for every generator, or None.

    X maps W to U by w -> w X. Both modules must be irreducible actions of
    the same abstract group (same generator list).
    """
    if w.n != u.n or len(w.generators) != len(u.generators):
        return None
    p = w.p
    sol = fpla.nullspace(_intertwiner_system(w.generators, u.generators, p), p)
    for row in sol:
        x = row.reshape(w.n, u.n)
        if fpla.is_invertible(x, p):
            return x
    return None


@dataclass(frozen=True)
class Homogeneity:
    homogeneous: bool
    e: int | None
    t: int
    components: tuple[SubmoduleBasis, ...]


def is_homogeneous(m: HModule) -> Homogeneity:
    comps = decompose(m)
    dims = {c.dim for c in comps}
    if len(dims) != 1:
        return Homogeneity(False, None, len(comps), tuple(comps))
    first = m.restrict(comps[0].basis)
    ok = all(are_isomorphic(first, m.restrict(c.basis)) is not None for c in comps[1:])
    return Homogeneity(ok, dims.pop() if ok else None, len(comps), tuple(comps))


def endomorphism_algebra_dim(m: HModule) -> int:
    """Dimension of the commutant {X : X rho(g) = rho(g) X}."""
    if m.n == 0:
        return 0
    return int(fpla.nullspace(_intertwiner_system(m.generators, m.generators, m.p), m.p).shape[0])


def is_absolutely_irreducible(m: HModule) -> bool:
    return is_irreducible(m) and endomorphism_algebra_dim(m) == 1


def _normalize(v: np.ndarray, p: int) -> np.ndarray:
    nz = np.nonzero(v)[0]
    return v * fpla.inv_mod(v[nz[0]], p) % p


def count_irreducible_submodules(m: HModule) -> int:
    """Number of distinct irreducible submodules, by exhaustive spinning.

    A spin S is irreducible exactly when every nonzero vector of S spins to S.
    """
    p = m.p
    spins: dict[int, tuple] = {}
    distinct: dict[tuple, SubmoduleBasis] = {}
    for v in m.nonzero_vectors():
        s = spin(v, m)
        spins[fpla.encode(v, p)] = s.key
        distinct.setdefault(s.key, s)
    count = 0
    for key, s in distinct.items():
        coeffs = fpla.vectors(s.dim, p)[1:]
        vecs = coeffs @ s.basis % p
        if all(spins[fpla.encode(_normalize(x, p), p)] == key for x in vecs):
            count += 1
    return count


# -- constructions -----------------------------------------------------------


def _matpow(a: np.ndarray, k: int, p: int) -> np.ndarray:
    out = np.eye(a.shape[0], dtype=np.int64)
    base = a % p
    while k:
        if k & 1:
            out = out @ base % p
        base = base @ base % p
        k >>= 1
    return out


def companion(coeffs: Sequence[int], p: int) -> np.ndarray:
    """Companion matrix of x^e + c_{e-1} x^{e-1} + ... + c_0 (coeffs low to high).

    Row i maps to row i+1, so this is multiplication by x on the basis
    1, x, ..., x^{e-1} acting on row vectors.
    """
    e = len(coeffs)
    c = np.zeros((e, e), dtype=np.int64)
    for i in range(e - 1):
        c[i, i + 1] = 1
    c[e - 1] = [(-x) % p for x in coeffs]
    return c


def _primitive_companion(p: int, e: int) -> np.ndarray:
    order = p**e - 1
    ident = np.eye(e, dtype=np.int64)
    for tail in product(range(p), repeat=e):
        coeffs = list(reversed(tail))  # lexicographic over (c_{e-1}, ..., c_0)
        if coeffs[0] == 0:
            continue
        c = companion(coeffs, p)
        if not np.array_equal(_matpow(c, order, p), ident):
            continue
        if all(not np.array_equal(_matpow(c, order // r, p), ident) for r in prime_divisors(order)):
            return c
    raise AssertionError("no primitive polynomial found")


def minimal_polynomial(a: np.ndarray, p: int) -> list[int]:
    """Minimal polynomial of the cyclic vector e_0 under a (monic, low to high)."""
    n = a.shape[0]
    krylov = [np.eye(n, dtype=np.int64)[0]]
    while True:
        nxt = krylov[-1] @ a % p
        basis = np.array(krylov)
        if fpla.in_row_space(nxt, basis, p):
            c = fpla.coordinates(nxt, basis, p)
            return [(-x) % p for x in c.tolist()] + [1]
        krylov.append(nxt)


def singer_module(p: int, e: int, m: int) -> HModule:
    """Cyclic group of order m acting irreducibly on F_p^e (a Singer-cycle subgroup).

    Requires m | p^e - 1 and ord_m(p) = e. The generator is the companion
    matrix of the minimal polynomial of an element of multiplicative order m
    in the field with p^e elements.
    """
    if not is_prime(p) or e < 1 or m < 1:
        raise BadParameters("need p prime, e >= 1, m >= 1")
    if (p**e - 1) % m:
        raise BadParameters(f"{m} does not divide {p}^{e} - 1")
    if multiplicative_order(p, m) != e:
        raise BadParameters(f"multiplicative order of {p} mod {m} is not {e}")
    prim = _primitive_companion(p, e)
    x = _matpow(prim, (p**e - 1) // m, p)
    poly = minimal_polynomial(x, p)
    return HModule(p, [companion(poly[:-1], p)], name=f"singer({p},{e},{m})")


def homogeneous_sum(w: HModule, t: int) -> HModule:
    """Direct sum of t copies of W (block-diagonal action)."""
    if t < 1:
        raise BadParameters("multiplicity must be positive")
    if t == 1:
        return w
    gens = [fpla.block_diag([g] * t, w.p) for g in w.generators]
    name = f"{w.name}^{t}" if w.name else None
    return HModule(w.p, gens, w.group_generators, name=name)


def direct_sum(*modules: HModule) -> HModule:
    """Block-diagonal sum; generator i acts by the i-th generator of each summand."""
    p = modules[0].p
    k = len(modules[0].generators)
    if any(mm.p != p or len(mm.generators) != k for mm in modules):
        raise BadParameters("summands need the same field and generator count")
    gens = [fpla.block_diag([mm.generators[i] for mm in modules], p) for i in range(k)]
    return HModule(p, gens)


def diagonal_module(p: int, characters: Sequence[Sequence[int]]) -> HModule:
    """Each entry of ``characters`` is the diagonal of one generator."""
    gens = [np.diag([int(c) % p for c in chars]) for chars in characters]
    if any(np.any(np.diag(g) == 0) for g in gens):
        raise BadParameters("diagonal entries must be nonzero mod p")
    return HModule(p, gens, name=f"diag({p},{[list(c) for c in characters]})")


def semidirect_group(m: HModule, quotient_kernel: bool = False) -> FiniteGroup:
    """H acting on V = F_p^n, as a group of order |H| p^n.

    Elements are pairs (h, v) with h an index into the acting group's
    canonical element list; the table is ordered by breadth-first closure and
    then by (h, v) within each layer.
    """
    p, n = m.p, m.n
    if not m.is_faithful and not quotient_kernel:
        raise NotFaithful("action has a nontrivial kernel", kernel_witness=m.kernel[1])
    images = m.matrix_group if quotient_kernel or m.group_generators is None else [b for _, b in m._pairs]
    abstract = images if quotient_kernel or m.group_generators is None else [a for a, _ in m._pairs]
    hindex = {_mkey(a): i for i, a in enumerate(abstract)}
    gen_abstract = m.generators if quotient_kernel or m.group_generators is None else m.group_generators
    hmul_cache: dict[tuple[int, int], int] = {}
    q = abstract[0].shape[0]

    def hmul(i, j):
        r = hmul_cache.get((i, j))
        if r is None:
            r = hindex[_mkey(abstract[i] @ abstract[j] % p)]
            hmul_cache[(i, j)] = r
        return r

    act = [tuple(tuple(int(x) for x in row) for row in b) for b in images]

    def compose(a, b):
        h1, v1 = a
        h2, v2 = b
        rho = act[h2]
        w = tuple((sum(v1[i] * rho[i][j] for i in range(n)) + v2[j]) % p for j in range(n))
        return (hmul(h1, h2), w)

    zero = tuple([0] * n)
    gens = [(hindex[_mkey(fpla.as_fp(g, p)[:q, :q])], zero) for g in gen_abstract]
    gens += [(0, tuple(int(i == j) for j in range(n))) for i in range(n)]
    g = FiniteGroup.from_generators(gens, compose, (0, zero), "semidirect",
                                    info={"p": p, "n": n, "h_order": len(abstract)},
                                    name=m.name and f"semidirect[{m.name}]")
    g.info["module"] = m
    g.info["h_matrices"] = images
    return g


def semidirect_parts(g: FiniteGroup) -> tuple[SubgroupHandle, SubgroupHandle]:
    """(H, V) inside a semidirect-backend group: the v = 0 and h = 1 parts."""
    if g.backend != "semidirect":
        raise BadParameters("not a semidirect-product group")
    hs = [i for i, (h, v) in enumerate(g.labels) if not any(v)]
    vs = [i for i, (h, v) in enumerate(g.labels) if h == 0]
    return handle(hs, generators_of(g, np.array(hs))), handle(vs, generators_of(g, np.array(vs)))


def conjugation_module(g: FiniteGroup, pgroup: SubgroupHandle, h: SubgroupHandle, p: int) -> tuple[HModule, np.ndarray]:
    """H acting on an elementary abelian normal p-subgroup P by conjugation.

    P is written additively in a basis of generators chosen greedily; returns
    the module and the basis elements (as element indices of G).
    """
    basis: list[int] = []
    span = np.array([0], dtype=np.int64)
    smask = g.mask(span)
    for x in pgroup.members:
        if not smask[x]:
            basis.append(int(x))
            span = g.closure_array(basis)
            smask = g.mask(span)
    dim = len(basis)
    coords = {}
    for c in fpla.vectors(dim, p):
        x = 0
        for b, k in zip(basis, c.tolist()):
            for _ in range(k):
                x = int(g.mul[x, b])
        coords[x] = c
    hgens = list(h.generators) or [0]
    mats = []
    for y in hgens:
        rows = [coords[int(g.mul[g.inv[y], g.mul[b, y]])] for b in basis]
        mats.append(np.array(rows, dtype=np.int64).reshape(dim, dim))
    return HModule(p, mats, require_pprime=False, n=dim), np.array(basis, dtype=np.int64)
