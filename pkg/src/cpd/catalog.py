"""Named groups and modules with their known Cp^d memberships.

Simple groups come as permutation groups on their natural point sets:
A_n on n points, PSL(2, q) on the q + 1 points of the projective line,
PSL(3, 2) on the 7 points of the Fano plane, M_11 on 11 points. Module-backed
entries (``singer(...)``, ``diag(...)``, ``Q8_GL23``) are semidirect products.
"""

from __future__ import annotations

import ast
import re
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .errors import UnknownName
from .group import FiniteGroup
from .modrep import HModule, diagonal_module, homogeneous_sum, semidirect_group, singer_module


@dataclass
class CatalogEntry:
    name: str
    group: FiniteGroup | None
    module: HModule | None = None
    # (p, d) pairs asserted to be nontrivial memberships; for the simple groups
    # the list is complete, so any other (p, d) with p^d <= |S|_p is a non-member
    members: list[tuple[int, int]] = field(default_factory=list)
    complete: bool = False
    expected_order: int | None = None
    note: str = ""


def _cycle_perm(degree: int, *cycles) -> list[int]:
    img = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            img[a] = b
    return img


def alternating(n: int) -> FiniteGroup:
    """A_n on n points; generated by (0 1 2) and an (n-1)- or (n-2)-cycle."""
    if n < 3:
        return FiniteGroup.from_permutations(max(n, 1), [], name=f"A{n}")
    a = _cycle_perm(n, [0, 1, 2])
    if n % 2:
        b = _cycle_perm(n, list(range(2, n)))
    else:
        b = _cycle_perm(n, [0, 1], list(range(2, n)))
    return FiniteGroup.from_permutations(n, [a, b], name=f"A{n}")


def psl2(q: int) -> FiniteGroup:
    """PSL(2, q), q prime, on the projective line {0..q-1, inf=q}.

    Generated by x -> x + 1 and x -> -1/x.
    """
    inf = q
    t = [(x + 1) % q for x in range(q)] + [inf]
    s = [inf] + [(-pow(x, q - 2, q)) % q for x in range(1, q)] + [0]
    return FiniteGroup.from_permutations(q + 1, [t, s], name=f"PSL(2,{q})")


def _matrix_perm_group(p: int, mats, name: str, include_zero: bool = False) -> FiniteGroup:
    """Matrix group acting on row vectors of F_p^n (nonzero ones by default)."""
    n = mats[0].shape[0]
    vecs = [v for v in product(range(p), repeat=n) if include_zero or any(v)]
    index = {v: i for i, v in enumerate(vecs)}
    gens = []
    for a in mats:
        gens.append([index[tuple(int(x) for x in (np.array(v) @ a) % p)] for v in vecs])
    return FiniteGroup.from_permutations(len(vecs), gens, name=name)


def psl3_2() -> FiniteGroup:
    """GL(3,2) = PSL(3,2) on the 7 nonzero vectors of F_2^3."""
    singer = np.array([[0, 1, 0], [0, 0, 1], [1, 1, 0]])
    transvection = np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    return _matrix_perm_group(2, [singer, transvection], "PSL(3,2)")


def mathieu11() -> FiniteGroup:
    a = _cycle_perm(11, list(range(11)))
    b = _cycle_perm(11, [2, 6, 10, 7], [3, 9, 4, 5])
    return FiniteGroup.from_permutations(11, [a, b], name="M11")


def q8_module() -> HModule:
    """Q_8 inside GL(2, 3) acting naturally."""
    i = np.array([[0, 1], [2, 0]])
    j = np.array([[1, 1], [1, 2]])
    return HModule(3, [i, j], name="Q8_GL23")


def _f9_block(a: int, b: int) -> np.ndarray:
    # multiplication by a + b*i on F_9 = F_3[i]/(i^2 + 1), basis (1, i), row vectors
    return np.array([[a, b], [-b % 3, a]])


def q8_scalar_f9_module() -> HModule:
    """Q_8 together with F_9 scalars of order 8, over F_3 in dimension 4.

    Irreducible over F_3 with a 2-dimensional commutant: a non-cyclic,
    not absolutely irreducible faithful module (acting group of order 32).
    """
    def lift(m):
        return np.block([[_f9_block(*m[r][c]) for c in range(2)] for r in range(2)]) % 3

    i = [[(0, 0), (1, 0)], [(2, 0), (0, 0)]]
    j = [[(1, 0), (1, 0)], [(1, 0), (2, 0)]]
    zeta = [[(1, 1), (0, 0)], [(0, 0), (1, 1)]]
    return HModule(3, [lift(i), lift(j), lift(zeta)], name="Q8xF9")


def frobenius21_module() -> HModule:
    """C_7 ⋊ C_3 acting on F_2^3 (Singer cycle plus Frobenius): irreducible, non-cyclic."""
    singer = np.array([[0, 1, 0], [0, 0, 1], [1, 1, 0]])
    # squaring map on F_8 = F_2[x]/(x^3 + x + 1) in the basis 1, x, x^2
    frob = np.array([[1, 0, 0], [0, 0, 1], [0, 1, 1]])
    return HModule(2, [singer, frob], name="F21_F2^3")


def c3_on_c4xc4() -> FiniteGroup:
    """C_3 ⋉ (C_4 × C_4) as affine maps of (Z/4)^2, degree 16.

    The order-3 matrix reduces mod 2 to the Singer cycle of GL(2, 2), so the
    Frattini quotient carries the Singer action.
    """
    pts = [(a, b) for a in range(4) for b in range(4)]
    index = {v: i for i, v in enumerate(pts)}

    def perm(f):
        return [index[f(a, b)] for a, b in pts]

    gens = [
        perm(lambda a, b: ((a + 1) % 4, b)),
        perm(lambda a, b: (a, (b + 1) % 4)),
        perm(lambda a, b: ((3 * b) % 4, (a + 3 * b) % 4)),
    ]
    return FiniteGroup.from_permutations(16, gens, name="C3:(C4xC4)")


def heisenberg_c2() -> FiniteGroup:
    """Order-27 Heisenberg group over F_3 extended by diag(1, -1, 1), order 54.

    The involution inverts both generators modulo the centre, so the
    Frattini quotient splits into 1-dimensional pieces.
    """
    x = np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    y = np.array([[1, 0, 0], [0, 1, 1], [0, 0, 1]])
    t = np.diag([1, 2, 1])
    return _matrix_perm_group(3, [x, y, t], "Heis(3):C2")


_SIMPLE = {
    "A7": (lambda: alternating(7), [(7, 1)], 2520, "alternating group A_p with p = 7"),
    "PSL(2,7)": (lambda: psl2(7), [(7, 1), (2, 3)], 168, "p^d = 7 via PSL(3,2); p^d = 2^3 = q + 1"),
    "PSL(3,2)": (psl3_2, [(7, 1), (2, 3)], 168, "p = (q^n - 1)/(q - 1) = 7; isomorphic to PSL(2,7)"),
    "PSL(2,11)": (lambda: psl2(11), [(11, 1)], 660, "p^d = 11"),
    "M11": (mathieu11, [(11, 1)], 7920, "p^d = 11; lattice needs --cap 8000"),
}

_SMALL = {
    "A4": (lambda: FiniteGroup.from_permutations(4, [[1, 2, 0, 3], [0, 2, 3, 1]], name="A4"), 12),
    "S3": (lambda: FiniteGroup.from_permutations(3, [[1, 0, 2], [1, 2, 0]], name="S3"), 6),
    "S4": (lambda: FiniteGroup.from_permutations(4, [[1, 2, 3, 0], [1, 0, 2, 3]], name="S4"), 24),
    "D8": (lambda: FiniteGroup.from_permutations(4, [[1, 2, 3, 0], [0, 3, 2, 1]], name="D8"), 8),
    "A5": (lambda: alternating(5), 60),
    "SL(2,3)": (lambda: _matrix_perm_group(3, [np.array([[1, 1], [0, 1]]), np.array([[1, 0], [1, 1]])],
                                           "SL(2,3)"), 24),
}

NAMES = sorted(_SIMPLE) + sorted(_SMALL) + ["Q8_GL23", "singer(p,e,m,t)", "diag(p,c1,...,cn)"]


def _parse_call(name: str):
    m = re.fullmatch(r"\s*(\w+)\s*\((.*)\)\s*", name)
    if not m:
        return None, None
    try:
        args = ast.literal_eval(f"({m.group(2)},)")
    except (ValueError, SyntaxError) as exc:
        raise UnknownName(f"cannot parse catalog arguments in {name!r}") from exc
    return m.group(1).lower(), args


def module_entry(name: str) -> HModule | None:
    """The module behind a module-backed catalog name, else None."""
    if name == "Q8_GL23":
        return q8_module()
    fn, args = _parse_call(name)
    if fn == "singer":
        if len(args) not in (3, 4) or not all(isinstance(a, int) for a in args):
            raise UnknownName("singer takes (p, e, m) or (p, e, m, t)")
        p, e, m = args[:3]
        t = args[3] if len(args) == 4 else 1
        return homogeneous_sum(singer_module(p, e, m), t)
    if fn == "diag":
        if len(args) < 2 or not isinstance(args[0], int):
            raise UnknownName("diag takes (p, c1, ..., cn) or (p, [..], [..], ...)")
        p = args[0]
        rest = args[1:]
        if all(isinstance(a, int) for a in rest):
            chars = [list(rest)]
        elif all(isinstance(a, (list, tuple)) for a in rest):
            chars = [list(a) for a in rest]
        else:
            raise UnknownName("diag characters must be all integers or all lists")
        return diagonal_module(p, chars)
    return None


def catalog(name: str) -> CatalogEntry:
    """Build a named group. Lattice-based work on entries above the lattice
    cap (M11) raises CapExceeded unless the cap is raised."""
    if name in _SIMPLE:
        build, members, order, note = _SIMPLE[name]
        return CatalogEntry(name, build(), members=list(members), complete=True,
                            expected_order=order, note=note)
    if name in _SMALL:
        build, order = _SMALL[name]
        return CatalogEntry(name, build(), expected_order=order)
    mod = module_entry(name)
    if mod is None:
        raise UnknownName(f"unknown catalog name {name!r}; known: {', '.join(NAMES)}")
    return CatalogEntry(name, semidirect_group(mod), module=mod,
                        expected_order=mod.h_order * mod.p**mod.n)
