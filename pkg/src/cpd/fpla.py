"""Dense linear algebra over the prime field F_p.

Matrices are numpy int64 arrays with entries in [0, p). Vectors are rows and
matrices act on the right (``v @ A``), which matches the module convention
used throughout the package.
"""

from __future__ import annotations

import numpy as np


def as_fp(a, p: int) -> np.ndarray:
    return np.asarray(a, dtype=np.int64) % p


def inv_mod(a: int, p: int) -> int:
    return pow(int(a) % p, p - 2, p)


def rref(a, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p.

    Returns ``(R, pivots)`` where ``R`` keeps the input shape, pivot entries
    are 1 and every other entry of a pivot column is 0. Zero rows are at the
    bottom.
    """
    r = as_fp(a, p).copy()
    if r.ndim != 2:
        raise ValueError("expected a 2-d array")
    rows, cols = r.shape
    pivots: list[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        nz = np.nonzero(r[row:, col])[0]
        if nz.size == 0:
            continue
        piv = row + int(nz[0])
        if piv != row:
            r[[row, piv]] = r[[piv, row]]
        r[row] = r[row] * inv_mod(r[row, col], p) % p
        factors = r[:, col].copy()
        factors[row] = 0
        hit = np.nonzero(factors)[0]
        if hit.size:
            r[hit] = (r[hit] - np.outer(factors[hit], r[row])) % p
        pivots.append(col)
        row += 1
    return r, pivots


def row_space(a, p: int) -> np.ndarray:
    """Canonical basis (nonzero RREF rows) of the row space."""
    a = as_fp(a, p)
    if a.size == 0:
        return np.zeros((0, a.shape[-1] if a.ndim == 2 else 0), dtype=np.int64)
    r, piv = rref(a, p)
    return r[: len(piv)].copy()


def rank(a, p: int) -> int:
    a = as_fp(a, p)
    if a.size == 0:
        return 0
    return len(rref(a, p)[1])


def nullspace(a, p: int) -> np.ndarray:
    """Basis of {x : A x^T = 0}, returned as rows (so ``A @ B.T == 0``)."""
    a = as_fp(a, p)
    rows, cols = a.shape
    r, piv = rref(a, p) if rows else (a, [])
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for k, pc in enumerate(piv):
            basis[i, pc] = (-r[k, f]) % p
    return basis


def left_nullspace(a, p: int) -> np.ndarray:
    """Basis of {v : v A = 0} as rows."""
    return nullspace(as_fp(a, p).T, p)


def inverse(a, p: int) -> np.ndarray:
    a = as_fp(a, p)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("inverse of a non-square matrix")
    aug = np.concatenate([a, np.eye(n, dtype=np.int64)], axis=1)
    r, piv = rref(aug, p)
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular mod p")
    return r[:, n:].copy()


def is_invertible(a, p: int) -> bool:
    a = as_fp(a, p)
    return a.shape[0] == a.shape[1] and rank(a, p) == a.shape[0]


def matmul(a, b, p: int) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64)) % p


def in_row_space(v, basis, p: int) -> bool:
    basis = as_fp(basis, p)
    if basis.shape[0] == 0:
        return not np.any(as_fp(v, p))
    return rank(np.vstack([basis, as_fp(v, p)[None, :]]), p) == basis.shape[0]


def coordinates(v, basis, p: int) -> np.ndarray:
    """Coefficients c with c @ basis == v; basis rows must be independent."""
    basis = as_fp(basis, p)
    k = basis.shape[0]
    aug = np.concatenate([basis.T, as_fp(v, p)[:, None]], axis=1)
    r, piv = rref(aug, p)
    if k in piv:
        raise ValueError("vector is not in the span")
    out = np.zeros(k, dtype=np.int64)
    for row, c in enumerate(piv):
        out[c] = r[row, k]
    return out


def solve_rows(basis, targets, p: int) -> np.ndarray:
    """Matrix C with C @ basis == targets (row by row)."""
    targets = as_fp(targets, p)
    return np.array([coordinates(t, basis, p) for t in targets], dtype=np.int64).reshape(
        targets.shape[0], as_fp(basis, p).shape[0]
    )


def vectors(n: int, p: int) -> np.ndarray:
    """All p**n vectors of F_p^n in lexicographic order."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((p,) * n).reshape(n, -1).T
    return grids.astype(np.int64)


def encode(v, p: int) -> int:
    """Base-p integer code of a vector (first coordinate most significant)."""
    code = 0
    for x in np.asarray(v).tolist():
        code = code * p + int(x)
    return code


def block_diag(blocks, p: int) -> np.ndarray:
    n = sum(b.shape[0] for b in blocks)
    out = np.zeros((n, n), dtype=np.int64)
    i = 0
    for b in blocks:
        k = b.shape[0]
        out[i : i + k, i : i + k] = b
        i += k
    return out % p
