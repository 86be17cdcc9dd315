"""Exact integer and prime-field linear algebra.

Integer matrices are numpy arrays of dtype int64 or object (Python ints).
Elimination starts in int64 and switches to object dtype as soon as an entry
could overflow, so results are always exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .groupring import is_prime

__all__ = [
    "SmithForm",
    "smith_normal_form",
    "rank_mod_p",
    "row_reduce_mod_p",
    "kernel_basis",
    "column_basis_mod_p",
    "solve_mod_p",
    "integer_kernel",
    "rational_rank",
    "determinant",
    "write_matrix",
    "read_matrix",
    "VERIFICATION_PRIME",
]

# (p-1)^2 must fit in int64 for the modular kernels below.
VERIFICATION_PRIME = 2_147_483_647
_INT64_SAFE = 1 << 31


def _as_int_matrix(A) -> np.ndarray:
    A = np.asarray(A)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {A.shape}")
    if A.dtype == object:
        return A.copy()
    if not np.issubdtype(A.dtype, np.integer):
        raise TypeError(f"expected integer entries, got {A.dtype}")
    return A.astype(np.int64, copy=True)


def _max_abs(A: np.ndarray) -> int:
    if A.size == 0:
        return 0
    return int(np.max(np.abs(A)))


@dataclass
class SmithForm:
    """Invariant factors ``d_1 | d_2 | ... | d_r`` of an integer matrix.

    When transforms were requested, ``U @ A @ V`` equals the diagonal matrix
    ``D`` and both transforms are unimodular.
    """

    shape: tuple[int, int]
    factors: list[int]
    U: np.ndarray | None = field(default=None, repr=False)
    V: np.ndarray | None = field(default=None, repr=False)

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def torsion(self) -> list[int]:
        return [d for d in self.factors if d != 1]

    def diagonal(self) -> np.ndarray:
        D = np.zeros(self.shape, dtype=object)
        for i, d in enumerate(self.factors):
            D[i, i] = d
        return D


def smith_normal_form(A, transforms: bool = False) -> SmithForm:
    """Smith normal form by least-absolute-value pivoting.

    Each pivot is reduced against its row and column until it divides them,
    then against the remaining submatrix so the divisibility chain holds
    without a post-processing pass.
    """
    M = _as_int_matrix(A)
    m, n = M.shape
    U = V = None
    if transforms:
        M = M.astype(object)
        U = np.eye(m, dtype=np.int64).astype(object)
        V = np.eye(n, dtype=np.int64).astype(object)

    def promote():
        nonlocal M
        if M.dtype != object and _max_abs(M) >= _INT64_SAFE:
            M = M.astype(object)

    factors: list[int] = []
    t = 0
    while t < min(m, n):
        promote()
        sub = M[t:, t:]
        nz = sub != 0
        if not nz.any():
            break
        absval = np.abs(sub)
        big = absval.max() + 1
        i, j = np.unravel_index(np.argmin(np.where(nz, absval, big)), sub.shape)
        _swap(M, U, V, t, t + int(i), t, t + int(j))
        while True:
            promote()
            piv = M[t, t]
            col = M[t + 1:, t]
            rows = np.nonzero(col)[0] + t + 1
            if rows.size:
                q = M[rows, t] // piv
                M[rows, t:] -= np.outer(q, M[t, t:]).astype(M.dtype)
                if U is not None:
                    U[rows] -= np.outer(q, U[t])
            row = M[t, t + 1:]
            cols = np.nonzero(row)[0] + t + 1
            if cols.size:
                q = M[t, cols] // piv
                M[t:, cols] -= np.outer(M[t:, t], q).astype(M.dtype)
                if V is not None:
                    V[:, cols] -= np.outer(V[:, t], q)
            rest_col = np.nonzero(M[t + 1:, t])[0]
            rest_row = np.nonzero(M[t, t + 1:])[0]
            if rest_col.size or rest_row.size:
                # a remainder is smaller than the pivot: make it the pivot
                cands = [(abs(M[t + 1 + r, t]), 0, t + 1 + r) for r in rest_col]
                cands += [(abs(M[t, t + 1 + c]), 1, t + 1 + c) for c in rest_row]
                _, axis, idx = min(cands)
                if axis == 0:
                    _swap(M, U, V, t, idx, t, t)
                else:
                    _swap(M, U, V, t, t, t, idx)
                continue
            inner = M[t + 1:, t + 1:]
            bad = np.argwhere(inner % piv != 0) if inner.size else np.empty((0, 2))
            if len(bad):
                r = t + 1 + int(bad[0][0])
                M[t] += M[r]
                if U is not None:
                    U[t] += U[r]
                continue
            break
        if M[t, t] < 0:
            M[t] = -M[t]
            if U is not None:
                U[t] = -U[t]
        factors.append(int(M[t, t]))
        t += 1
    return SmithForm((m, n), factors, U, V)


def _swap(M, U, V, r1, r2, c1, c2):
    if r1 != r2:
        M[[r1, r2]] = M[[r2, r1]]
        if U is not None:
            U[[r1, r2]] = U[[r2, r1]]
    if c1 != c2:
        M[:, [c1, c2]] = M[:, [c2, c1]]
        if V is not None:
            V[:, [c1, c2]] = V[:, [c2, c1]]


def rational_rank(A) -> int:
    return smith_normal_form(A).rank


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p >= _INT64_SAFE + 1 and p != VERIFICATION_PRIME:
        raise ValueError(f"prime {p} too large for int64 elimination")


def _mod_array(A, p: int) -> np.ndarray:
    A = np.asarray(A)
    if A.dtype == object:
        return np.array([[int(x) % p for x in row] for row in A], dtype=np.int64).reshape(A.shape)
    return np.mod(A.astype(np.int64), p)


def row_reduce_mod_p(A, p: int, reduced: bool = True) -> tuple[np.ndarray, list[int]]:
    """Row echelon form over F_p; fully reduced (RREF) when ``reduced``."""
    _check_prime(p)
    R = _mod_array(A, p)
    m, n = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        inv = pow(int(R[r, c]), -1, p)
        R[r, c:] = (R[r, c:] * inv) % p
        targets = np.nonzero(R[:, c])[0] if reduced else r + 1 + np.nonzero(R[r + 1:, c])[0]
        targets = targets[targets != r]
        if targets.size:
            R[np.ix_(targets, np.arange(c, n))] = (
                R[np.ix_(targets, np.arange(c, n))] - np.outer(R[targets, c], R[r, c:])
            ) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank_mod_p(A, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    # eliminate along the shorter side
    if A.shape[0] > A.shape[1]:
        A = A.T
    return len(row_reduce_mod_p(A, p, reduced=False)[1])


def kernel_basis(A, p: int) -> list[np.ndarray]:
    """Basis of the right null space of ``A`` over F_p."""
    A = np.asarray(A)
    n = A.shape[1]
    R, pivots = row_reduce_mod_p(A, p)
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = np.zeros(n, dtype=np.int64)
        v[f] = 1
        for row, c in enumerate(pivots):
            v[c] = (-R[row, f]) % p
        basis.append(v)
    return basis


def column_basis_mod_p(A, p: int) -> np.ndarray:
    """Linearly independent columns of ``A`` spanning its column space mod p."""
    A = _mod_array(A, p)
    _, pivots = row_reduce_mod_p(A, p, reduced=False)
    return A[:, pivots]


def solve_mod_p(A, B, p: int) -> np.ndarray:
    """Solve ``A X = B`` over F_p for ``A`` of full column rank."""
    A = _mod_array(A, p)
    B = _mod_array(B, p)
    if B.ndim == 1:
        B = B[:, None]
    m, n = A.shape
    R, pivots = row_reduce_mod_p(np.hstack([A, B]), p)
    if pivots[:n] != list(range(n)) or any(c >= n for c in pivots):
        raise ValueError("system is singular or inconsistent mod p")
    return R[:n, n:]


def integer_kernel(A) -> np.ndarray:
    """Columns form a basis of the (saturated) integer kernel of ``A``."""
    snf = smith_normal_form(A, transforms=True)
    return snf.V[:, snf.rank:]


def determinant(A) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    M = [[int(x) for x in row] for row in np.asarray(A)]
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("determinant of a non-square matrix")
    sign, prev = 1, 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1] if n else 1


def solve_rational(A, b) -> list[Fraction]:
    """Exact solution of a square nonsingular system over Q."""
    M = [[Fraction(int(x)) for x in row] + [Fraction(int(y))] for row, y in zip(np.asarray(A), b)]
    n = len(M)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise ValueError("singular system")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n] for row in M]


def write_matrix(path: str | Path, A) -> None:
    """Plain text: ``rows cols`` header, then one row of integers per line."""
    A = np.asarray(A)
    lines = [f"{A.shape[0]} {A.shape[1]}"]
    lines += [" ".join(str(int(x)) for x in row) for row in A]
    Path(path).write_text("\n".join(lines) + "\n")


def read_matrix(path: str | Path) -> np.ndarray:
    tokens = Path(path).read_text().split()
    rows, cols = int(tokens[0]), int(tokens[1])
    vals = [int(x) for x in tokens[2:]]
    if len(vals) != rows * cols:
        raise ValueError(f"expected {rows * cols} entries, found {len(vals)}")
    dtype = object if any(abs(v) >= 1 << 62 for v in vals) else np.int64
    return np.array(vals, dtype=dtype).reshape(rows, cols)


def gcd_list(values: Sequence[int]) -> int:
    g = 0
    for v in values:
        g = math.gcd(g, int(v))
    return g
