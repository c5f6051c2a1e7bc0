"""Exact linear algebra over F_{q^m} and F_q, Moore matrices and sum-rank weights.

Matrices over F_{q^m} are 2-D int64 numpy arrays of element ints (see ``field``).
Pivoting is always on the first nonzero entry in column order, so results are
deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import prod

import numpy as np

from .field import GF


def as_matrix(M) -> np.ndarray:
    A = np.array(M, dtype=np.int64)
    if A.ndim == 1:
        A = A.reshape(1, -1) if A.size else A.reshape(0, 0)
    return A


# ----- F_{q^m} -----

def rref(F: GF, M, pivot_cols: int | None = None):
    """Reduced row echelon form; only the first ``pivot_cols`` columns are used as pivots."""
    A = as_matrix(M).copy()
    rows, cols = A.shape
    limit = cols if pivot_cols is None else pivot_cols
    pivots = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        lead = int(A[r, c])
        if lead != 1:
            A[r] = F.vmul(F.inv(lead), A[r])
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = F.vsub(A[hit], F.vmul(col[hit][:, None], A[r][None, :]))
        pivots.append(c)
        r += 1
    return A, pivots


def rank_qm(F: GF, M) -> int:
    A = as_matrix(M)
    if A.size == 0:
        return 0
    return len(rref(F, A)[1])


def right_kernel(F: GF, M) -> np.ndarray:
    """Basis (as rows) of {v : M v^T = 0}, in reduced echelon form."""
    A = as_matrix(M)
    rows, cols = A.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    R, piv = rref(F, A)
    free = [c for c in range(cols) if c not in set(piv)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for r, pc in enumerate(piv):
            basis[i, pc] = F.neg[int(R[r, fc])]
    if len(basis):
        basis = rref(F, basis)[0]
    return basis


def left_kernel(F: GF, M) -> np.ndarray:
    """Basis (as rows) of {v : v M = 0}."""
    return right_kernel(F, as_matrix(M).T)


def matmul(F: GF, A, B) -> np.ndarray:
    A, B = as_matrix(A), as_matrix(B)
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shape mismatch {A.shape} x {B.shape}")
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(A.shape[1]):
        out = F.vadd(out, F.vmul(A[:, k][:, None], B[k][None, :]))
    return out


def solve(F: GF, A, b):
    """All solutions of A x = b as (particular, kernel basis) or None if inconsistent."""
    A = as_matrix(A)
    b = np.asarray(b, dtype=np.int64).reshape(-1)
    rows, cols = A.shape
    aug = np.concatenate([A, b[:, None]], axis=1) if rows else np.zeros((0, cols + 1), np.int64)
    R, piv = rref(F, aug, pivot_cols=cols)
    if rows:
        for r in range(len(piv), rows):
            if R[r, cols] != 0:
                return None
    x = np.zeros(cols, dtype=np.int64)
    for r, pc in enumerate(piv):
        x[pc] = R[r, cols]
    return x.tolist(), right_kernel(F, A).tolist() if rows else np.eye(cols, dtype=np.int64).tolist()


def inverse(F: GF, M) -> np.ndarray:
    A = as_matrix(M)
    n = A.shape[0]
    R, piv = rref(F, np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1), pivot_cols=n)
    if piv != list(range(n)):
        raise ValueError("matrix is singular")
    return R[:, n:]


# ----- F_q -----

def rref_mod(M, q: int, pivot_cols: int | None = None):
    A = np.array(M, dtype=np.int64) % q
    if A.ndim == 1:
        A = A.reshape(1, -1)
    rows, cols = A.shape
    limit = cols if pivot_cols is None else pivot_cols
    pivots = []
    r = 0
    for c in range(limit):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        lead = int(A[r, c])
        if lead != 1:
            A[r] = (A[r] * pow(lead, q - 2, q)) % q
        col = A[:, c].copy()
        col[r] = 0
        hit = np.flatnonzero(col)
        if hit.size:
            A[hit] = (A[hit] - col[hit][:, None] * A[r][None, :]) % q
        pivots.append(c)
        r += 1
    return A, pivots


def rank_mod(M, q: int) -> int:
    A = np.asarray(M)
    if A.size == 0:
        return 0
    return len(rref_mod(A, q)[1])


def kernel_mod(M, q: int) -> np.ndarray:
    """Rows spanning {v : M v^T = 0} over F_q."""
    A = np.array(M, dtype=np.int64) % q
    rows, cols = A.shape
    if rows == 0:
        return np.eye(cols, dtype=np.int64)
    R, piv = rref_mod(A, q)
    pset = set(piv)
    free = [c for c in range(cols) if c not in pset]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, fc in enumerate(free):
        basis[i, fc] = 1
        for r, pc in enumerate(piv):
            basis[i, pc] = (-R[r, fc]) % q
    return basis


def inverse_mod(M, q: int) -> np.ndarray:
    A = np.array(M, dtype=np.int64) % q
    n = A.shape[0]
    R, piv = rref_mod(np.concatenate([A, np.eye(n, dtype=np.int64)], axis=1), q, pivot_cols=n)
    if piv != list(range(n)):
        raise ValueError("matrix is singular over F_q")
    return R[:, n:]


def expand_columns(F: GF, M) -> np.ndarray:
    """(m*rows) x cols matrix over F_q: every entry becomes an m-digit column."""
    A = as_matrix(M)
    rows, cols = A.shape
    d = F.vdigits(A)  # rows x cols x m
    return d.transpose(0, 2, 1).reshape(rows * F.m, cols)


def expand_rows(F: GF, M) -> np.ndarray:
    """rows x (m*cols) matrix over F_q: every entry becomes m consecutive digits."""
    A = as_matrix(M)
    rows, cols = A.shape
    return F.vdigits(A).reshape(rows, cols * F.m)


def rank_q(F: GF, M) -> int:
    """F_q-rank of the column-wise expansion of M."""
    A = as_matrix(M)
    if A.size == 0:
        return 0
    return rank_mod(expand_columns(F, A), F.q)


def col_echelon_q(F: GF, M):
    """Column echelon form over F_q of the column-wise expansion H of M.

    Returns (E, T) with H T = E, T invertible over F_q, the nonzero columns of E
    first (linearly independent) and the zero columns last.
    """
    H = expand_columns(F, M)
    n = H.shape[1]
    aug = np.concatenate([H.T % F.q, np.eye(n, dtype=np.int64)], axis=1)
    R, piv = rref_mod(aug, F.q, pivot_cols=H.shape[0])
    P = R[:, H.shape[0]:]
    T = P.T.copy()
    E = (H @ T) % F.q
    return E, T


def apply_fq(F: GF, M, T) -> np.ndarray:
    """M T for M over F_{q^m} and T over F_q (entries of F_q are their own ints)."""
    return matmul(F, M, np.asarray(T, dtype=np.int64) % F.q)


# ----- block structure, row operator, Moore matrices -----

@dataclass(frozen=True)
class BlockMatrix:
    """An s x n matrix over F_{q^m} whose columns are split into blocks."""

    entries: np.ndarray
    partition: tuple

    def __post_init__(self):
        e = as_matrix(self.entries)
        object.__setattr__(self, "entries", e)
        object.__setattr__(self, "partition", tuple(int(p) for p in self.partition))
        if sum(self.partition) != e.shape[1] or not self.partition:
            raise ValueError(f"partition {self.partition} does not match {e.shape[1]} columns")

    def blocks(self):
        return split_blocks(self.entries, self.partition)

    @property
    def shape(self):
        return self.entries.shape

    def __eq__(self, other):
        return (isinstance(other, BlockMatrix) and self.partition == other.partition
                and np.array_equal(self.entries, other.entries))


def split_blocks(M, partition) -> list[np.ndarray]:
    A = as_matrix(M)
    out, start = [], 0
    for n in partition:
        out.append(A[:, start:start + n])
        start += n
    return out


def block_a(partition, a) -> np.ndarray:
    if len(a) != len(partition):
        raise ValueError("need one class representative per block")
    return np.repeat(np.asarray(a, dtype=np.int64), list(partition))


def row_op(F: GF, M, j: int, a, partition) -> np.ndarray:
    """Apply D_{a_i}^j to every entry of block i (the row operator rho_j)."""
    A = as_matrix(M)
    av = block_a(partition, a)
    if j < 0 and np.any(av == 0):
        raise ZeroDivisionError("negative powers of D need nonzero a")
    out = A.copy()
    if j >= 0:
        for _ in range(j):
            out = F.vmul(F.vsigma(out), av[None, :])
    else:
        ainv = F.vinv(av)
        for _ in range(-j):
            out = F.vsigma(F.vmul(out, ainv[None, :]), -1)
    return out


def moore(F: GF, x, d: int, a, partition) -> np.ndarray:
    """Generalized Moore matrix lambda_d(x)_a: rows rho_0(x), ..., rho_{d-1}(x)."""
    x = np.asarray(x, dtype=np.int64).reshape(-1)
    if d <= 0:
        return np.zeros((0, x.size), dtype=np.int64)
    av = block_a(partition, a)
    rows = [x]
    for _ in range(d - 1):
        rows.append(F.vmul(F.vsigma(rows[-1]), av))
    return np.stack(rows)


def sum_rank_weight(F: GF, M, partition) -> int:
    return sum(rank_q(F, B) for B in split_blocks(M, partition))


def block_ranks(F: GF, M, partition) -> list[int]:
    return [rank_q(F, B) for B in split_blocks(M, partition)]


# ----- combinatorics -----

def gaussian_binomial(a: int, b: int, q: int) -> int:
    if b < 0 or b > a:
        return 0
    num = prod(q ** (a - b + i) - 1 for i in range(1, b + 1))
    den = prod(q**i - 1 for i in range(1, b + 1))
    return num // den


def kappa_q(q) -> float:
    """prod_{i>=1} (1 - q^-i)^-1, truncated after 100 factors.

    The neglected tail changes the log of the product by at most
    sum_{i>100} 2 q^-i < 4 q^-100, far below double precision.
    """
    q = float(q)
    out = 1.0
    for i in range(1, 101):
        out /= 1.0 - q ** (-i)
    return out


def num_rank_matrices(q: int, rows: int, cols: int, r: int) -> int:
    """Number of rows x cols matrices over F_q of rank r."""
    if r < 0 or r > min(rows, cols):
        return 0
    return gaussian_binomial(cols, r, q) * prod(q**rows - q**j for j in range(r))


def frac_ceil(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)
