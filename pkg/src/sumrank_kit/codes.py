"""ILRS, LILRS and ISRS codes: construction, encoding, distances and the isometry."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Sequence

import numpy as np

from .field import GF
from .linalg import (BlockMatrix, as_matrix, expand_rows, kernel_mod, matmul, moore,
                     rank_mod, rank_q, rref_mod, split_blocks, sum_rank_weight)
from .skew import SkewPoly, conj, norm, lclm, op_eval, rem_eval, min_poly_rem


def are_conjugate(F: GF, a: int, b: int) -> bool:
    """a and b are sigma-conjugate iff both are zero or N_m(b/a) = 1."""
    if a == 0 or b == 0:
        return a == b
    return norm(F, F.div(b, a), F.m) == 1


def _as_msg(F: GF, msg, s: int, k: int) -> list[SkewPoly]:
    out = []
    for f in msg:
        p = f if isinstance(f, SkewPoly) else SkewPoly(F, f)
        if p.deg >= k:
            raise ValueError(f"message polynomial of degree {p.deg} >= k={k}")
        out.append(p)
    if len(out) != s:
        raise ValueError(f"need {s} message polynomials, got {len(out)}")
    return out


def coeff_matrix(F: GF, msg: Sequence[SkewPoly], k: int) -> np.ndarray:
    return np.array([[p.coeff(i) for i in range(k)] for p in msg], dtype=np.int64).reshape(len(msg), k)


@dataclass(frozen=True, eq=False)
class IlrsCode:
    """s-interleaved linearized Reed-Solomon code with locators beta and classes a."""

    ctx: GF
    beta: tuple
    a: tuple
    partition: tuple
    k: int
    s: int

    def __post_init__(self):
        F = self.ctx
        beta = tuple(int(b) for b in self.beta)
        a = tuple(int(x) for x in self.a)
        part = tuple(int(n) for n in self.partition)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "partition", part)
        if len(a) != len(part) or sum(part) != len(beta):
            raise ValueError("a, beta and the partition do not fit together")
        if len(part) > F.q - 1:
            raise ValueError(f"ell={len(part)} exceeds q-1={F.q - 1}")
        if any(n > F.m or n < 1 for n in part):
            raise ValueError(f"block lengths {part} must lie in [1, m={F.m}]")
        if not 1 <= self.k <= sum(part) or self.s < 1:
            raise ValueError("need 1 <= k <= n and s >= 1")
        for i in range(len(a)):
            for j in range(i):
                if are_conjugate(F, a[i], a[j]):
                    raise ValueError(f"a_{j} and a_{i} are conjugate")
        for i, blk in enumerate(split_blocks(np.array(beta)[None, :], part)):
            if rank_q(F, blk) != part[i]:
                raise ValueError(f"locators of block {i} are F_q-linearly dependent")

    @classmethod
    def build(cls, ctx: GF, partition, k: int, s: int, a=None, beta=None):
        partition = tuple(partition)
        if a is None:
            a = tuple(ctx.power(i) for i in range(len(partition)))
        if beta is None:
            beta = tuple(ctx.power(j) for n in partition for j in range(n))
        return cls(ctx, tuple(beta), tuple(a), partition, k, s)

    @property
    def n(self) -> int:
        return sum(self.partition)

    @property
    def ell(self) -> int:
        return len(self.partition)

    @property
    def distance(self) -> int:
        return self.n - self.k + 1

    def beta_blocks(self):
        out, start = [], 0
        for n in self.partition:
            out.append(self.beta[start:start + n])
            start += n
        return out

    def a_vector(self) -> np.ndarray:
        return np.repeat(np.array(self.a, dtype=np.int64), list(self.partition))

    def generator(self) -> np.ndarray:
        """lambda_k(beta)_a, the k x n generator matrix of each component code."""
        return moore(self.ctx, self.beta, self.k, self.a, self.partition)

    def random_message(self, rng) -> list[SkewPoly]:
        F = self.ctx
        return [SkewPoly(F, F.random(rng, self.k).tolist()) for _ in range(self.s)]

    def to_dict(self) -> dict:
        return {"q": self.ctx.q, "m": self.ctx.m, "r": self.ctx.r,
                "prim_poly": list(self.ctx.prim_poly), "ell": self.ell, "s": self.s,
                "k": self.k, "n_partition": list(self.partition),
                "a": [self.ctx.to_digits(x) for x in self.a],
                "beta": [self.ctx.to_digits(b) for b in self.beta]}


def encode_ilrs(code: IlrsCode, msg) -> BlockMatrix:
    F = code.ctx
    fs = _as_msg(F, msg, code.s, code.k)
    C = matmul(F, coeff_matrix(F, fs, code.k), code.generator())
    return BlockMatrix(C, code.partition)


def encode_ilrs_pointwise(code: IlrsCode, msg) -> BlockMatrix:
    """Entrywise operator evaluation; the reference for ``encode_ilrs``."""
    F = code.ctx
    fs = _as_msg(F, msg, code.s, code.k)
    av = code.a_vector()
    C = [[op_eval(f, b, int(a)) for b, a in zip(code.beta, av)] for f in fs]
    return BlockMatrix(np.array(C, dtype=np.int64), code.partition)


def sum_rank_distance(F: GF, X, Y, partition) -> int:
    return sum_rank_weight(F, F.vsub(as_matrix(X), as_matrix(Y)), partition)


# ----- subspaces -----

@dataclass(frozen=True, eq=False)
class SubspaceTuple:
    """Per-shot subspaces of F_q^{N_i}, stored as reduced row echelon bases."""

    q: int
    bases: tuple
    ambient: tuple

    def __post_init__(self):
        clean = []
        for B, N in zip(self.bases, self.ambient):
            B = np.array(B, dtype=np.int64).reshape(-1, N) % self.q
            R, piv = rref_mod(B, self.q) if len(B) else (B, [])
            clean.append(R[:len(piv)])
        object.__setattr__(self, "bases", tuple(clean))
        object.__setattr__(self, "ambient", tuple(int(n) for n in self.ambient))

    @property
    def dims(self) -> tuple:
        return tuple(len(B) for B in self.bases)

    @property
    def ell(self) -> int:
        return len(self.bases)

    def __eq__(self, other):
        return (isinstance(other, SubspaceTuple) and self.ambient == other.ambient
                and all(np.array_equal(x, y) for x, y in zip(self.bases, other.bases)))

    def to_dict(self):
        return {"q": self.q, "ambient": list(self.ambient),
                "bases": [B.tolist() for B in self.bases]}

    @classmethod
    def from_dict(cls, d):
        return cls(d["q"], tuple(np.array(b, dtype=np.int64).reshape(-1, n)
                                 for b, n in zip(d["bases"], d["ambient"])), tuple(d["ambient"]))


def subspace_sum_dim(q, A, B) -> int:
    if len(A) == 0:
        return len(B)
    if len(B) == 0:
        return len(A)
    return rank_mod(np.concatenate([A, B]), q)


def sum_subspace_distance(U: SubspaceTuple, V: SubspaceTuple) -> int:
    if U.ambient != V.ambient:
        raise ValueError("subspace tuples live in different ambient spaces")
    total = 0
    for A, B in zip(U.bases, V.bases):
        s = subspace_sum_dim(U.q, A, B)
        inter = len(A) + len(B) - s
        total += s - inter
    return total


def intersection_dims(U: SubspaceTuple, V: SubspaceTuple) -> list[int]:
    return [len(A) + len(B) - subspace_sum_dim(U.q, A, B) for A, B in zip(U.bases, V.bases)]


def dual_subspace_tuple(V: SubspaceTuple) -> SubspaceTuple:
    out = []
    for B, N in zip(V.bases, V.ambient):
        out.append(kernel_mod(B, V.q) if len(B) else np.eye(N, dtype=np.int64))
    return SubspaceTuple(V.q, tuple(out), V.ambient)


@dataclass(frozen=True, eq=False)
class LilrsCode:
    """Lifted ILRS code: shot i sends rowspace(beta^(i)T | C^(i)T) in F_q^{n_t^(i) + s m}."""

    inner: IlrsCode

    @property
    def ctx(self):
        return self.inner.ctx

    @property
    def nt(self) -> tuple:
        return self.inner.partition

    @property
    def ambient(self) -> tuple:
        return tuple(n + self.inner.s * self.ctx.m for n in self.nt)

    def lift(self, C) -> SubspaceTuple:
        F = self.ctx
        bases = []
        for Ci, n in zip(split_blocks(C, self.nt), self.nt):
            left = np.eye(n, dtype=np.int64)
            right = expand_rows(F, as_matrix(Ci).T)  # n x (s m)
            bases.append(np.concatenate([left, right], axis=1))
        return SubspaceTuple(F.q, tuple(bases), self.ambient)

    def to_points(self, V: SubspaceTuple) -> list[np.ndarray]:
        """Rows of each basis as (xi, u_1, ..., u_s) over F_{q^m}."""
        F = self.ctx
        s = self.inner.s
        out = []
        for B, beta_i, n in zip(V.bases, self.inner.beta_blocks(), self.nt):
            rows = len(B)
            U = np.zeros((rows, s + 1), dtype=np.int64)
            if rows:
                bvec = np.array(beta_i, dtype=np.int64)
                xi = np.zeros(rows, dtype=np.int64)
                for j in range(n):
                    xi = F.vadd(xi, F.vmul(B[:, j], bvec[j]))
                U[:, 0] = xi
                for l in range(s):
                    U[:, l + 1] = F.vfrom_digits(B[:, n + l * F.m: n + (l + 1) * F.m])
            out.append(U)
        return out

    def from_points(self, points: Sequence[np.ndarray]) -> SubspaceTuple:
        """Inverse of ``to_points``; xi must lie in the F_q-span of the locators."""
        F = self.ctx
        bases = []
        for U, beta_i, n in zip(points, self.inner.beta_blocks(), self.nt):
            U = as_matrix(U)
            coords = _span_coords(F, beta_i, U[:, 0])
            right = expand_rows(F, U[:, 1:])
            bases.append(np.concatenate([coords, right], axis=1))
        return SubspaceTuple(F.q, tuple(bases), self.ambient)


def _span_coords(F: GF, basis, values) -> np.ndarray:
    """F_q coordinates of each value w.r.t. F_q-independent ``basis`` elements."""
    Bm = F.vdigits(np.array(basis, dtype=np.int64)).T  # m x n
    n = Bm.shape[1]
    out = np.zeros((len(values), n), dtype=np.int64)
    for r, v in enumerate(values):
        aug = np.concatenate([Bm, F.vdigits(np.array([v]))[0][:, None]], axis=1)
        R, piv = rref_mod(aug, F.q, pivot_cols=n)
        if any(R[i, n] for i in range(len(piv), R.shape[0])):
            raise ValueError("value outside the span of the locators")
        for i, pc in enumerate(piv):
            out[r, pc] = R[i, n]
    return out


def encode_lilrs(code: LilrsCode, msg) -> SubspaceTuple:
    return code.lift(encode_ilrs(code.inner, msg).entries)


# ----- skew metric and ISRS codes -----

def isometry_points(code: IlrsCode) -> tuple:
    """P-independent evaluation points b_j = sigma(beta_j) a_i / beta_j."""
    F = code.ctx
    return tuple(conj(F, int(a), b) for b, a in zip(code.beta, code.a_vector()))


def isometry_forward(F: GF, X, beta) -> np.ndarray:
    """X diag(beta)^-1."""
    beta = np.asarray(beta, dtype=np.int64)
    if np.any(beta == 0):
        raise ZeroDivisionError("zero code locator")
    return F.vmul(as_matrix(X), F.vinv(beta)[None, :])


def isometry_inverse(F: GF, X, beta) -> np.ndarray:
    """X diag(beta)."""
    beta = np.asarray(beta, dtype=np.int64)
    if np.any(beta == 0):
        raise ZeroDivisionError("zero code locator")
    return F.vmul(as_matrix(X), beta[None, :])


@dataclass(frozen=True, eq=False)
class SrsCode:
    """Vertically s-interleaved skew Reed-Solomon code on P-independent points b."""

    ctx: GF
    b: tuple
    k: int
    s: int
    base: IlrsCode | None = None
    perm: tuple = ()

    @classmethod
    def from_ilrs(cls, code: IlrsCode):
        return cls(code.ctx, isometry_points(code), code.k, code.s, code, tuple(range(code.n)))

    @classmethod
    def from_points(cls, ctx: GF, b, k: int, s: int):
        """Accept any P-basis: group it by conjugacy class and recover a (beta, a) pair."""
        b = [int(x) for x in b]
        if min_poly_rem(ctx, b).deg != len(b):
            raise ValueError("evaluation points are not P-independent")
        reps: list[int] = []
        groups: list[list[int]] = []
        for idx, x in enumerate(b):
            for g, r in enumerate(reps):
                if are_conjugate(ctx, r, x):
                    groups[g].append(idx)
                    break
            else:
                reps.append(x)
                groups.append([idx])
        perm = tuple(i for g in groups for i in g)
        beta = []
        for g, r in zip(groups, reps):
            for i in g:
                beta.append(_conj_root(ctx, r, b[i]))
        base = IlrsCode(ctx, tuple(beta), tuple(reps), tuple(len(g) for g in groups), k, s)
        return cls(ctx, tuple(b[i] for i in perm), k, s, base, perm)

    @property
    def n(self):
        return len(self.b)


def _conj_root(F: GF, a: int, b: int) -> int:
    """Some beta with sigma(beta) a / beta = b."""
    for c in range(1, F.order):
        if conj(F, a, c) == b:
            return c
    raise ValueError("points are not conjugate")


def encode_srs(code: SrsCode, msg) -> np.ndarray:
    F = code.ctx
    fs = _as_msg(F, msg, code.s, code.k)
    return np.array([[rem_eval(f, b) for b in code.b] for f in fs], dtype=np.int64).reshape(code.s, code.n)


@lru_cache(maxsize=None)
def _extension(F: GF, s: int):
    """F_{q^{ms}} with an embedding of F and the basis 1, g, ..., g^{s-1} over F."""
    big = GF(F.q, F.m * s, None, F.r)
    step = (big.order - 1) // (F.order - 1)
    theta = None
    for j in range(1, F.order):
        cand = big.power(step * j)
        acc = 0
        for c in reversed(F.prim_poly):
            acc = big.add(big.mul(acc, cand), c)
        if acc == 0 and all(big.pow(cand, e) != 1 for e in range(1, F.order - 1)):
            theta = cand
            break
    if theta is None:
        raise ValueError("failed to embed the field")
    emb = np.zeros(F.order, dtype=np.int64)
    for i in range(F.order - 1):
        emb[F.power(i)] = big.pow(theta, i)
    basis = [big.power(l) for l in range(s)]
    return big, emb, basis


def skew_weight(F: GF, X, b) -> int:
    """deg lclm(x - b_i^{x_i}) over nonzero columns x_i.

    A vector is a 1 x n matrix. For s > 1 the columns are read as elements of
    F_{q^{ms}} through the basis 1, g, ..., g^{s-1}.
    """
    X = as_matrix(X)
    s, n = X.shape
    if s == 1:
        G, cols = F, [int(v) for v in X[0]]
        pts = [int(v) for v in b]
    else:
        G, emb, basis = _extension(F, s)
        cols = []
        for j in range(n):
            acc = 0
            for l in range(s):
                acc = G.add(acc, G.mul(int(emb[X[l, j]]), basis[l]))
            cols.append(acc)
        pts = [int(emb[v]) for v in b]
    return min_poly_rem(G, [conj(G, p, c) for p, c in zip(pts, cols) if c]).deg


def skew_weight_lclm(F: GF, x, b) -> int:
    """Vector skew weight computed with the Euclidean lclm (cross-check)."""
    fac = [SkewPoly.x_minus(F, conj(F, int(p), int(c))) for p, c in zip(b, x) if c]
    return lclm(fac).deg if fac else 0


def hamming_weight(X) -> int:
    X = as_matrix(X)
    return int(np.count_nonzero(np.any(X != 0, axis=0)))


# ----- brute force distances -----

def _all_messages(F: GF, k: int, s: int, limit: int = 1 << 20):
    total = F.order ** (k * s)
    if total > limit:
        raise ValueError(f"{total} messages exceed the enumeration guard {limit}")
    for flat in product(range(F.order), repeat=k * s):
        yield [SkewPoly(F, flat[j * k:(j + 1) * k]) for j in range(s)]


def min_distance_bruteforce(code) -> int:
    """Minimum weight over all nonzero codewords (sum-rank for ILRS, skew for ISRS)."""
    F = code.ctx
    best = None
    for msg in _all_messages(F, code.k, code.s):
        if all(f.is_zero() for f in msg):
            continue
        if isinstance(code, SrsCode):
            w = skew_weight(F, encode_srs(code, msg), code.b)
        else:
            w = sum_rank_weight(F, encode_ilrs(code, msg).entries, code.partition)
        best = w if best is None else min(best, w)
    if best is None:
        raise ValueError("code has no nonzero codewords")
    return best


def min_subspace_distance_bruteforce(code: LilrsCode) -> int:
    F = code.ctx
    words = [encode_lilrs(code, msg) for msg in _all_messages(F, code.inner.k, code.inner.s)]
    best = None
    for i in range(len(words)):
        for j in range(i):
            d = sum_subspace_distance(words[i], words[j])
            best = d if best is None else min(best, d)
    return best
