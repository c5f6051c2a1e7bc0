"""Generalized operator vector interpolation and vector root finding.

Each problem has a dense linear-algebra backend and a skew approximant-basis
backend. A vector Q = (Q_0, ..., Q_s) is a tuple of SkewPoly.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .field import GF
from .linalg import as_matrix, expand_rows, rref, rref_mod, right_kernel, solve
from .skew import SkewPoly, lagrange_op, min_poly_op, op_eval, op_exp

NEG = float("-inf")


@dataclass(frozen=True, eq=False)
class InterpInstance:
    """Points U^(i) (n_i x (s+1)), classes a, degree bound D and shift w."""

    ctx: GF
    points: tuple
    a: tuple
    D: int
    w: tuple

    def __post_init__(self):
        pts = tuple(as_matrix(U).reshape(-1, len(self.w)) for U in self.points)
        object.__setattr__(self, "points", pts)
        if len(self.a) != len(pts):
            raise ValueError("need one class representative per shot")

    @property
    def s(self) -> int:
        return len(self.w) - 1

    @property
    def n(self) -> int:
        return sum(len(U) for U in self.points)

    @classmethod
    def for_ilrs(cls, ctx, beta_blocks, R_blocks, a, D, k):
        """ILRS points: row j of shot i is (beta_j, r_{1,j}, ..., r_{s,j})."""
        pts = []
        for b, Rb in zip(beta_blocks, R_blocks):
            Rb = as_matrix(Rb)
            pts.append(np.concatenate([np.asarray(b, dtype=np.int64)[:, None], Rb.T], axis=1))
        s = as_matrix(R_blocks[0]).shape[0]
        return cls(ctx, tuple(pts), tuple(a), D, (0,) + (k - 1,) * s)


# ----- vectors of skew polynomials -----

def wdeg(Q, w) -> tuple:
    """(w-weighted degree, leading position); ties go to the larger position."""
    best = (NEG, -1)
    for l, (p, wl) in enumerate(zip(Q, w)):
        if not p.is_zero():
            key = (p.deg + wl, l)
            if key > best:
                best = key
    return best


def evaluate(inst: InterpInstance, Q) -> list[int]:
    """All evaluation maps E_j^(i)(Q)."""
    F = inst.ctx
    out = []
    for U, a in zip(inst.points, inst.a):
        for row in U:
            acc = 0
            for p, u in zip(Q, row):
                acc = F.add(acc, op_eval(p, int(u), a))
            out.append(acc)
    return out


def vec_sub(Q, P):
    return tuple(x - y for x, y in zip(Q, P))


def vec_lmul(F, c, e, Q):
    """c x^e Q."""
    return tuple(p.lshift(e).lscale(c) for p in Q)


def left_reduce(Q, basis, w):
    """Reduce Q by a basis with distinct leading positions; returns the remainder."""
    F = Q[0].ctx
    by_lp = {}
    for B in basis:
        d, l = wdeg(B, w)
        by_lp[l] = (d, B)
    while True:
        d, l = wdeg(Q, w)
        if l < 0:
            return Q
        hit = by_lp.get(l)
        if hit is None or hit[0] > d:
            return Q
        B = hit[1]
        e = Q[l].deg - B[l].deg
        c = F.div(Q[l].lead(), F.sigma(B[l].lead(), e))
        Q = vec_sub(Q, vec_lmul(F, c, e, B))


def in_left_span(Q, basis, w) -> bool:
    return all(p.is_zero() for p in left_reduce(Q, basis, w))


def same_span(A, B, w) -> bool:
    return all(in_left_span(Q, B, w) for Q in A) and all(in_left_span(Q, A, w) for Q in B)


@dataclass(frozen=True, eq=False)
class InterpBasis:
    polys: tuple
    D: int
    w: tuple

    @property
    def s_prime(self) -> int:
        return len(self.polys)

    def leading_positions(self):
        return [wdeg(Q, self.w)[1] for Q in self.polys]


# ----- dense backend -----

def unknown_layout(D: int, w) -> list[tuple[int, int]]:
    """(component, power) for every coefficient q_{l,e} with e + w_l < D."""
    return [(l, e) for l, wl in enumerate(w) for e in range(max(D - wl, 0))]


def interp_matrix(inst: InterpInstance) -> np.ndarray:
    """R_I: one row per point, one column per unknown coefficient."""
    F = inst.ctx
    layout = unknown_layout(inst.D, inst.w)
    rows = []
    for U, a in zip(inst.points, inst.a):
        for row in U:
            rows.append([op_exp(F, a, int(row[l]), e) for l, e in layout])
    return np.array(rows, dtype=np.int64).reshape(len(rows), len(layout))


def minimal_basis(F: GF, vectors, w):
    """From a set of vectors spanning an F_{q^m}-space V, one element per leading
    position with the smallest w-degree available in V."""
    mons = sorted({(e + w[l], l, e) for Q in vectors for l, p in enumerate(Q) for e in range(len(p))},
                  reverse=True)
    if not mons:
        return []
    col = {(l, e): i for i, (_, l, e) in enumerate(mons)}
    M = np.zeros((len(vectors), len(mons)), dtype=np.int64)
    for r, Q in enumerate(vectors):
        for l, p in enumerate(Q):
            for e, c in enumerate(p.coeffs):
                if c:
                    M[r, col[(l, e)]] = c
    R, piv = rref(F, M)
    best = {}
    for r, pc in enumerate(piv):
        d, l, _ = mons[pc]
        if l not in best or d < best[l][0]:
            best[l] = (d, r)
    out = []
    s1 = len(w)
    for l in sorted(best):
        r = best[l][1]
        coeffs = [dict() for _ in range(s1)]
        for i in np.flatnonzero(R[r]):
            _, ll, e = mons[i]
            coeffs[ll][e] = int(R[r, i])
        out.append(tuple(SkewPoly(F, [c.get(e, 0) for e in range(max(c) + 1)] if c else [])
                         for c in coeffs))
    return out


def interpolate_dense(inst: InterpInstance) -> InterpBasis:
    F = inst.ctx
    layout = unknown_layout(inst.D, inst.w)
    R = interp_matrix(inst)
    K = right_kernel(F, R) if len(R) else np.eye(len(layout), dtype=np.int64)
    vectors = []
    for v in K:
        parts = [[] for _ in inst.w]
        for (l, e), c in zip(layout, v):
            parts[l].append(int(c))
        vectors.append(tuple(SkewPoly(F, p) for p in parts))
    return InterpBasis(tuple(minimal_basis(F, vectors, inst.w)), inst.D, tuple(inst.w))


# ----- approximant-basis backend -----

def preprocess_points(F: GF, U) -> list[tuple[int, np.ndarray]]:
    """F_q row operations putting U into staircase form.

    Returns [(eta_r, block_r)], where block_r holds the rows whose first nonzero
    column is eta_r (restricted to columns eta_r..s); its first column is
    F_q-linearly independent.
    """
    U = as_matrix(U)
    n, s1 = U.shape
    if n == 0:
        return []
    X = expand_rows(F, U)
    width = X.shape[1]
    R, piv = rref_mod(np.concatenate([X, np.eye(n, dtype=np.int64)], axis=1), F.q, pivot_cols=width)
    if len(piv) != n:
        raise ValueError("rows of an interpolation point matrix are F_q-linearly dependent")
    P = R[:, width:]
    V = np.zeros_like(U)
    for j in range(n):
        acc = np.zeros(s1, dtype=np.int64)
        for t in np.flatnonzero(P[j]):
            acc = F.vadd(acc, F.vmul(int(P[j, t]), U[t]))
        V[j] = acc
    etas = [p // F.m for p in piv]
    out = []
    for eta in sorted(set(etas)):
        rows = [j for j in range(n) if etas[j] == eta]
        out.append((eta, V[rows][:, eta:]))
    return out


def build_A(inst: InterpInstance, staircase=None):
    """The (s+1+rho) x rho matrix of skew polynomials whose left kernel encodes
    the interpolation conditions."""
    F = inst.ctx
    s = inst.s
    if staircase is None:
        staircase = [preprocess_points(F, U) for U in inst.points]
    etas = sorted({eta for blocks in staircase for eta, _ in blocks})
    rho = len(etas)
    zero = SkewPoly.zero(F)
    A = [[zero] * rho for _ in range(s + 1 + rho)]
    for r, eta in enumerate(etas):
        pts = []
        for blocks, a in zip(staircase, inst.a):
            for e, B in blocks:
                if e == eta:
                    pts.extend((row, a) for row in B)
        G = min_poly_op(F, [(int(row[0]), a) for row, a in pts])
        A[eta][r] = SkewPoly.one(F)
        for c in range(eta + 1, s + 1):
            A[c][r] = lagrange_op(F, [(int(row[0]), int(row[c - eta]), a) for row, a in pts])
        A[s + 1 + r][r] = G
    return A


def identity(F: GF, n: int):
    return [[SkewPoly.one(F) if i == j else SkewPoly.zero(F) for j in range(n)] for i in range(n)]


def order_basis(F: GF, A, shift, d: int, side: str = "left"):
    """Shifted weak-Popov approximant basis of order d, computed order by order.

    Left: rows v with v A = 0 mod x^d. Right: columns v with A v = 0 mod x^d.
    Returns (B, shifted degrees). At each step the pivot is the vector of
    smallest shifted degree among those with a nonzero residual (ties: lowest
    index), so the pivot index of vector j stays j throughout.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    rows, cols = len(A), len(A[0]) if A else 0
    if side == "left":
        n = rows
        P = [list(r) for r in A]                       # P = B A, one row per basis vector
        others = cols
    else:
        n = cols
        P = [[A[c][j] for c in range(rows)] for j in range(cols)]  # P[j][c] = (A B)_{c,j}
        others = rows
    if len(shift) != n:
        raise ValueError("shift length does not match the basis size")
    B = [list(r) for r in identity(F, n)]  # B[j] = j-th basis vector's entries
    degs = list(shift)
    for i in range(d):
        for c in range(others):
            res = [P[j][c].coeff(i) for j in range(n)]
            nz = [j for j in range(n) if res[j]]
            if not nz:
                continue
            piv = min(nz, key=lambda j: (degs[j], j))
            rp = res[piv]
            for j in nz:
                if j == piv:
                    continue
                if side == "left":
                    coef = F.div(res[j], rp)
                    B[j] = [x - y.lscale(coef) for x, y in zip(B[j], B[piv])]
                    P[j] = [x - y.lscale(coef) for x, y in zip(P[j], P[piv])]
                else:
                    coef = F.sigma(F.div(res[j], rp), -i)
                    B[j] = [x - y.rscale(coef) for x, y in zip(B[j], B[piv])]
                    P[j] = [x - y.rscale(coef) for x, y in zip(P[j], P[piv])]
            if side == "left":
                B[piv] = [y.lshift(1) for y in B[piv]]
                P[piv] = [y.lshift(1) for y in P[piv]]
            else:
                B[piv] = [y.shift(1) for y in B[piv]]
                P[piv] = [y.shift(1) for y in P[piv]]
            degs[piv] += 1
    if side == "right":
        B = [[B[j][i] for j in range(n)] for i in range(n)]  # columns back in place
    return B, degs


def shifted_degrees(B, shift, side="left"):
    """rdeg_s of the rows (left) or cdeg_s of the columns (right)."""
    n = len(B)
    out = []
    for j in range(n):
        vec = B[j] if side == "left" else [B[i][j] for i in range(n)]
        out.append(max((p.deg + sh for p, sh in zip(vec, shift) if not p.is_zero()), default=NEG))
    return out


def pivot_indices(B, shift, side="left"):
    n = len(B)
    out = []
    for j in range(n):
        vec = B[j] if side == "left" else [B[i][j] for i in range(n)]
        best, idx = NEG, -1
        for i, (p, sh) in enumerate(zip(vec, shift)):
            if not p.is_zero() and p.deg + sh >= best:
                best, idx = p.deg + sh, i
        out.append(idx)
    return out


def is_weak_popov(B, shift, side="left") -> bool:
    piv = pivot_indices(B, shift, side)
    return all(x < y for x, y in zip(piv, piv[1:]))


def interpolate_fast(inst: InterpInstance) -> InterpBasis:
    F = inst.ctx
    s = inst.s
    A = build_A(inst)
    rho = len(A[0]) if A and A[0] else 0
    wmin = min(inst.w)
    d = inst.D - wmin + inst.n
    shift = tuple(inst.w) + (wmin,) * rho
    B, degs = order_basis(F, A, shift, d, "left")
    keep = [j for j in range(len(B)) if degs[j] < inst.D]
    polys = tuple(tuple(B[j][:s + 1]) for j in keep)
    polys = tuple(sorted(polys, key=lambda Q: wdeg(Q, inst.w)[1]))
    return InterpBasis(polys, inst.D, tuple(inst.w))


def interpolate(inst: InterpInstance, backend: str = "dense") -> InterpBasis:
    if backend == "dense":
        return interpolate_dense(inst)
    if backend == "fast":
        return interpolate_fast(inst)
    raise ValueError(f"unknown backend {backend!r}")


# ----- root finding -----

@dataclass(frozen=True, eq=False)
class RootSpace:
    """Affine space particular + right-span(homogeneous) in twisted coordinates.

    A vector g of length s*k stores g[u*s + j] = sigma^-u(f^(j+1)_u); in these
    coordinates right scalar multiplication is ordinary scaling.
    """

    ctx: GF
    s: int
    k: int
    particular: tuple | None
    homogeneous: tuple

    @property
    def empty(self) -> bool:
        return self.particular is None

    @property
    def dim(self) -> int:
        return len(self.homogeneous)

    def polys(self, g) -> list[SkewPoly]:
        F = self.ctx
        return [SkewPoly(F, [F.sigma(int(g[u * self.s + j]), u) for u in range(self.k)])
                for j in range(self.s)]

    def canonical(self):
        F = self.ctx
        if self.particular is None:
            return None
        H = np.array(self.homogeneous, dtype=np.int64).reshape(-1, self.s * self.k)
        piv = []
        if len(H):
            H, piv = rref(F, H)
            H = H[:len(piv)]
        p = np.array(self.particular, dtype=np.int64)
        for r, c in enumerate(piv):
            if p[c]:
                p = F.vsub(p, F.vmul(int(p[c]), H[r]))
        return tuple(p.tolist()), tuple(map(tuple, H.tolist()))

    def __eq__(self, other):
        return isinstance(other, RootSpace) and self.canonical() == other.canonical()

    def size_log_q(self) -> int:
        return self.ctx.m * self.dim

    def enumerate(self, limit: int | None = None):
        """All members as message vectors (at most ``limit`` of them)."""
        if self.particular is None:
            return
        F = self.ctx
        p = np.array(self.particular, dtype=np.int64)
        H = np.array(self.homogeneous, dtype=np.int64).reshape(-1, self.s * self.k)
        count = 0
        for coeffs in product(range(F.order), repeat=len(H)):
            v = p
            for c, h in zip(coeffs, H):
                if c:
                    v = F.vadd(v, F.vmul(c, h))
            yield self.polys(v)
            count += 1
            if limit is not None and count >= limit:
                return


def _twist_rows(basis_polys, k):
    L = 0
    for Q in basis_polys:
        L = max(L, Q[0].deg + 1 if not Q[0].is_zero() else 0)
        for p in Q[1:]:
            if not p.is_zero():
                L = max(L, p.deg + k)
    return L


def root_matrix(F: GF, basis_polys, k: int):
    """(Q_R, -q_0) with rows (l, r) and columns (u, j)."""
    s = len(basis_polys[0]) - 1
    sp = len(basis_polys)
    L = _twist_rows(basis_polys, k)
    QR = np.zeros((L * sp, s * k), dtype=np.int64)
    q0 = np.zeros(L * sp, dtype=np.int64)
    for l in range(L):
        for r, Q in enumerate(basis_polys):
            row = l * sp + r
            q0[row] = F.sigma(Q[0].coeff(l), -l)
            for u in range(min(k, l + 1)):
                for j in range(s):
                    QR[row, u * s + j] = F.sigma(Q[j + 1].coeff(l - u), -l)
    return QR, q0


def root_find_dense(F: GF, basis_polys, k: int) -> RootSpace:
    basis_polys = [tuple(Q) for Q in basis_polys]
    s = len(basis_polys[0]) - 1
    QR, q0 = root_matrix(F, basis_polys, k)
    sol = solve(F, QR, F.vneg(q0)) if len(QR) else ([0] * (s * k), np.eye(s * k, dtype=np.int64).tolist())
    if sol is None:
        return RootSpace(F, s, k, None, ())
    part, hom = sol
    return RootSpace(F, s, k, tuple(part), tuple(tuple(h) for h in hom))


def root_find_fast(F: GF, basis_polys, k: int) -> RootSpace:
    basis_polys = [tuple(Q) for Q in basis_polys]
    s = len(basis_polys[0]) - 1
    A = [list(Q) for Q in basis_polys]
    dmax = max((p.deg for Q in basis_polys for p in Q if not p.is_zero()), default=0)
    shift = (k,) + (1,) * s
    B, degs = order_basis(F, A, shift, dmax + k, "right")
    gens = []
    for j in range(s + 1):
        if degs[j] > k:
            continue
        col = [B[i][j] for i in range(s + 1)]
        for e in range(k - degs[j] + 1):
            v = [p.shift(e) for p in col]
            g0 = v[0].coeff(0)
            tw = [0] * (s * k)
            for l in range(s):
                for u, c in enumerate(v[l + 1].coeffs):
                    tw[u * s + l] = F.sigma(c, -u)
            gens.append((g0, tw))
    piv = next((g for g in gens if g[0]), None)
    if piv is None:
        return RootSpace(F, s, k, None, ())
    inv0 = F.inv(piv[0])
    part = F.vmul(inv0, np.array(piv[1], dtype=np.int64))
    hom = []
    for g0, tw in gens:
        v = np.array(tw, dtype=np.int64)
        if g0:
            v = F.vsub(v, F.vmul(F.mul(g0, inv0), np.array(piv[1], dtype=np.int64)))
        if np.any(v):
            hom.append(v)
    if hom:
        H, pv = rref(F, np.array(hom))
        hom = H[:len(pv)].tolist()
    return RootSpace(F, s, k, tuple(int(x) for x in part), tuple(tuple(h) for h in hom))


def root_find(F: GF, basis_polys, k: int, backend: str = "dense") -> RootSpace:
    if backend == "dense":
        return root_find_dense(F, basis_polys, k)
    if backend == "fast":
        return root_find_fast(F, basis_polys, k)
    raise ValueError(f"unknown backend {backend!r}")


def check_root(Q, f) -> bool:
    """Q_0 + sum Q_j f^(j) == 0."""
    acc = Q[0]
    for q, p in zip(Q[1:], f):
        acc = acc + q * p
    return acc.is_zero()


def debug_dump(inst: InterpInstance, k: int, backend: str = "dense") -> dict:
    """Intermediate matrices of one interpolation-based decoding, for failure triage.

    Field elements appear in their integer encoding; skew polynomials as
    coefficient lists, constant term first.
    """
    def plist(row):
        return [list(p.coeffs) for p in row]

    basis = interpolate(inst, backend)
    out = {"D": inst.D, "w": list(inst.w), "R_I": interp_matrix(inst).tolist(),
           "A": [plist(row) for row in build_A(inst)],
           "basis": [plist(Q) for Q in basis.polys], "s_prime": basis.s_prime}
    if basis.s_prime:
        QR, q0 = root_matrix(inst.ctx, list(basis.polys), k)
        out["Q_R"], out["q0"] = QR.tolist(), q0.tolist()
    return out
