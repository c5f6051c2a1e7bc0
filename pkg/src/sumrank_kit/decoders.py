"""Decoders for ILRS, LILRS and ISRS codes.

Every decoder re-encodes its answer and checks the distance to the received
word before reporting success, so a wrong message surfaces as a Failure.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .codes import (IlrsCode, LilrsCode, SrsCode, SubspaceTuple, dual_subspace_tuple,
                    encode_ilrs, encode_lilrs, intersection_dims, sum_rank_distance)
from .interp import InterpInstance, interpolate, root_find
from .linalg import (as_matrix, col_echelon_q, frac_ceil, inverse_mod, matmul, moore,
                     right_kernel, split_blocks)
from .skew import lagrange_op

UNIQUE, LIST, FAILURE = "unique", "list", "failure"

KERNEL_DIM_TOO_LARGE = "KernelDimTooLarge"
S_PRIME_LESS_THAN_S = "SPrimeLessThanS"
RANK_DEFICIENT = "RankDeficient"
INFEASIBLE_RADIUS = "InfeasibleRadius"
ENUMERATION_CAPPED = "EnumerationCapped"

# list enumeration stops once a root space has more members than this
ENUMERATION_CAP = 4096


@dataclass
class DecodeOutcome:
    kind: str
    messages: list = field(default_factory=list)
    truncated: bool = False
    reason: str | None = None
    diagnostics: dict = field(default_factory=dict)
    words: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.kind != FAILURE

    @property
    def message(self):
        if self.kind != UNIQUE:
            raise ValueError(f"outcome is {self.kind}, not unique")
        return self.messages[0]

    def contains(self, msg) -> bool:
        key = _msg_key(msg)
        return any(_msg_key(m) == key for m in self.messages)

    def to_dict(self, digits=None) -> dict:
        fmt = digits or (lambda c: c)
        return {"kind": self.kind,
                "f": [[[fmt(c) for c in p.coeffs] for p in m] for m in self.messages],
                "truncated": self.truncated, "reason": self.reason,
                "diagnostics": self.diagnostics}


def _msg_key(msg):
    return tuple(tuple(p.coeffs) for p in msg)


def failure(reason: str, **diag) -> DecodeOutcome:
    return DecodeOutcome(FAILURE, reason=reason, diagnostics=diag)


@dataclass
class LoWorkspace:
    L: np.ndarray
    h: np.ndarray | None
    transforms: list
    error_ranks: tuple = ()


def _kernel(F, L, cols):
    if L.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    return right_kernel(F, L)


def _lo_matrix(F, xi, us, rows_xi, rows_u, a, partition):
    parts = [moore(F, xi, rows_xi, a, partition)]
    parts += [moore(F, u, rows_u, a, partition) for u in us]
    return np.concatenate(parts, axis=0).reshape(-1, len(xi))


def _interpolate_messages(F, pts_by_comp, k):
    """Lagrange interpolation for each component; None when a result has degree >= k."""
    out = []
    for pts in pts_by_comp:
        f = lagrange_op(F, pts)
        if f.deg >= k:
            return None
        out.append(f)
    return out


# ----- Loidreau-Overbeck decoders -----

def lo_matrix_ilrs(code: IlrsCode, R, t: int) -> np.ndarray:
    F, n, k = code.ctx, code.n, code.k
    R = as_matrix(R)
    return _lo_matrix(F, np.array(code.beta), list(R), n - t - 1, n - t - k, code.a, code.partition)


def _lo_ilrs_at(code: IlrsCode, R: np.ndarray, t: int):
    """One attempt with a fixed error weight. Returns (messages | None, reason, workspace)."""
    F, k = code.ctx, code.k
    L = lo_matrix_ilrs(code, R, t)
    K = _kernel(F, L, code.n)
    ws = LoWorkspace(L, None, [])
    if len(K) > 1:
        return None, KERNEL_DIM_TOO_LARGE, ws
    if len(K) == 0:
        return None, RANK_DEFICIENT, ws
    h = K[0]
    ws.h = h
    pts = [[] for _ in range(code.s)]
    ranks = []
    for hb, bb, Rb, a in zip(split_blocks(h[None, :], code.partition), code.beta_blocks(),
                             split_blocks(R, code.partition), code.a):
        ni = hb.shape[1]
        _, T = col_echelon_q(F, hb)
        r = int(np.count_nonzero(np.any(matmul(F, hb, T) != 0, axis=0)))
        T = np.concatenate([T[:, r:], T[:, :r]], axis=1)  # zero columns of hT first
        Dm = inverse_mod(T, F.q).T
        bt = matmul(F, np.array(bb, dtype=np.int64)[None, :], Dm)[0]
        Rt = matmul(F, Rb, Dm)
        ti = ni - r
        ranks.append(ti)
        ws.transforms.append(T)
        for j in range(ti, ni):
            for l in range(code.s):
                pts[l].append((int(bt[j]), int(Rt[l, j]), a))
    ws.error_ranks = tuple(ranks)
    try:
        msg = _interpolate_messages(F, pts, k)
    except ValueError:
        return None, RANK_DEFICIENT, ws
    if msg is None:
        return None, RANK_DEFICIENT, ws
    if sum_rank_distance(F, encode_ilrs(code, msg).entries, R, code.partition) > t:
        return None, RANK_DEFICIENT, ws
    return msg, None, ws


def t_max_ilrs(s: int, n: int, k: int) -> Fraction:
    return Fraction(s * (n - k), s + 1)


def lo_decode_ilrs(code: IlrsCode, R, t: int | None = None) -> DecodeOutcome:
    """Loidreau-Overbeck-like decoding.

    With ``t`` unknown the weight is swept from floor(t_max) down to 0 and the
    first weight with a one-dimensional kernel and a passing re-encoding check wins.
    """
    R = as_matrix(R)
    tmax = t_max_ilrs(code.s, code.n, code.k)
    if t is not None and t > tmax:
        return failure(INFEASIBLE_RADIUS, t=t, t_max=str(tmax))
    sweep = [t] if t is not None else range(int(tmax), -1, -1)
    reasons = []
    for tt in sweep:
        msg, reason, ws = _lo_ilrs_at(code, R, tt)
        if msg is not None:
            return DecodeOutcome(UNIQUE, [msg], diagnostics={
                "t": tt, "kernel_dim": 1, "error_ranks": list(ws.error_ranks),
                "L_shape": list(ws.L.shape)})
        reasons.append(reason)
    reason = KERNEL_DIM_TOO_LARGE if KERNEL_DIM_TOO_LARGE in reasons else RANK_DEFICIENT
    return failure(reason, swept=list(sweep))


def _points_tuple(code: LilrsCode, U: SubspaceTuple):
    if U.ambient != code.ambient:
        raise ValueError(f"received ambient {U.ambient} does not match the code's {code.ambient}")
    return code.to_points(U)


def lilrs_error_counts(code: LilrsCode, U: SubspaceTuple, msg):
    """(gamma, delta) between the codeword of msg and U."""
    X = encode_lilrs(code, msg)
    inter = sum(intersection_dims(X, U))
    return sum(U.dims) - inter, sum(code.nt) - inter


def _lo_lilrs_at(code: LilrsCode, points, delta: int):
    inner = code.inner
    F, k, s = inner.ctx, inner.k, inner.s
    nt = inner.n
    nr_part = tuple(len(P) for P in points)
    allp = np.concatenate(points, axis=0)
    L = _lo_matrix(F, allp[:, 0], [allp[:, l + 1] for l in range(s)],
                   nt - delta - 1, nt - delta - k, inner.a, nr_part)
    K = _kernel(F, L, len(allp))
    ws = LoWorkspace(L, None, [])
    if len(K) > 1:
        return None, KERNEL_DIM_TOO_LARGE, ws
    if len(K) == 0:
        return None, RANK_DEFICIENT, ws
    h = K[0]
    ws.h = h
    pts = [[] for _ in range(s)]
    start = 0
    ranks = []
    for P, a in zip(points, inner.a):
        nr = len(P)
        hb = h[start:start + nr][None, :]
        start += nr
        if nr == 0:
            ws.transforms.append(np.zeros((0, 0), np.int64))
            ranks.append(0)
            continue
        _, T = col_echelon_q(F, hb)
        r = int(np.count_nonzero(np.any(matmul(F, hb, T) != 0, axis=0)))
        Uh = matmul(F, inverse_mod(T, F.q), P)
        ws.transforms.append(T)
        ranks.append(r)
        for row in Uh[:r]:
            for l in range(s):
                pts[l].append((int(row[0]), int(row[l + 1]), a))
    ws.error_ranks = tuple(ranks)
    try:
        msg = _interpolate_messages(F, pts, k)
    except ValueError:
        return None, RANK_DEFICIENT, ws
    return msg, (None if msg is not None else RANK_DEFICIENT), ws


def lo_decode_lilrs(code: LilrsCode, U: SubspaceTuple) -> DecodeOutcome:
    """Loidreau-Overbeck-like decoding of a received subspace tuple.

    The deletion count is unknown; it is swept downward over all values that keep
    gamma = n_r - n_t + delta inside gamma <= s(n_t - delta - k).
    """
    inner = code.inner
    s, k, nt = inner.s, inner.k, inner.n
    points = _points_tuple(code, U)
    nr = sum(len(P) for P in points)
    feasible = [d for d in range(nt - k, -1, -1)
                if 0 <= nr - nt + d <= s * (nt - d - k)]
    if not feasible:
        return failure(INFEASIBLE_RADIUS, n_r=nr)
    reasons = []
    for d in feasible:
        msg, reason, ws = _lo_lilrs_at(code, points, d)
        if msg is not None:
            g2, d2 = lilrs_error_counts(code, U, msg)
            if g2 <= s * (nt - d2 - k):
                return DecodeOutcome(UNIQUE, [msg], diagnostics={
                    "delta": d2, "gamma": g2, "kernel_dim": 1,
                    "clean_dims": list(ws.error_ranks), "L_shape": list(ws.L.shape)})
            reason = RANK_DEFICIENT
        reasons.append(reason)
    reason = KERNEL_DIM_TOO_LARGE if KERNEL_DIM_TOO_LARGE in reasons else RANK_DEFICIENT
    return failure(reason, swept=feasible)


# ----- interpolation-based decoders -----

def degree_bound(n: int, s: int, k: int, mode: str) -> int:
    """D for list decoding, D_u for probabilistic unique decoding (n may be n_r)."""
    if mode == "list":
        return frac_ceil(Fraction(n + s * (k - 1) + 1, s + 1))
    if mode == "unique":
        return frac_ceil(Fraction(n + s * k, s + 1))
    raise ValueError(f"unknown mode {mode!r}")


def ilrs_instance(code: IlrsCode, R, mode: str) -> InterpInstance:
    D = degree_bound(code.n, code.s, code.k, mode)
    return InterpInstance.for_ilrs(code.ctx, code.beta_blocks(),
                                   split_blocks(as_matrix(R), code.partition), code.a, D, code.k)


def lilrs_instance(code: LilrsCode, U: SubspaceTuple, mode: str) -> InterpInstance:
    inner = code.inner
    points = _points_tuple(code, U)
    D = degree_bound(sum(len(P) for P in points), inner.s, inner.k, mode)
    return InterpInstance(inner.ctx, tuple(points), inner.a, D, (0,) + (inner.k - 1,) * inner.s)


def _solve_interp(F, inst: InterpInstance, k: int, s: int, backend: str):
    basis = interpolate(inst, backend)
    diag = {"D": inst.D, "s_prime": basis.s_prime}
    if basis.s_prime == 0:
        return None, diag
    roots = root_find(F, list(basis.polys), k, backend)
    diag["root_dim"] = roots.dim
    return roots, diag


def _finish(F, roots, diag, mode, s, k, within, unique_ok):
    """Turn a root space into an outcome. ``within(msg)`` is the list-radius test and
    ``unique_ok(msg)`` the unique-radius test."""
    if roots is None:
        return failure(S_PRIME_LESS_THAN_S if mode == "unique" else RANK_DEFICIENT, **diag)
    if mode == "unique":
        if diag["s_prime"] < s:
            return failure(S_PRIME_LESS_THAN_S, **diag)
        if roots.empty:
            return failure(RANK_DEFICIENT, **diag)
        if roots.dim > 0:
            return failure(S_PRIME_LESS_THAN_S, **diag)
        msg = roots.polys(roots.particular)
        if not unique_ok(msg):
            return failure(INFEASIBLE_RADIUS, **diag)
        return DecodeOutcome(UNIQUE, [msg], diagnostics=diag)
    if roots.empty:
        return failure(INFEASIBLE_RADIUS, **diag)
    size = F.order ** roots.dim
    diag["list_bound"] = F.order ** (k * (s - diag["s_prime"]))
    truncated = size > ENUMERATION_CAP
    found = [m for m in roots.enumerate(limit=ENUMERATION_CAP) if within(m)]
    if not found:
        return failure(ENUMERATION_CAPPED if truncated else INFEASIBLE_RADIUS, **diag)
    return DecodeOutcome(LIST, found, truncated=truncated, diagnostics=diag)


def interp_decode_ilrs(code: IlrsCode, R, mode: str = "unique", backend: str = "dense") -> DecodeOutcome:
    F, s, k, n = code.ctx, code.s, code.k, code.n
    R = as_matrix(R)
    inst = ilrs_instance(code, R, mode)
    roots, diag = _solve_interp(F, inst, k, s, backend)

    def dist(msg):
        return sum_rank_distance(F, encode_ilrs(code, msg).entries, R, code.partition)

    return _finish(F, roots, diag, mode, s, k,
                   within=lambda m: (s + 1) * dist(m) < s * (n - k + 1),
                   unique_ok=lambda m: (s + 1) * dist(m) <= s * (n - k))


def interp_decode_lilrs(code: LilrsCode, U: SubspaceTuple, mode: str = "unique",
                        backend: str = "dense") -> DecodeOutcome:
    inner = code.inner
    F, s, k, nt = inner.ctx, inner.s, inner.k, inner.n
    inst = lilrs_instance(code, U, mode)
    nr = sum(len(P) for P in inst.points)
    roots, diag = _solve_interp(F, inst, k, s, backend)
    diag["n_r"] = nr

    def radius(msg):
        g, d = lilrs_error_counts(code, U, msg)
        return g + s * d

    return _finish(F, roots, diag, mode, s, k,
                   within=lambda m: radius(m) < s * (nt - k + 1),
                   unique_ok=lambda m: radius(m) <= s * (nt - k))


def decode_lilrs(code: LilrsCode, U: SubspaceTuple, decoder: str = "interp-unique",
                 backend: str = "dense") -> DecodeOutcome:
    if decoder == "lo":
        return lo_decode_lilrs(code, U)
    if decoder == "interp-unique":
        return interp_decode_lilrs(code, U, "unique", backend)
    if decoder == "interp-list":
        return interp_decode_lilrs(code, U, "list", backend)
    raise ValueError(f"unknown decoder {decoder!r}")


def decode_ilrs(code: IlrsCode, R, decoder: str = "interp-unique", backend: str = "dense") -> DecodeOutcome:
    if decoder == "lo":
        return lo_decode_ilrs(code, R)
    if decoder == "interp-unique":
        return interp_decode_ilrs(code, R, "unique", backend)
    if decoder == "interp-list":
        return interp_decode_ilrs(code, R, "list", backend)
    raise ValueError(f"unknown decoder {decoder!r}")


def decode_isrs(code: SrsCode, R, decoder: str = "interp-unique", backend: str = "dense") -> DecodeOutcome:
    """Map back through the isometry and decode the underlying ILRS code."""
    if code.base is None:
        raise ValueError("ISRS code carries no (beta, a) structure")
    F = code.ctx
    Rp = F.vmul(as_matrix(R), np.array(code.base.beta, dtype=np.int64)[None, :])
    out = decode_ilrs(code.base, Rp, decoder, backend)
    out.diagnostics["isometry"] = True
    return out


def decode_complementary_lilrs(code: LilrsCode, V: SubspaceTuple, decoder: str = "interp-unique",
                               backend: str = "dense") -> DecodeOutcome:
    """Decode a word of the dual code {X^perp}: dualize, decode, dualize back.

    Dualizing swaps the roles of insertions and deletions.
    """
    out = decode_lilrs(code, dual_subspace_tuple(V), decoder, backend)
    out.words = [dual_subspace_tuple(encode_lilrs(code, m)) for m in out.messages]
    out.diagnostics["complementary"] = True
    return out
