"""Seeded random channels: sum-rank errors and the multishot operator channel."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import product

import numpy as np

from .codes import SubspaceTuple
from .field import GF
from .linalg import BlockMatrix, gaussian_binomial, matmul, rank_mod, rank_q

MAX_REJECTIONS = 10_000


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent generator for one trial, derived from (master seed, trial index)."""
    return np.random.default_rng([int(seed), int(trial)])


def compositions(total: int, caps) -> list[tuple]:
    """All tuples c with 0 <= c_i <= caps[i] and sum c = total."""
    return [c for c in product(*(range(x + 1) for x in caps)) if sum(c) == total]


def _pick(rng, items, weights=None):
    if not items:
        raise ValueError("nothing to choose from")
    if weights is None:
        return items[int(rng.integers(len(items)))]
    total = sum(weights)
    u = int(rng.random() * total)  # weights are exact ints; float resolution is plenty here
    for it, w in zip(items, weights):
        if u < w:
            return it
        u -= w
    return items[-1]


def _full_rank_mod(rng, rows, cols, q):
    for _ in range(MAX_REJECTIONS):
        M = rng.integers(0, q, size=(rows, cols), dtype=np.int64)
        if rank_mod(M, q) == min(rows, cols):
            return M
    raise RuntimeError("rejection sampling did not terminate")


@dataclass
class SumRankSample:
    error: BlockMatrix
    ranks: tuple
    factors: list = field(default_factory=list)

    def transcript(self) -> dict:
        return {"ranks": list(self.ranks),
                "factors": [{"A": A.tolist(), "B": B.tolist()} for A, B in self.factors]}


def rank_partition_weights(F: GF, s: int, partition, t: int):
    caps = [min(s * F.m, n) for n in partition]
    parts = compositions(t, caps)
    weights = []
    for tp in parts:
        w = 1
        for n, ti in zip(partition, tp):
            w *= gaussian_binomial(n, ti, F.q)
            for j in range(ti):
                w *= F.q ** (s * F.m) - F.q ** j
        weights.append(w)
    return parts, weights


def sample_sum_rank_error(F: GF, s: int, partition, t: int, rng) -> SumRankSample:
    """Uniform s x n error of sum-rank weight exactly t."""
    partition = tuple(partition)
    parts, weights = rank_partition_weights(F, s, partition, t)
    if not parts:
        raise ValueError(f"no error of sum-rank weight {t} for partition {partition}, s={s}")
    tp = _pick(rng, parts, weights)
    blocks, factors = [], []
    for n, ti in zip(partition, tp):
        if ti == 0:
            blocks.append(np.zeros((s, n), dtype=np.int64))
            factors.append((np.zeros((s, 0), np.int64), np.zeros((0, n), np.int64)))
            continue
        for _ in range(MAX_REJECTIONS):
            A = F.random(rng, (s, ti))
            if rank_q(F, A) == ti:
                break
        else:
            raise RuntimeError("rejection sampling did not terminate")
        B = _full_rank_mod(rng, ti, n, F.q)
        blocks.append(matmul(F, A, B))
        factors.append((A, B))
    E = np.concatenate(blocks, axis=1)
    return SumRankSample(BlockMatrix(E, partition), tuple(tp), factors)


@dataclass
class OperatorSample:
    received: SubspaceTuple
    deletions: tuple
    insertions: tuple
    kept: list
    inserted: list

    def transcript(self) -> dict:
        return {"delta": list(self.deletions), "gamma": list(self.insertions),
                "kept_coefficients": [K.tolist() for K in self.kept],
                "inserted_rows": [E.tolist() for E in self.inserted]}

    def to_json(self) -> str:
        return json.dumps(self.transcript())


def operator_partitions(X: SubspaceTuple, gamma: int, delta: int, mode: str = "uniform"):
    """Valid (delta, gamma) compositions and, in weighted mode, their channel counts."""
    nt = X.dims
    room = [N - n for N, n in zip(X.ambient, nt)]
    dparts = compositions(delta, nt)
    gparts = compositions(gamma, room)
    if not dparts or not gparts:
        raise ValueError(f"infeasible operator channel gamma={gamma}, delta={delta}")
    if mode == "uniform":
        return dparts, gparts, None
    if mode != "weighted":
        raise ValueError(f"unknown partition mode {mode!r}")
    q = X.q
    pairs, weights = [], []
    for dp in dparts:
        for gp in gparts:
            w = 1
            for n, N, d, g in zip(nt, X.ambient, dp, gp):
                w *= gaussian_binomial(n, n - d, q) * q ** (n * g) * gaussian_binomial(N - n, g, q)
            pairs.append((dp, gp))
            weights.append(w)
    return dparts, gparts, (pairs, weights)


def sample_operator_channel(X: SubspaceTuple, gamma: int, delta: int, rng,
                            mode: str = "uniform") -> OperatorSample:
    """V_i = H_{n_i - delta_i}(X_i) + E_i with dim E_i = gamma_i and X_i meet E_i = 0."""
    q = X.q
    dparts, gparts, joint = operator_partitions(X, gamma, delta, mode)
    if joint is None:
        dp = _pick(rng, dparts)
        gp = _pick(rng, gparts)
    else:
        dp, gp = _pick(rng, *joint)
    bases, kept, inserted = [], [], []
    for B, N, d, g in zip(X.bases, X.ambient, dp, gp):
        n = len(B)
        K = _full_rank_mod(rng, n - d, n, q) if n - d > 0 else np.zeros((0, n), np.int64)
        H = (K @ B) % q if len(K) else np.zeros((0, N), np.int64)
        if g:
            for _ in range(MAX_REJECTIONS):
                E = rng.integers(0, q, size=(g, N), dtype=np.int64)
                if rank_mod(np.concatenate([B, E]) if n else E, q) == n + g:
                    break
            else:
                raise RuntimeError("rejection sampling did not terminate")
        else:
            E = np.zeros((0, N), np.int64)
        bases.append(np.concatenate([H, E]))
        kept.append(K)
        inserted.append(E)
    V = SubspaceTuple(q, tuple(bases), X.ambient)
    return OperatorSample(V, tuple(dp), tuple(gp), kept, inserted)
