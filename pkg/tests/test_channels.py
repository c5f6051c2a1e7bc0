import json
from collections import Counter
from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracle
from conftest import FIELDS
from sumrank_kit.channels import (compositions, operator_partitions, rank_partition_weights,
                                  sample_operator_channel, sample_sum_rank_error, trial_rng)
from sumrank_kit.codes import (IlrsCode, LilrsCode, encode_lilrs, intersection_dims,
                               sum_subspace_distance)
from sumrank_kit.field import GF
from sumrank_kit.linalg import matmul, rank_mod, rank_q, split_blocks


def naive(F):
    return oracle.NaiveField(F.q, F.m, F.prim_poly)


def oracle_sum_rank(F, E, partition):
    N = naive(F)
    return sum(oracle.fq_rank(F.q, oracle.column_digit_vectors(N, B.T.tolist()))
               for B in split_blocks(E, partition))


def test_zero_weight_gives_zero_error(rng):
    F = FIELDS["F9"]
    sample = sample_sum_rank_error(F, 2, (2, 2), 0, rng)
    assert not sample.error.entries.any()
    assert sample.ranks == (0, 0)


@given(st.integers(0, 2**32 - 1), st.sampled_from(["F4", "F9", "F27"]), st.integers(1, 3))
def test_sampled_error_has_requested_weight(seed, name, s):
    F = FIELDS[name]
    rng = np.random.default_rng(seed)
    partition = (2, 3)
    t = int(rng.integers(0, sum(min(s * F.m, n) for n in partition) + 1))
    sample = sample_sum_rank_error(F, s, partition, t, rng)
    E = sample.error.entries
    assert E.shape == (s, 5)
    assert [rank_q(F, B) for B in sample.error.blocks()] == list(sample.ranks)
    assert sum(sample.ranks) == t
    assert oracle_sum_rank(F, E, partition) == t


def test_infeasible_weight_is_rejected(rng):
    with pytest.raises(ValueError):
        sample_sum_rank_error(FIELDS["F4"], 1, (1, 1), 3, rng)


def test_balanced_partition_frequencies():
    F = GF(2, 1)
    rng = np.random.default_rng(7)
    counts = Counter(sample_sum_rank_error(F, 1, (1, 1), 1, rng).ranks for _ in range(10_000))
    assert set(counts) == {(1, 0), (0, 1)}
    assert abs(counts[(1, 0)] / 10_000 - 0.5) < 0.03


def test_partition_weights_count_matrices():
    """Each weight equals the number of block matrices with those exact ranks."""
    F = FIELDS["F4"]
    s, partition = 1, (2, 1)
    N = naive(F)
    by_ranks = Counter()
    for flat in product(range(F.order), repeat=3):
        E = np.array(flat).reshape(1, 3)
        ranks = tuple(oracle.fq_rank(F.q, oracle.column_digit_vectors(N, B.T.tolist()))
                      for B in split_blocks(E, partition))
        by_ranks[ranks] += 1
    for t in range(4):
        parts, weights = rank_partition_weights(F, s, partition, t)
        assert dict(zip(parts, weights)) == {r: c for r, c in by_ranks.items() if sum(r) == t}


def test_factorization_multiplicity():
    """Every rank-t block arises from exactly |GL_t(F_q)| factor pairs (A, B)."""
    F = FIELDS["F4"]
    s, n, t = 1, 2, 1
    products = Counter()
    for a in product(range(F.order), repeat=s * t):
        A = np.array(a).reshape(s, t)
        if rank_q(F, A) != t:
            continue
        for b in product(range(F.q), repeat=t * n):
            B = np.array(b).reshape(t, n)
            if rank_mod(B, F.q) == t:
                products[tuple(matmul(F, A, B).ravel())] += 1
    gl = 1  # |GL_1(F_2)|
    assert set(products.values()) == {gl}
    assert len(products) == rank_partition_weights(F, s, (n,), t)[1][0]


def test_sum_rank_sampler_is_uniform():
    F = FIELDS["F4"]
    partition, t, draws = (2, 1), 2, 40_000
    support = [flat for flat in product(range(F.order), repeat=3)
               if oracle_sum_rank(F, np.array(flat).reshape(1, 3), partition) == t]
    rng = np.random.default_rng(11)
    seen = Counter(tuple(sample_sum_rank_error(F, 1, partition, t, rng).error.entries.ravel())
                   for _ in range(draws))
    assert set(seen) <= set(support)
    tv = 0.5 * sum(abs(seen[x] / draws - 1 / len(support)) for x in support)
    assert tv < 0.02


def test_trial_streams_are_reproducible():
    F = FIELDS["F27"]
    a = sample_sum_rank_error(F, 2, (3, 3), 3, trial_rng(5, 17)).error
    b = sample_sum_rank_error(F, 2, (3, 3), 3, trial_rng(5, 17)).error
    c = sample_sum_rank_error(F, 2, (3, 3), 3, trial_rng(5, 18)).error
    assert a == b
    assert a != c or not a.entries.any()


def test_compositions():
    assert compositions(2, (1, 2)) == [(0, 2), (1, 1)]
    assert compositions(0, (3, 3)) == [(0, 0)]
    assert compositions(5, (1, 1)) == []


def lilrs_code():
    return LilrsCode(IlrsCode.build(FIELDS["F9"], (2, 2), 1, 2))


@given(st.integers(0, 2**32 - 1), st.integers(0, 6), st.integers(0, 4),
       st.sampled_from(["uniform", "weighted"]))
def test_operator_channel_dimensions(seed, gamma, delta, mode):
    code = lilrs_code()
    rng = np.random.default_rng(seed)
    X = encode_lilrs(code, code.inner.random_message(rng))
    try:
        out = sample_operator_channel(X, gamma, delta, rng, mode)
    except ValueError:
        room = sum(N - n for N, n in zip(X.ambient, X.dims))
        assert gamma > room or delta > sum(X.dims)
        return
    V = out.received
    assert sum(out.deletions) == delta and sum(out.insertions) == gamma
    assert V.dims == tuple(n - d + g for n, d, g in zip(X.dims, out.deletions, out.insertions))
    assert intersection_dims(V, X) == [n - d for n, d in zip(X.dims, out.deletions)]
    assert sum_subspace_distance(V, X) == gamma + delta
    for B, E in zip(X.bases, out.inserted):
        if len(E):
            assert rank_mod(np.concatenate([B, E]), X.q) == len(B) + len(E)


def test_operator_weighted_mode_counts():
    code = lilrs_code()
    X = encode_lilrs(code, code.inner.random_message(np.random.default_rng(0)))
    _, _, (pairs, weights) = operator_partitions(X, 1, 1, "weighted")
    assert len(pairs) == 4 and all(w > 0 for w in weights)
    with pytest.raises(ValueError):
        operator_partitions(X, 1, 1, "bogus")


def test_operator_transcript_round_trips():
    code = lilrs_code()
    rng = np.random.default_rng(3)
    X = encode_lilrs(code, code.inner.random_message(rng))
    out = sample_operator_channel(X, 2, 1, rng)
    doc = json.loads(out.to_json())
    assert doc["delta"] == list(out.deletions) and doc["gamma"] == list(out.insertions)
    assert [np.array(E).shape[0] for E in doc["inserted_rows"]] == list(out.insertions)
