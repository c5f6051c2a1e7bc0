from itertools import product

import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import FIELDS
from sumrank_kit import golden
from sumrank_kit.channels import sample_operator_channel, sample_sum_rank_error
from sumrank_kit.codes import (IlrsCode, LilrsCode, SrsCode, dual_subspace_tuple, encode_ilrs,
                               encode_lilrs, encode_srs, isometry_forward, sum_rank_distance)
from sumrank_kit.decoders import (INFEASIBLE_RADIUS, decode_complementary_lilrs, decode_ilrs,
                                  decode_isrs, decode_lilrs, degree_bound, lilrs_error_counts,
                                  lo_decode_ilrs, lo_matrix_ilrs, t_max_ilrs)
from sumrank_kit.linalg import moore, rank_qm
from sumrank_kit.skew import SkewPoly

DECODERS = ["lo", "interp-unique", "interp-list"]


def ilrs(name="F27", partition=(3, 3), k=2, s=2):
    return IlrsCode.build(FIELDS[name], partition, k, s)


def noisy(code, t, rng):
    msg = code.random_message(rng)
    E = sample_sum_rank_error(code.ctx, code.s, code.partition, t, rng).error.entries
    return msg, E, code.ctx.vadd(encode_ilrs(code, msg).entries, E)


# ----- worked example -----

def test_worked_example_lo():
    code = golden.worked_code()
    R = np.array(golden.RECEIVED)
    L = lo_matrix_ilrs(code, R, 2)
    assert L.shape == (5, 6)
    out = lo_decode_ilrs(code, R)
    assert out.kind == "unique" and out.contains(golden.MSG)
    assert out.diagnostics["t"] == 2
    assert tuple(out.diagnostics["error_ranks"]) == golden.ERROR_PARTITION


@pytest.mark.parametrize("decoder", DECODERS)
@pytest.mark.parametrize("backend", ["dense", "fast"])
def test_worked_example_all_decoders(decoder, backend):
    code = golden.worked_code()
    out = decode_ilrs(code, np.array(golden.RECEIVED), decoder, backend)
    assert out.ok and out.contains(golden.MSG)


def test_golden_checks_all_pass():
    assert all(ok for _, ok in golden.run_checks())


def test_degree_bounds():
    assert degree_bound(6, 2, 3, "list") == 4
    assert degree_bound(8, 4, 3, "unique") == 4
    with pytest.raises(ValueError):
        degree_bound(6, 2, 3, "bogus")


# ----- noiseless and radius handling -----

@pytest.mark.parametrize("decoder", DECODERS)
def test_noiseless_ilrs(decoder, rng):
    code = ilrs()
    msg = code.random_message(rng)
    out = decode_ilrs(code, encode_ilrs(code, msg).entries, decoder)
    assert out.ok and out.contains(msg)


@pytest.mark.parametrize("decoder", DECODERS)
def test_noiseless_lilrs(decoder, rng):
    code = LilrsCode(ilrs())
    msg = code.inner.random_message(rng)
    out = decode_lilrs(code, encode_lilrs(code, msg), decoder)
    assert out.ok and out.contains(msg)


def test_lo_rejects_weight_beyond_radius(rng):
    code = ilrs()
    _, _, R = noisy(code, 1, rng)
    out = lo_decode_ilrs(code, R, t=int(t_max_ilrs(2, 6, 2)) + 1)
    assert out.kind == "failure" and out.reason == INFEASIBLE_RADIUS


def test_unknown_decoder_name(rng):
    code = ilrs()
    with pytest.raises(ValueError):
        decode_ilrs(code, np.zeros((2, 6), np.int64), "magic")


# ----- LO certificate and the interpolation bridge -----

def stacked_moore(code, E, d):
    return np.concatenate([moore(code.ctx, row, d, code.a, code.partition) for row in E])


@given(st.integers(0, 2**32 - 1))
def test_full_rank_error_moore_certifies_success(seed):
    """A full-rank stacked Moore matrix of E forces LO and interpolation to succeed."""
    rng = np.random.default_rng(seed)
    code = ilrs()
    t = int(rng.integers(0, int(t_max_ilrs(code.s, code.n, code.k)) + 1))
    msg, E, R = noisy(code, t, rng)
    if rank_qm(code.ctx, stacked_moore(code, E, code.n - t - code.k)) != t:
        return
    lo = lo_decode_ilrs(code, R, t)
    assert lo.kind == "unique" and lo.contains(msg)
    assert lo_decode_ilrs(code, R).contains(msg)
    for backend in ("dense", "fast"):
        un = decode_ilrs(code, R, "interp-unique", backend)
        assert un.kind == "unique" and un.contains(msg)


@given(st.integers(0, 2**32 - 1), st.sampled_from(DECODERS))
def test_successes_are_never_wrong(seed, decoder):
    """Re-encoding makes miscorrection beyond the radius impossible to report."""
    rng = np.random.default_rng(seed)
    code = ilrs()
    t = int(rng.integers(0, 5))
    msg, _, R = noisy(code, t, rng)
    out = decode_ilrs(code, R, decoder)
    s, n, k = code.s, code.n, code.k
    for m in out.messages:
        d = sum_rank_distance(code.ctx, encode_ilrs(code, m).entries, R, code.partition)
        assert (s + 1) * d < s * (n - k + 1)
    if out.kind == "unique" and (s + 1) * t <= s * (n - k):
        assert out.contains(msg)


# ----- list decoding -----

def test_list_decoder_is_complete():
    """Brute force over all 81 messages: nothing within the list radius is missed."""
    F = FIELDS["F9"]
    code = IlrsCode.build(F, (2, 2), 1, 2)
    s, n, k = code.s, code.n, code.k
    rng = np.random.default_rng(5)
    codewords = {}
    for c in product(range(F.order), repeat=s * k):
        msg = [SkewPoly(F, [x]) for x in c]
        codewords[c] = encode_ilrs(code, msg).entries
    for trial in range(30):
        _, _, R = noisy(code, int(rng.integers(0, 3)), rng)
        expected = {c for c, X in codewords.items()
                    if (s + 1) * sum_rank_distance(F, X, R, code.partition) < s * (n - k + 1)}
        for backend in ("dense", "fast"):
            out = decode_ilrs(code, R, "interp-list", backend)
            got = {tuple(p.coeffs[0] if p.coeffs else 0 for p in m) for m in out.messages}
            assert got == expected, trial


@given(st.integers(0, 2**32 - 1))
def test_lilrs_list_is_sound(seed):
    rng = np.random.default_rng(seed)
    code = LilrsCode(IlrsCode.build(FIELDS["F9"], (2, 2), 1, 2))
    X = encode_lilrs(code, code.inner.random_message(rng))
    V = sample_operator_channel(X, int(rng.integers(0, 4)), int(rng.integers(0, 3)), rng).received
    out = decode_lilrs(code, V, "interp-list")
    s, nt, k = 2, 4, 1
    for m in out.messages:
        g, d = lilrs_error_counts(code, V, m)
        assert g + s * d < s * (nt - k + 1)


# ----- operator channel decoding -----

@given(st.integers(0, 2**32 - 1), st.sampled_from(DECODERS[:2]))
def test_lilrs_decoders_agree_with_truth(seed, decoder):
    rng = np.random.default_rng(seed)
    code = LilrsCode(ilrs())
    msg = code.inner.random_message(rng)
    X = encode_lilrs(code, msg)
    gamma, delta = int(rng.integers(0, 4)), int(rng.integers(0, 2))
    V = sample_operator_channel(X, gamma, delta, rng).received
    out = decode_lilrs(code, V, decoder)
    if out.ok:
        assert out.contains(msg)
        assert (out.diagnostics.get("gamma", gamma), out.diagnostics.get("delta", delta)) == \
            (gamma, delta)


def test_complementary_code_round_trip():
    code = LilrsCode(ilrs())
    wins = 0
    for seed in range(20):
        rng = np.random.default_rng(seed)
        msg = code.inner.random_message(rng)
        Y = dual_subspace_tuple(encode_lilrs(code, msg))
        V = sample_operator_channel(Y, 1, 3, rng).received
        out = decode_complementary_lilrs(code, V)
        if out.ok:
            assert out.contains(msg) and out.words[0] == Y
            wins += 1
    assert wins >= 18


# ----- ISRS through the isometry -----

@given(st.integers(0, 2**32 - 1), st.sampled_from(DECODERS))
def test_isrs_commutes_with_isometry(seed, decoder):
    rng = np.random.default_rng(seed)
    base = ilrs()
    code = SrsCode.from_ilrs(base)
    msg = base.random_message(rng)
    C = encode_srs(code, msg)
    assert np.array_equal(C, isometry_forward(base.ctx, encode_ilrs(base, msg).entries, base.beta))
    # skew weight on the ISRS side is sum-rank weight on the ILRS side
    E = sample_sum_rank_error(base.ctx, 2, base.partition, 2, rng).error.entries
    E = isometry_forward(base.ctx, E, base.beta)
    out = decode_isrs(code, base.ctx.vadd(C, E), decoder)
    assert out.ok and out.contains(msg)
