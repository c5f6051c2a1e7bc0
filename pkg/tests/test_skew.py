import itertools

import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

import oracle
from conftest import FIELDS
from sumrank_kit.golden import F8, PRODUCT_F, PRODUCT_FG, PRODUCT_G, PRODUCT_GF
from sumrank_kit.skew import (SkewPoly, conj, lagrange_op, lagrange_op_dense, lclm, lclm2,
                              left_divmod, min_poly_op, min_poly_rem, norm, op_eval, op_exp,
                              rem_eval, rgcd, right_divmod, right_gcd_ext)

SMALL = ["F8", "F9", "F27", "F25"]


def polys(F, max_deg=5, min_deg=-1):
    n = st.integers(max(min_deg + 1, 0), max_deg + 1)
    return n.flatmap(lambda k: st.lists(st.integers(0, F.order - 1), min_size=k, max_size=k)).map(
        lambda c: SkewPoly(F, c))


def nonzero_polys(F, max_deg=5):
    return polys(F, max_deg).filter(lambda p: not p.is_zero())


@st.composite
def field_and(draw, n, nonzero=False, max_deg=5):
    F = FIELDS[draw(st.sampled_from(SMALL))]
    gen = nonzero_polys(F, max_deg) if nonzero else polys(F, max_deg)
    return F, [draw(gen) for _ in range(n)]


def test_product_example_is_non_commutative():
    assert PRODUCT_F * PRODUCT_G == PRODUCT_FG
    assert PRODUCT_G * PRODUCT_F == PRODUCT_GF
    assert PRODUCT_FG != PRODUCT_GF


def test_zero_polynomial_conventions():
    z = SkewPoly.zero(F8)
    assert z.is_zero() and z.deg == float("-inf")
    assert SkewPoly(F8, [0, 0, 0]) == z
    assert (z * SkewPoly.one(F8)).is_zero()


@given(field_and(2))
def test_product_matches_schoolbook(data):
    F, (f, g) = data
    N = oracle.NaiveField(F.q, F.m, F.prim_poly)
    ref = SkewPoly(F, oracle.skew_mul(N, list(f.coeffs), list(g.coeffs)))
    assert f * g == ref


@given(field_and(3))
def test_ring_axioms(data):
    F, (f, g, h) = data
    assert (f * g) * h == f * (g * h)
    assert f * (g + h) == f * g + f * h
    assert (f + g) * h == f * h + g * h
    if not f.is_zero() and not g.is_zero():
        assert (f * g).deg == f.deg + g.deg


@given(field_and(1), st.integers(0, 4), st.data())
def test_scaling_and_shifts(data, e, more):
    F, (f,) = data
    c = more.draw(st.integers(0, F.order - 1))
    C = SkewPoly.const(F, c)
    X = SkewPoly.monomial(F, e)
    assert f.lscale(c) == C * f
    assert f.rscale(c) == f * C
    assert f.shift(e) == f * X
    assert f.lshift(e) == X * f


@given(field_and(2))
def test_right_and_left_division(data):
    F, (f, g) = data
    assume(not g.is_zero())
    q, r = right_divmod(f, g)
    assert q * g + r == f and r.deg < g.deg
    q, r = left_divmod(f, g)
    assert g * q + r == f and r.deg < g.deg


@given(field_and(2, nonzero=True, max_deg=4))
def test_gcd_and_lclm(data):
    F, (f, g) = data
    d, u, v, _, _ = right_gcd_ext(f, g)
    assert u * f + v * g == d
    assert right_divmod(f, d)[1].is_zero() and right_divmod(g, d)[1].is_zero()
    L = lclm2(f, g)
    assert right_divmod(L, f)[1].is_zero()
    assert right_divmod(L, g)[1].is_zero()
    assert L.deg == f.deg + g.deg - rgcd(f, g).deg


@given(field_and(4, nonzero=True, max_deg=3))
def test_lclm_of_many_is_right_divisible_by_each(data):
    F, ps = data
    L = lclm(ps)
    assert all(right_divmod(L, p)[1].is_zero() for p in ps)
    assert L.lead() == 1


@given(field_and(1), st.data())
def test_operator_evaluation_matches_reference(data, more):
    F, (f,) = data
    N = oracle.NaiveField(F.q, F.m, F.prim_poly)
    a = more.draw(st.integers(0, F.order - 1))
    b = more.draw(st.integers(0, F.order - 1))
    assert op_eval(f, b, a) == oracle.op_eval(N, list(f.coeffs), b, a)
    assert f(b, a) == op_eval(f, b, a)


@given(field_and(2), st.data())
def test_product_rule(data, more):
    F, (f, g) = data
    a = more.draw(st.integers(0, F.order - 1))
    b = more.draw(st.integers(0, F.order - 1))
    assert op_eval(f * g, b, a) == op_eval(f, op_eval(g, b, a), a)


@given(field_and(2), st.data())
def test_operator_evaluation_is_fq_linear(data, more):
    F, (f, _) = data
    a, b, c = (more.draw(st.integers(0, F.order - 1)) for _ in range(3))
    lam = more.draw(st.integers(0, F.q - 1))
    lhs = op_eval(f, F.add(b, F.mul(lam, c)), a)
    assert lhs == F.add(op_eval(f, b, a), F.mul(lam, op_eval(f, c, a)))


def test_remainder_operator_bridge_exhaustive_f8():
    F = F8
    for coeffs in itertools.product(range(F.order), repeat=2):
        f = SkewPoly(F, coeffs)
        for a in range(F.order):
            for b in range(1, F.order):
                lhs = rem_eval(f, conj(F, a, b))
                assert lhs == F.div(op_eval(f, b, a), b)


@given(field_and(1), st.data())
def test_remainder_evaluation_is_a_remainder(data, more):
    F, (f,) = data
    a = more.draw(st.integers(0, F.order - 1))
    _, r = right_divmod(f, SkewPoly.x_minus(F, a))
    assert r.coeff(0) == rem_eval(f, a) and r.deg <= 0


@given(st.sampled_from(SMALL), st.data())
def test_negative_operator_powers_invert(name, data):
    F = FIELDS[name]
    a = data.draw(st.integers(1, F.order - 1))
    b = data.draw(st.integers(0, F.order - 1))
    i = data.draw(st.integers(0, 2 * F.m))
    assert op_exp(F, a, op_exp(F, a, b, i), -i) == b
    assert op_exp(F, a, b, i) == F.mul(F.sigma(b, i), norm(F, a, i))


@given(st.sampled_from(SMALL), st.data())
def test_minimal_polynomials_annihilate_and_match_lclm(name, data):
    F = FIELDS[name]
    n = data.draw(st.integers(1, 4))
    pts = [(data.draw(st.integers(0, F.order - 1)), data.draw(st.integers(1, F.order - 1)))
           for _ in range(n)]
    M = min_poly_op(F, pts)
    assert all(op_eval(M, b, a) == 0 for b, a in pts)
    lin = [SkewPoly.x_minus(F, conj(F, a, b)) for b, a in pts if b]
    if lin:
        assert M == lclm(lin)
    else:
        assert M == SkewPoly.one(F)
    R = min_poly_rem(F, [b for b, _ in pts])
    assert all(rem_eval(R, b) == 0 for b, _ in pts)


def test_minimal_polynomial_degree_counts_independent_pairs():
    F = FIELDS["F27"]  # with two classes, a = 1 and a = alpha
    rng = np.random.default_rng(5)
    for _ in range(200):
        b = F.random(rng, 4)
        pts = [(int(b[0]), 1), (int(b[1]), 1), (int(b[2]), F.alpha), (int(b[3]), F.alpha)]
        indep = (oracle.fq_rank(3, [F.to_digits(int(x)) for x in b[:2]]) == 2
                 and oracle.fq_rank(3, [F.to_digits(int(x)) for x in b[2:]]) == 2)
        assert (min_poly_op(F, pts).deg == 4) == indep


@given(st.sampled_from(SMALL), st.data())
def test_lagrange_interpolation(name, data):
    F = FIELDS[name]
    rng = np.random.default_rng(data.draw(st.integers(0, 10**6)))
    classes = [1, F.alpha][: max(1, min(2, F.q - 1))]
    pts = []
    for a in classes:
        n = int(rng.integers(0, F.m + 1))
        B = rng.integers(0, F.q, size=(n, F.m))
        if oracle.fq_rank(F.q, B.tolist()) < n:
            continue
        pts += [(F.from_digits(row), F.random(rng), a) for row in B]
    I = lagrange_op(F, pts)
    assert I.deg < max(len(pts), 1)
    assert all(op_eval(I, b, a) == c for b, c, a in pts)
    assert I == lagrange_op_dense(F, pts)


def test_lagrange_rejects_dependent_points():
    F = FIELDS["F27"]
    with pytest.raises(ValueError):
        lagrange_op(F, [(1, 2, 1), (2, 1, 1)])
    with pytest.raises(ValueError):
        lagrange_op_dense(F, [(1, 2, 1), (2, 1, 1)])
