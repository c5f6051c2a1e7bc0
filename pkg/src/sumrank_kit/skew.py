"""Skew polynomials over F_{q^m} with x*a = sigma(a)*x, plus the evaluation maps."""
from __future__ import annotations

from typing import Iterable, Sequence

from .field import GF

NEG_INF = float("-inf")


class SkewPoly:
    """Immutable skew polynomial; ``coeffs[i]`` is the coefficient of x^i.

    The zero polynomial has an empty coefficient tuple and degree -inf.
    """

    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: GF, coeffs: Iterable[int] = ()):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        self.ctx = ctx
        self.coeffs = tuple(int(v) for v in c)

    # constructors
    @classmethod
    def zero(cls, ctx):
        return cls(ctx)

    @classmethod
    def one(cls, ctx):
        return cls(ctx, (1,))

    @classmethod
    def const(cls, ctx, c):
        return cls(ctx, (c,))

    @classmethod
    def monomial(cls, ctx, i, c=1):
        return cls(ctx, [0] * i + [c])

    @classmethod
    def x_minus(cls, ctx, a):
        return cls(ctx, (ctx.neg[a], 1))

    # basic queries
    @property
    def deg(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1] if self.coeffs else 0

    def coeff(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, SkewPoly):
            return self.coeffs == other.coeffs and self.ctx == other.ctx
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "SkewPoly(0)"
        return f"SkewPoly({list(self.coeffs)})"

    def _check(self, other):
        if self.ctx != other.ctx:
            raise ValueError("skew polynomials over different fields")

    # ring operations
    def __add__(self, other):
        self._check(other)
        F = self.ctx
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, v in enumerate(b):
            out[i] = F.add(out[i], v)
        return SkewPoly(F, out)

    def __neg__(self):
        return SkewPoly(self.ctx, [self.ctx.neg[c] for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.rscale(other)
        self._check(other)
        F = self.ctx
        f, g = self.coeffs, other.coeffs
        if not f or not g:
            return SkewPoly(F)
        out = [0] * (len(f) + len(g) - 1)
        for i, fi in enumerate(f):
            if fi == 0:
                continue
            sig = F._sig[i % F.m]
            for j, gj in enumerate(g):
                if gj:
                    out[i + j] = F.add(out[i + j], F.mul(fi, sig[gj]))
        return SkewPoly(F, out)

    def lscale(self, c: int):
        """c * f (coefficientwise on the left)."""
        F = self.ctx
        return SkewPoly(F, [F.mul(c, v) for v in self.coeffs])

    def rscale(self, c: int):
        """f * c = sum f_i sigma^i(c) x^i."""
        F = self.ctx
        return SkewPoly(F, [F.mul(v, F.sigma(c, i)) for i, v in enumerate(self.coeffs)])

    def shift(self, e: int):
        """f * x^e (no twist)."""
        if not self.coeffs or e == 0:
            return self
        return SkewPoly(self.ctx, (0,) * e + self.coeffs)

    def lshift(self, e: int = 1):
        """x^e * f = sum sigma^e(f_i) x^(i+e)."""
        if not self.coeffs or e == 0:
            return self
        F = self.ctx
        return SkewPoly(F, (0,) * e + tuple(F.sigma(v, e) for v in self.coeffs))

    def monic(self):
        if not self.coeffs:
            raise ZeroDivisionError("zero polynomial has no monic form")
        return self.lscale(self.ctx.inv(self.coeffs[-1]))

    def truncate(self, d: int):
        """f mod x^d."""
        return SkewPoly(self.ctx, self.coeffs[:d])

    def __call__(self, b, a=1):
        return op_eval(self, b, a)


def right_divmod(f: SkewPoly, g: SkewPoly):
    """(Q, R) with f = Q*g + R and deg R < deg g."""
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("right division by the zero polynomial")
    F = f.ctx
    r = list(f.coeffs)
    dg = len(g.coeffs) - 1
    gc = g.coeffs
    q = [0] * max(len(r) - dg, 0)
    while len(r) - 1 >= dg and r:
        e = len(r) - 1 - dg
        c = F.div(r[-1], F.sigma(gc[-1], e))
        q[e] = c
        sig = F._sig[e % F.m]
        for j, gj in enumerate(gc):
            if gj:
                r[e + j] = F.sub(r[e + j], F.mul(c, sig[gj]))
        while r and r[-1] == 0:
            r.pop()
    return SkewPoly(F, q), SkewPoly(F, r)


def right_mod(f, g):
    return right_divmod(f, g)[1]


def left_divmod(f: SkewPoly, g: SkewPoly):
    """(Q, R) with f = g*Q + R and deg R < deg g."""
    f._check(g)
    if g.is_zero():
        raise ZeroDivisionError("left division by the zero polynomial")
    F = f.ctx
    r = list(f.coeffs)
    dg = len(g.coeffs) - 1
    gc = g.coeffs
    q = [0] * max(len(r) - dg, 0)
    while len(r) - 1 >= dg and r:
        e = len(r) - 1 - dg
        # g * c x^e has leading coefficient g_lead * sigma^dg(c)
        c = F.sigma(F.div(r[-1], gc[-1]), -dg)
        q[e] = c
        for j, gj in enumerate(gc):
            if gj:
                r[e + j] = F.sub(r[e + j], F.mul(gj, F.sigma(c, j)))
        while r and r[-1] == 0:
            r.pop()
    return SkewPoly(F, q), SkewPoly(F, r)


def right_gcd_ext(f: SkewPoly, g: SkewPoly):
    """Right Euclid on (f, g): returns (d, u, v, u1, v1) with u*f + v*g = d = rgcd
    and u1*f + v1*g = 0 where u1*f is the lclm up to a unit."""
    F = f.ctx
    one, zero = SkewPoly.one(F), SkewPoly.zero(F)
    r0, r1 = f, g
    u0, v0, u1, v1 = one, zero, zero, one
    while not r1.is_zero():
        qt, rem = right_divmod(r0, r1)
        r0, r1 = r1, rem
        u0, u1 = u1, u0 - qt * u1
        v0, v1 = v1, v0 - qt * v1
    return r0, u0, v0, u1, v1


def rgcd(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    if f.is_zero() and g.is_zero():
        return f
    return right_gcd_ext(f, g)[0].monic()


def lclm2(f: SkewPoly, g: SkewPoly) -> SkewPoly:
    """Monic least common left multiple of two nonzero polynomials."""
    if f.is_zero() or g.is_zero():
        raise ValueError("lclm of the zero polynomial")
    _, _, _, u1, _ = right_gcd_ext(f, g)
    return (u1 * f).monic()


def lclm(polys: Sequence[SkewPoly]) -> SkewPoly:
    polys = list(polys)
    if not polys:
        raise ValueError("lclm of an empty sequence")
    acc = polys[0].monic()
    for p in polys[1:]:
        acc = lclm2(acc, p)
    return acc


# ----- evaluation maps -----

def norm(F: GF, a: int, i: int) -> int:
    """N_i(a) = sigma^(i-1)(a) ... sigma(a) a for i >= 0."""
    acc = 1
    for j in range(i):
        acc = F.mul(acc, F.sigma(a, j))
    return acc


def op_exp(F: GF, a: int, b: int, i: int) -> int:
    """D_a^i(b) = sigma^i(b) N_i(a); negative i inverts D_a."""
    if i >= 0:
        return F.mul(F.sigma(b, i), norm(F, a, i))
    if a == 0:
        raise ZeroDivisionError("D_0 is not invertible")
    j = -i
    return F.div(F.sigma(b, i), F.sigma(norm(F, a, j), i))


def op_eval(f: SkewPoly, b: int, a: int) -> int:
    """Generalized operator evaluation f(b)_a = sum_i f_i D_a^i(b)."""
    F = f.ctx
    acc, d = 0, b
    for c in f.coeffs:
        if c and d:
            acc = F.add(acc, F.mul(c, d))
        d = F.mul(F.sigma(d), a)
    return acc


def rem_eval(f: SkewPoly, a: int) -> int:
    """f mod_r (x - a), via sum_i f_i N_i(a)."""
    F = f.ctx
    acc, nrm = 0, 1
    for i, c in enumerate(f.coeffs):
        if c:
            acc = F.add(acc, F.mul(c, nrm))
        nrm = F.mul(F.sigma(nrm), a)
    return acc


def conj(F: GF, a: int, c: int) -> int:
    """a^c = sigma(c) a c^{-1}."""
    return F.div(F.mul(F.sigma(c), a), c)


def min_poly_op(F: GF, points) -> SkewPoly:
    """Monic minimal polynomial vanishing on all (b, a) under operator evaluation.

    Built incrementally: if M(b)_a = y != 0 then (x - sigma(y) a / y) M also kills b.
    The result equals lclm(x - sigma(b_i) a_i / b_i) over the b_i != 0.
    """
    M = SkewPoly.one(F)
    for b, a in points:
        if b == 0:
            continue
        y = op_eval(M, b, a)
        if y:
            M = SkewPoly.x_minus(F, conj(F, a, y)) * M
    return M


def min_poly_rem(F: GF, points: Iterable[int]) -> SkewPoly:
    """Remainder annihilator lclm(x - b_i)."""
    M = SkewPoly.one(F)
    for b in points:
        y = rem_eval(M, b)
        if y:
            # (x - c) M vanishes at b iff rem_eval(x M, b) = c * y; rem_eval(xM, b) = sigma(y) b
            M = SkewPoly.x_minus(F, F.div(F.mul(F.sigma(y), b), y)) * M
    return M


def lagrange_op(F: GF, points) -> SkewPoly:
    """Unique I with I(b_j)_{a_j} = c_j and deg I < len(points); points are (b, c, a).

    Divide and conquer: I = I_1 + J * M_1 where I_1 interpolates the first half,
    M_1 annihilates it and J interpolates the residual on the M_1-images of the
    second half.
    """
    points = list(points)
    n = len(points)
    if n == 0:
        return SkewPoly.zero(F)
    if n == 1:
        b, c, _ = points[0]
        if b == 0:
            raise ValueError("interpolation points are F_q-linearly dependent")
        return SkewPoly.const(F, F.div(c, b))
    h = n // 2
    left, right = points[:h], points[h:]
    I1 = lagrange_op(F, left)
    M1 = min_poly_op(F, [(b, a) for b, _, a in left])
    if M1.deg != h:
        raise ValueError("interpolation points are F_q-linearly dependent")
    moved = [(op_eval(M1, b, a), F.sub(c, op_eval(I1, b, a)), a) for b, c, a in right]
    J = lagrange_op(F, moved)
    return I1 + J * M1


def lagrange_op_dense(F: GF, points) -> SkewPoly:
    """Reference interpolation by solving the Vandermonde-type system directly."""
    from .linalg import solve

    points = list(points)
    n = len(points)
    if n == 0:
        return SkewPoly.zero(F)
    A = [[op_exp(F, a, b, i) for i in range(n)] for b, _, a in points]
    rhs = [c for _, c, _ in points]
    sol = solve(F, A, rhs)
    if sol is None or sol[1]:
        raise ValueError("interpolation points are F_q-linearly dependent")
    return SkewPoly(F, sol[0])
