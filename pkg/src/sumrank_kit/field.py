"""Prime-characteristic extension fields F_{q^m} with a Frobenius-type automorphism.

Elements are plain ints in ``range(q**m)``: the base-q digits of the integer are
the coefficients of the polynomial-basis representation, constant term first.
So ``q`` itself is the generator alpha, ``q**2`` is alpha^2 and so on.
"""
from __future__ import annotations

from functools import lru_cache
from math import gcd

import numpy as np

FULL_TABLE_LIMIT = 1024
MAX_ORDER = 1 << 20


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _power_cycle(q: int, m: int, prim_poly) -> list[int] | None:
    """Successive powers of x modulo prim_poly, as ints; None if x is not primitive."""
    order = q**m
    low = [(-c) % q for c in prim_poly[:m]]  # x^m = -(p_0 + ... + p_{m-1} x^{m-1})
    digits = [0] * m
    digits[0] = 1
    weights = [q**i for i in range(m)]
    out = [1]
    for _ in range(order - 2):
        top = digits[-1]
        digits = [0] + digits[:-1]
        if top:
            digits = [(d + top * c) % q for d, c in zip(digits, low)]
        v = sum(d * w for d, w in zip(digits, weights))
        if v == 1:
            return None
        out.append(v)
    top = digits[-1]
    digits = [0] + digits[:-1]
    if top:
        digits = [(d + top * c) % q for d, c in zip(digits, low)]
    if sum(d * w for d, w in zip(digits, weights)) != 1:
        return None
    return out


@lru_cache(maxsize=None)
def find_primitive_poly(q: int, m: int) -> tuple[int, ...]:
    """Lexicographically first primitive monic polynomial of degree m over F_q."""
    if m == 1:
        # x - g for the smallest generator g of F_q^*
        for g in range(1, q):
            if q == 2 or all(pow(g, (q - 1) // p, q) != 1 for p in _prime_factors(q - 1)):
                return ((-g) % q, 1)
    for n in range(q**m):
        low = [(n // q**i) % q for i in range(m)]
        if low[0] == 0:
            continue
        poly = tuple(low) + (1,)
        if _power_cycle(q, m, poly) is not None:
            return poly
    raise ValueError(f"no primitive polynomial found for q={q}, m={m}")


def _prime_factors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


class GF:
    """The field F_{q^m} together with sigma(a) = a^(q^r).

    Scalar methods operate on ints; the ``v*`` methods are numpy-vectorised.
    """

    def __init__(self, q: int, m: int, prim_poly=None, r: int = 1):
        if not _is_prime(q):
            raise ValueError(f"q={q} must be prime")
        if m < 1 or not 1 <= r <= m or gcd(r, m) != 1:
            raise ValueError(f"need m >= 1, 1 <= r <= m and gcd(r, m) = 1 (got m={m}, r={r})")
        order = q**m
        if order > MAX_ORDER:
            raise ValueError(f"field of order {order} exceeds the supported 2^20")
        if prim_poly is None:
            prim_poly = find_primitive_poly(q, m)
        prim_poly = tuple(int(c) % q for c in prim_poly)
        if len(prim_poly) != m + 1 or prim_poly[-1] != 1:
            raise ValueError("prim_poly must be monic of degree m, constant term first")
        if m == 1:
            cycle = self._prime_cycle(q, prim_poly)
        else:
            cycle = _power_cycle(q, m, prim_poly)
        if cycle is None:
            raise ValueError(f"{list(prim_poly)} is not primitive over F_{q}")

        self.q, self.m, self.r = q, m, r
        self.prim_poly = prim_poly
        self.order = order
        n1 = order - 1
        self.n1 = n1

        exp = np.array(cycle + cycle, dtype=np.int64)
        log = np.full(order, -1, dtype=np.int64)
        log[exp[:n1]] = np.arange(n1)
        self.exp_np, self.log_np = exp, log
        self.exp, self.log = exp.tolist(), log.tolist()

        pw = q ** np.arange(m, dtype=np.int64)
        self._pw = pw
        digits = (np.arange(order, dtype=np.int64)[:, None] // pw) % q
        self.digits_np = digits  # order x m
        self.neg_np = ((-digits) % q) @ pw
        self.neg = self.neg_np.tolist()

        # Zech logarithms: 1 + alpha^i = alpha^zech[i] (or -1 if the sum vanishes)
        one_plus = ((digits[exp[:n1]] + digits[1]) % q) @ pw
        self.zech_np = log[one_plus]
        self.zech = self.zech_np.tolist()

        self.full = order <= FULL_TABLE_LIMIT
        if self.full:
            self.add_np = ((digits[:, None, :] + digits[None, :, :]) % q) @ pw
            la = log[:, None] + log[None, :]
            mul = exp[np.where(la >= 0, la, 0) % n1]
            mul[(log[:, None] < 0) | (log[None, :] < 0)] = 0
            self.mul_np = mul
            self.add_t = self.add_np.tolist()
            self.mul_t = mul.tolist()

        # sigma^i for i in [0, m): log(sigma^i(x)) = log(x) * q^(r i) mod (q^m - 1)
        self._sig_np = []
        for i in range(m):
            e = pow(q, r * i, n1) if n1 > 1 else 1
            t = np.zeros(order, dtype=np.int64)
            nz = log >= 0
            t[nz] = exp[(log[nz] * e) % n1]
            self._sig_np.append(t)
        self._sig = [t.tolist() for t in self._sig_np]
        self._sig_matrix = None

    @staticmethod
    def _prime_cycle(q, prim_poly):
        g = (-prim_poly[0]) % q
        out, v = [], 1
        for _ in range(q - 1):
            out.append(v)
            v = v * g % q
        if v != 1 or len(set(out)) != q - 1:
            return None
        return out

    # ----- identity / representation -----
    def __repr__(self):
        return f"GF({self.q}^{self.m}, r={self.r}, prim_poly={list(self.prim_poly)})"

    def __eq__(self, other):
        return isinstance(other, GF) and (self.q, self.m, self.r, self.prim_poly) == (
            other.q, other.m, other.r, other.prim_poly)

    def __hash__(self):
        return hash((self.q, self.m, self.r, self.prim_poly))

    @property
    def alpha(self) -> int:
        return self.exp[1]

    def from_digits(self, digits) -> int:
        digits = list(digits)
        if len(digits) > self.m or any(not 0 <= d < self.q for d in digits):
            raise ValueError(f"bad digit list {digits}")
        return sum(int(d) * self.q**i for i, d in enumerate(digits))

    def to_digits(self, a: int) -> list[int]:
        return [int(d) for d in self.digits_np[a]]

    def power(self, i: int) -> int:
        """alpha^i."""
        return self.exp[i % self.n1]

    def is_subfield_element(self, a: int) -> bool:
        """True when a lies in the prime field F_q."""
        return a < self.q

    # ----- scalar arithmetic -----
    def add(self, a: int, b: int) -> int:
        if self.full:
            return self.add_t[a][b]
        if a == 0:
            return b
        if b == 0:
            return a
        la, lb = self.log[a], self.log[b]
        z = self.zech[(lb - la) % self.n1]
        return 0 if z < 0 else self.exp[la + z]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg[b])

    def mul(self, a: int, b: int) -> int:
        if self.full:
            return self.mul_t[a][b]
        if a == 0 or b == 0:
            return 0
        return self.exp[self.log[a] + self.log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.exp[(self.n1 - self.log[a]) % self.n1]

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by zero")
        if a == 0:
            return 0
        return self.exp[(self.log[a] - self.log[b]) % self.n1]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("zero to a negative power")
            return 1 if e == 0 else 0
        return self.exp[(self.log[a] * e) % self.n1]

    def sigma(self, a: int, i: int = 1) -> int:
        """sigma^i(a); i may be negative since sigma^m is the identity."""
        return self._sig[i % self.m][a]

    def sigma_matrix(self, i: int = 1) -> np.ndarray:
        """The m x m F_q matrix of sigma^i acting on digit column vectors."""
        t = self._sig_np[i % self.m]
        cols = [self.digits_np[t[self.q**j]] for j in range(self.m)]
        return np.stack(cols, axis=1)

    def sum(self, values) -> int:
        acc = 0
        for v in values:
            acc = self.add(acc, v)
        return acc

    def dot(self, xs, ys) -> int:
        acc = 0
        for x, y in zip(xs, ys):
            if x and y:
                acc = self.add(acc, self.mul(x, y))
        return acc

    # ----- vectorised arithmetic on int arrays -----
    def vadd(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.full:
            return self.add_np[a, b]
        a, b = np.broadcast_arrays(a, b)
        la, lb = self.log_np[a], self.log_np[b]
        z = self.zech_np[(lb - la) % self.n1]
        out = np.where(z < 0, 0, self.exp_np[np.where(la < 0, 0, la) + np.where(z < 0, 0, z)])
        out = np.where(a == 0, b, np.where(b == 0, a, out))
        return out

    def vneg(self, a):
        return self.neg_np[np.asarray(a, dtype=np.int64)]

    def vsub(self, a, b):
        return self.vadd(a, self.vneg(b))

    def vmul(self, a, b):
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.full:
            return self.mul_np[a, b]
        la, lb = self.log_np[a], self.log_np[b]
        out = self.exp_np[np.where(la < 0, 0, la) + np.where(lb < 0, 0, lb)]
        return np.where((la < 0) | (lb < 0), 0, out)

    def vinv(self, a):
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of zero")
        return self.exp_np[(self.n1 - self.log_np[a]) % self.n1]

    def vsigma(self, a, i: int = 1):
        return self._sig_np[i % self.m][np.asarray(a, dtype=np.int64)]

    def vdigits(self, a):
        """Digit expansion: shape a.shape + (m,)."""
        return self.digits_np[np.asarray(a, dtype=np.int64)]

    def vfrom_digits(self, d):
        return (np.asarray(d, dtype=np.int64) % self.q) @ self._pw

    def random(self, rng, size=None, nonzero=False):
        lo = 1 if nonzero else 0
        if size is None:
            return int(rng.integers(lo, self.order))
        return rng.integers(lo, self.order, size=size, dtype=np.int64)

    # ----- text format -----
    def spec(self) -> str:
        return f"{self.q},{self.m},{self.r},[{','.join(map(str, self.prim_poly))}]"


def parse_field_spec(text: str) -> GF:
    """Parse ``q,m,r,[p0,...,pm]`` (prim_poly constant term first)."""
    head, _, tail = text.partition("[")
    parts = [p for p in head.replace(" ", "").split(",") if p]
    if len(parts) != 3 or not tail.endswith("]"):
        raise ValueError(f"bad field spec {text!r}")
    q, m, r = (int(p) for p in parts)
    poly = [int(c) for c in tail[:-1].split(",") if c.strip()]
    return GF(q, m, poly, r)


def format_elem(ctx: GF, a: int) -> str:
    return ",".join(str(d) for d in ctx.to_digits(a))


def parse_elem(ctx: GF, text) -> int:
    if isinstance(text, (list, tuple)):
        return ctx.from_digits(text)
    return ctx.from_digits([int(t) for t in str(text).split(",") if t.strip()])
