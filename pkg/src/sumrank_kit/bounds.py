"""Decoding radii and failure-probability bounds."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import frac_ceil, kappa_q


@dataclass(frozen=True)
class Bound:
    value: float
    out_of_radius: bool = False

    def __float__(self):
        return self.value


def radius(family: str, s: int, n: int, k: int, mode: str, delta: int = 0) -> Fraction:
    """Decoding radius as an exact rational.

    ILRS/ISRS: list decoding corrects t < r, unique decoding t <= r.
    LILRS: the returned value bounds the insertions gamma for the given delta,
    with the same strict/non-strict convention (n is n_t here).
    """
    if mode not in ("list", "unique"):
        raise ValueError(f"unknown mode {mode!r}")
    slack = 1 if mode == "list" else 0
    if family in ("ilrs", "isrs"):
        return Fraction(s * (n - k + slack), s + 1)
    if family == "lilrs":
        return Fraction(s * (n - k + slack) - s * delta)
    raise ValueError(f"unknown family {family!r}")


def baseline_radius(n: int, k: int, mode: str) -> Fraction:
    """The non-interleaved (s = 1) radius for comparison."""
    return radius("ilrs", 1, n, k, mode)


def within_radius(family: str, s: int, n: int, k: int, mode: str, t: int, delta: int = 0) -> bool:
    r = radius(family, s, n, k, mode, delta)
    return t < r if mode == "list" else t <= r


def bound_ilrs(q: int, m: int, ell: int, s: int, n: int, k: int, t: int) -> Bound:
    """kappa_q^(ell+1) q^(-m((s+1)(t_max - t) + 1)) with t_max = s(n-k)/(s+1)."""
    tmax = Fraction(s * (n - k), s + 1)
    if t > tmax:
        return Bound(1.0, True)
    expo = m * ((s + 1) * (tmax - t) + 1)
    return Bound(min(1.0, kappa_q(q) ** (ell + 1) * float(q) ** (-float(expo))))


def bound_lilrs(q: int, m: int, ell: int, s: int, nt: int, k: int, gamma: int, delta: int) -> Bound:
    """kappa_q^(ell+1) q^(-m(gamma_max - gamma + 1)) with gamma_max = s(n_t - delta - k)."""
    gmax = s * (nt - delta - k)
    if gamma > gmax or delta > nt - k:
        return Bound(1.0, True)
    return Bound(min(1.0, kappa_q(q) ** (ell + 1) * float(q) ** (-m * (gmax - gamma + 1))))


def heuristic_bound_ilrs(q: int, m: int, s: int, n: int, k: int, t: int) -> Bound:
    du = frac_ceil(Fraction(n + s * k, s + 1))
    expo = m * (s * (du - k) - t + 1)
    return Bound(min(1.0, kappa_q(q) * float(q) ** (-expo)), expo <= 0)


def heuristic_bound_lilrs(q: int, m: int, s: int, nt: int, k: int, gamma: int, delta: int) -> Bound:
    nr = nt + gamma - delta
    du = frac_ceil(Fraction(nr + s * k, s + 1))
    expo = m * (s * (du - k) - gamma + 1)
    return Bound(min(1.0, kappa_q(q) * float(q) ** (-expo)), expo <= 0)


def heuristic_bound(family: str, q: int, m: int, s: int, n: int, k: int,
                    t: int = 0, gamma: int = 0, delta: int = 0) -> Bound:
    if family in ("ilrs", "isrs"):
        return heuristic_bound_ilrs(q, m, s, n, k, t)
    if family == "lilrs":
        return heuristic_bound_lilrs(q, m, s, n, k, gamma, delta)
    raise ValueError(f"unknown family {family!r}")
