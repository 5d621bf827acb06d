"""Abel multinomial sums and their recurrences.

``A_n(x; p) = sum over s |= n of C(n; s) prod_j (x_j + s_j) ** (s_j + p_j)``,
summed over weak compositions ``s`` of ``n`` into ``len(x)`` parts.  Values are
exact; negative exponents give rationals.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .enumeration import compositions, count_pf, multinomial, rpow

__all__ = [
    "abel_multinomial",
    "abel_all_minus_one",
    "abel_last_zero",
    "check_symmetry",
    "check_shift_recurrence",
    "check_peel_recurrence",
    "abel_moment_estimate",
]


def _norm(v: int | Fraction) -> Fraction:
    return Fraction(v)


def abel_multinomial(x: Sequence[int], p: Sequence[int], n: int) -> Fraction:
    """Direct sum over compositions of ``n`` into ``len(x)`` parts."""
    if len(x) != len(p) or not x:
        raise ValueError("x and p must be non-empty and of equal length")
    if n < 0:
        raise ValueError("n must be non-negative")
    if any(xi < 1 for xi in x):
        raise ValueError("x entries must be >= 1")
    total: int | Fraction = 0
    for s in compositions(n, len(x)):
        term: int | Fraction = multinomial(n, s)
        for xj, sj, pj in zip(x, s, p):
            term *= rpow(xj + sj, sj + pj)
        total += term
    return _norm(total)


def abel_all_minus_one(x: Sequence[int], n: int) -> Fraction:
    """Closed form of ``A_n(x; -1, ..., -1)``."""
    X = sum(x)
    return Fraction(X, math.prod(x)) * rpow(X + n, n - 1)


def abel_last_zero(x: Sequence[int], n: int) -> Fraction:
    """Closed form of ``A_n(x; -1, ..., -1, 0)``."""
    X = sum(x)
    return Fraction(x[-1] * (X + n) ** n, math.prod(x))


def check_symmetry(x, p, n, a: int, b: int) -> tuple[Fraction, Fraction]:
    """Both sides of the swap identity for positions ``a`` and ``b``."""
    x2, p2 = list(x), list(p)
    x2[a], x2[b] = x2[b], x2[a]
    p2[a], p2[b] = p2[b], p2[a]
    return abel_multinomial(x, p, n), abel_multinomial(x2, p2, n)


def check_shift_recurrence(x, p, n) -> tuple[Fraction, Fraction]:
    """``A_n(x; p) = sum_i A_{n-1}(x + e_i; p + e_i)``, both sides (``n >= 1``)."""
    if n < 1:
        raise ValueError("recurrence needs n >= 1")
    rhs = Fraction(0)
    for i in range(len(x)):
        xi = list(x)
        pi = list(p)
        xi[i] += 1
        pi[i] += 1
        rhs += abel_multinomial(xi, pi, n - 1)
    return abel_multinomial(x, p, n), rhs


def check_peel_recurrence(x, p, n) -> tuple[Fraction, Fraction]:
    """``A_n(x; p) = sum_s C(n, s) s! (x_1 + s) A_{n-s}(x_1 + s, x_2, ...; p_1 - 1, p_2, ...)``."""
    rhs = Fraction(0)
    for s in range(n + 1):
        x1 = [x[0] + s] + list(x[1:])
        p1 = [p[0] - 1] + list(p[1:])
        rhs += math.comb(n, s) * math.factorial(s) * (x[0] + s) * abel_multinomial(x1, p1, n - s)
    return abel_multinomial(x, p, n), rhs


def abel_moment_estimate(p_list: Sequence[int], m: int, n: int) -> Fraction:
    """Abel-sum approximation to ``E(prod pi_i ** p_i)``, valid for any ``m <= n``.

    Three Abel sums with first argument ``n - m + 1`` and ``l`` ones replace the
    exact preference sums by their leading power-sum behaviour.
    """
    l = len(p_list)
    if not 1 <= l <= m <= n:
        raise ValueError("need 1 <= len(p_list) <= m <= n")
    P = sum(p_list)
    x = [n - m + 1] + [1] * l
    a = abel_multinomial(x, [P + l - 1] + [-1] * l, m - l)
    b = abel_multinomial(x, [P + l - 2, 0] + [-1] * (l - 1), m - l)
    c = abel_multinomial(x, [P + l - 2] + [-1] * l, m - l)
    total = a + (l - 1) * (P + l) * b + Fraction(P + l, 2) * c
    total *= Fraction(n - m + 1, math.prod(q + 1 for q in p_list))
    return total / count_pf(m, n)
