"""Exact counting of parking functions and their refinements.

Everything here returns Python integers (or :class:`fractions.Fraction` for
polytope volumes).  Formula terms of the shape ``x ** (s - 1)`` are evaluated as
exact rationals, so a term like ``1 ** -1`` or ``(n - m + 1) ** -1`` is a genuine
reciprocal; the reciprocals cancel in the final sum, which is checked to be an
integer before it is returned.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from typing import Iterator, Sequence

from .core import FailureReport, is_parking_function, park

__all__ = [
    "BudgetExceededError",
    "DEFAULT_BUDGET",
    "multinomial",
    "compositions",
    "count_pf",
    "count_pf_composition",
    "count_pf_prefix",
    "count_pf_contiguous",
    "is_u_parking_function",
    "count_u_parking",
    "completion_thresholds",
    "gaps_to_prefix",
    "balanced_vectors",
    "ps_volume",
    "count_pf_gap",
    "count_pf_coord_gap",
    "count_pf_two_gaps",
    "enumerate_pf",
]

DEFAULT_BUDGET = 10**8


class BudgetExceededError(RuntimeError):
    """Brute-force enumeration would exceed the configured size budget."""


def rpow(base: int, exp: int) -> int | Fraction:
    """``base ** exp`` with an exact rational result for negative ``exp``."""
    if exp >= 0:
        return base**exp
    if base == 0:
        raise ZeroDivisionError("0 raised to a negative power")
    return Fraction(1, base ** (-exp))


def as_int(x: int | Fraction) -> int:
    if isinstance(x, Fraction):
        if x.denominator != 1:
            raise ArithmeticError(f"count formula produced a non-integer {x}")
        return x.numerator
    return x


def multinomial(n: int, parts: Sequence[int]) -> int:
    """Multinomial coefficient; zero when any argument is negative or parts miss ``n``."""
    if n < 0 or any(p < 0 for p in parts) or sum(parts) != n:
        return 0
    out = 1
    left = n
    for p in parts:
        out *= math.comb(left, p)
        left -= p
    return out


def binom(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    """Weak compositions of ``total`` into ``parts`` non-negative parts, lexicographic."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def _tree_weight(s: int) -> int | Fraction:
    # (s + 1) ** (s - 1): number of parking functions of length s
    return rpow(s + 1, s - 1)


def count_pf(m: int, n: int) -> int:
    """``|PF(m, n)| = (n - m + 1)(n + 1)^(m - 1)``."""
    if m < 0 or n < 0:
        raise ValueError("m and n must be non-negative")
    if m > n:
        raise ValueError(f"more cars than spots ({m} > {n})")
    if m == 0:
        return 1
    return (n - m + 1) * (n + 1) ** (m - 1)


def count_pf_composition(m: int, n: int) -> int:
    """``|PF(m, n)|`` summed over the segment lengths cut out by the unattempted spots."""
    if m > n:
        raise ValueError(f"more cars than spots ({m} > {n})")
    total: int | Fraction = 0
    for s in compositions(m, n - m + 1):
        term: int | Fraction = multinomial(m, s)
        for si in s:
            term *= _tree_weight(si)
        total += term
    return as_int(total)


def _validate_prefix(v, m, n):
    l = len(v)
    if l > m:
        raise ValueError(f"prefix longer than the number of cars ({l} > {m})")
    if m > n:
        raise ValueError(f"more cars than spots ({m} > {n})")
    for x in v:
        if not 1 <= x <= n:
            raise ValueError(f"prefix entry {x} outside [1, {n}]")
    if any(a > b for a, b in zip(v, v[1:])):
        raise ValueError("prefix must be sorted increasingly (counts are symmetric, sort first)")


def _prefix_sum_region(v, m, n):
    """Yield (s_1, ..., s_{l+1}) in S_l(v)."""
    l = len(v)
    budget = m - l
    lower = [max(0, m - n + v[i] - (i + 1)) for i in range(l)]

    def rec(i, partial, acc):
        if i == l:
            yield acc + (budget - partial,)
            return
        for si in range(max(0, lower[i] - partial), budget - partial + 1):
            yield from rec(i + 1, partial + si, acc + (si,))

    yield from rec(0, 0, ())


def count_pf_prefix(v: Sequence[int], m: int, n: int) -> int:
    """Number of ``pi`` in ``PF(m, n)`` with ``pi_1 = v_1, ..., pi_l = v_l``.

    ``v`` must be non-decreasing.  Repeated values are allowed: the first ``l``
    cars park in an empty lot, so ``v`` can be replaced by the spots they occupy,
    which are strictly increasing.
    """
    v = tuple(v)
    _validate_prefix(v, m, n)
    l = len(v)
    if l == 0:
        return count_pf(m, n)
    if len(set(v)) < l:
        res = park(v, n)
        if isinstance(res, FailureReport):
            return 0
        v = res.slots
    total: int | Fraction = 0
    for s in _prefix_sum_region(v, m, n):
        term: int | Fraction = multinomial(m - l, s)
        term *= rpow(s[0] + 1 + n - m, s[0] - 1)
        for si in s[1:]:
            term *= _tree_weight(si)
        total += term
    return as_int((n - m + 1) * total)


def count_pf_contiguous(k: int, l: int, m: int, n: int) -> int:
    """Number of ``pi`` in ``PF(m, n)`` with ``pi_1, ..., pi_l = k, ..., k + l - 1``."""
    if not 1 <= l <= m:
        raise ValueError(f"need 1 <= l <= m, got l={l}, m={m}")
    if m > n:
        raise ValueError(f"more cars than spots ({m} > {n})")
    if not 1 <= k <= n - l + 1:
        raise ValueError(f"block start {k} outside [1, {n - l + 1}]")
    total: int | Fraction = 0
    for s in range(min(n - k - l + 1, m - l) + 1):
        total += (
            math.comb(m - l, s)
            * rpow(n - s + 1 - l, m - s - l - 1)
            * l
            * rpow(s + l, s - 1)
        )
    return as_int((n - m + 1) * total)


def _check_u_vector(u):
    if any(x < 0 for x in u) or any(a > b for a, b in zip(u, u[1:])):
        raise ValueError("u must be a non-decreasing vector of non-negative integers")


def is_u_parking_function(pi: Sequence[int], u: Sequence[int]) -> bool:
    """Sorted ``pi`` lies componentwise below ``u``."""
    if len(pi) != len(u):
        raise ValueError("length mismatch")
    _check_u_vector(u)
    if any(p < 1 for p in pi):
        return False
    return all(a <= b for a, b in zip(sorted(pi), u))


def completion_thresholds(v: Sequence[int], m: int, n: int) -> tuple[int, ...]:
    """Threshold vector ``u`` with ``(v, rest)`` in ``PF(m, n)`` iff ``rest`` is u-parking.

    ``u`` consists of the largest ``m - l`` numbers of ``{n-m+1, ..., n}`` not in ``v``.
    """
    l = len(v)
    if l > m or m > n:
        raise ValueError("need len(v) <= m <= n")
    taken = set(v)
    free = [x for x in range(n - m + 1, n + 1) if x not in taken]
    return tuple(free[len(free) - (m - l):]) if m > l else ()


def gaps_to_prefix(u: Sequence[int]) -> tuple[int, ...]:
    """Values of ``[u_1, u_m]`` missing from a strictly increasing ``u``."""
    if any(a >= b for a, b in zip(u, u[1:])):
        raise ValueError("u must be strictly increasing")
    if not u:
        return ()
    present = set(u)
    return tuple(x for x in range(u[0], u[-1] + 1) if x not in present)


def balanced_vectors(m: int) -> Iterator[tuple[int, ...]]:
    """``k`` in N^m with ``k_1 + ... + k_i >= i`` for ``i < m`` and total ``m``."""

    def rec(i, partial, acc):
        if i == m - 1:
            yield acc + (m - partial,)
            return
        for ki in range(max(0, i + 1 - partial), m - partial + 1):
            yield from rec(i + 1, partial + ki, acc + (ki,))

    if m == 0:
        yield ()
        return
    yield from rec(0, 0, ())


def ps_volume(x: Sequence[int]) -> Fraction:
    """Volume polynomial of the Pitman-Stanley polytope at ``x`` (exact).

    ``m! * ps_volume(diff(u))`` counts the u-parking functions of length ``m``.
    """
    if any(xi < 0 for xi in x):
        raise ValueError("x must be non-negative")
    m = len(x)
    total = 0
    for k in balanced_vectors(m):
        term = multinomial(m, k)
        for xi, ki in zip(x, k):
            term *= xi**ki
        total += term
    return Fraction(total, math.factorial(m))


def count_u_parking(u: Sequence[int]) -> int:
    """``|PF(u)|`` through the polytope volume at the increments of ``u``."""
    _check_u_vector(u)
    x = [u[0]] + [b - a for a, b in zip(u, u[1:])] if u else []
    return as_int(math.factorial(len(u)) * ps_volume(x))


def count_pf_gap(i: int, k: int, m: int, n: int) -> int:
    """Number of ``pi`` in ``PF(m, n)`` whose ``i``-th unattempted spot is ``k``."""
    if m > n or not 1 <= i <= n - m:
        raise ValueError(f"need 1 <= i <= n - m, got i={i}, m={m}, n={n}")
    if not i <= k <= m + i:
        return 0
    return math.comb(m, k - i) * count_pf(k - i, k - 1) * count_pf(m - k + i, n - k)


def count_pf_two_gaps(i: int, k: int, j: int, l: int, m: int, n: int) -> int:
    """Number of ``pi`` in ``PF(m, n)`` with ``k_i = k`` and ``k_j = l`` (``i < j``)."""
    if m > n or not 1 <= i < j <= n - m:
        raise ValueError(f"need 1 <= i < j <= n - m, got i={i}, j={j}")
    if not (i <= k <= m + i and k - i + j <= l <= m + j):
        return 0
    a, b, c = k - i, l - k - j + i, m - l + j
    coeff = multinomial(m, (a, b, c))
    if coeff == 0:
        return 0
    return coeff * count_pf(a, k - 1) * count_pf(b, l - k - 1) * count_pf(c, n - l)


def count_pf_coord_gap(j: int, i: int, k: int, m: int, n: int) -> int:
    """Number of ``pi`` in ``PF(m, n)`` with ``pi_1 = j`` and ``k_i = k``."""
    if m > n or not 1 <= i <= n - m:
        raise ValueError(f"need 1 <= i <= n - m, got i={i}, m={m}, n={n}")
    if not 1 <= j <= n:
        raise ValueError(f"preference {j} outside [1, {n}]")
    if j == k or not i <= k <= m + i:
        return 0
    if j < k:
        head = binom(m - 1, m - k + i) * i * (n - m - i + 1) * rpow(n - k + 1, m - k + i - 1)
        inner: int | Fraction = 0
        for s in range(min(k - i - 1, k - j - 1) + 1):
            inner += binom(k - i - 1, s) * rpow(k - 1 - s, k - i - s - 2) * _tree_weight(s)
    else:
        head = binom(m - 1, k - i) * i * rpow(k, k - i - 1) * (n - m - i + 1)
        inner = 0
        for s in range(min(m + i - k - 1, n - j) + 1):
            inner += binom(m - k + i - 1, s) * rpow(n - k - s, m + i - k - s - 2) * _tree_weight(s)
    return as_int(head * inner)


def enumerate_pf(m: int, n: int, budget: int = DEFAULT_BUDGET) -> Iterator[tuple[int, ...]]:
    """All of ``PF(m, n)`` in lexicographic order (brute-force filter of ``[n]^m``)."""
    if m > n:
        raise ValueError(f"more cars than spots ({m} > {n})")
    if (n + 1) ** m > budget:
        raise BudgetExceededError(f"(n+1)^m = {(n + 1) ** m} exceeds budget {budget}")
    for pi in itertools.product(range(1, n + 1), repeat=m):
        if is_parking_function(pi, n):
            yield pi
