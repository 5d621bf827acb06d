"""Moments of a uniformly random parking function.

Exact values are computed from the counting formulas with integer or rational
arithmetic.  Every double sum is reorganised so that the sums over preferences
collapse into power sums, which keeps the cost at O(m) or O(m^2) big-integer
terms.  For ``n`` above :data:`EXACT_LIMIT` the same sums are evaluated in
floating point in log space with :func:`math.fsum` (``method="float"``).

Asymptotic reference values follow the regime ``m = c n`` with ``0 < c < 1`` and
the special regime ``m = n``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .enumeration import binom, count_pf, multinomial, rpow

__all__ = [
    "EXACT_LIMIT",
    "AsymptoticContext",
    "MomentReport",
    "first_coordinate_law",
    "exact_moment_coord",
    "exact_mixed_moment",
    "GapMoments",
    "exact_gap_moments",
    "exact_coord_gap_moment",
    "exact_stat",
    "asym_mixed_moment",
    "asym_refined",
    "asym_special_mn",
    "tree_function_values",
    "tree_series",
    "moment_report",
    "REFINED_KINDS",
]

EXACT_LIMIT = 500

REFINED_KINDS = (
    "E_pi1",
    "E_pi1pi2",
    "E_ki",
    "E_ki2",
    "E_kikj",
    "E_pi1ki",
    "Var_pi1",
    "Cov_pi1pi2",
    "Cov_pi1ki",
    "Var_ki",
    "Cov_kikj",
)


@dataclass(frozen=True)
class AsymptoticContext:
    n: int
    c: Fraction

    def __post_init__(self):
        c = Fraction(self.c)
        object.__setattr__(self, "c", c)
        if not 0 < c < 1:
            raise ValueError(f"c must lie in (0, 1), got {c}")
        if (c * self.n).denominator != 1:
            raise ValueError(f"m = c n must be an integer (c={c}, n={self.n})")

    @property
    def m(self) -> int:
        return int(self.c * self.n)

    @classmethod
    def from_mn(cls, m: int, n: int) -> "AsymptoticContext":
        return cls(n, Fraction(m, n))


@dataclass(frozen=True)
class MomentReport:
    kind: str
    m: int
    n: int
    exact: Fraction | float | None
    asymptotic: float
    abs_err: float
    rel_err: float
    terms_used: str


# ---------------------------------------------------------------------------
# exact sums


def _power_sums(r: int, top: int) -> list[int]:
    """``out[N] = 1^r + ... + N^r`` for ``0 <= N <= top``."""
    out = [0] * (top + 1)
    acc = 0
    for j in range(1, top + 1):
        acc += j**r
        out[j] = acc
    return out


def _use_float(method: str, n: int) -> bool:
    if method == "auto":
        return n > EXACT_LIMIT
    if method not in ("exact", "float"):
        raise ValueError(f"unknown method {method!r}")
    return method == "float"


def _log_rpow(base: int, exp: int) -> float:
    return exp * math.log(base) if exp else 0.0


def _log_comb(n: int, parts: Sequence[int]) -> float:
    return math.lgamma(n + 1) - sum(math.lgamma(p + 1) for p in parts)


def _log_count_pf(m: int, n: int) -> float:
    return math.log(n - m + 1) + (m - 1) * math.log(n + 1) if m else 0.0


def first_coordinate_law(m: int, n: int) -> list[int]:
    """``out[j] = #{pi in PF(m, n): pi_1 = j}`` for ``1 <= j <= n`` (``out[0] = 0``)."""
    if not 1 <= m <= n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    # weight[s] is (n-m+1) C(m-1, s) (n-s)^(m-s-2) (s+1)^(s-1), an integer
    weight = []
    for s in range(m):
        w = math.comb(m - 1, s) * (s + 1) ** (s - 1) if s else math.comb(m - 1, s)
        if s < m - 1:
            w *= (n - m + 1) * (n - s) ** (m - s - 2)
        weight.append(w)
    # pi_1 = j collects the terms with s <= min(n - j, m - 1)
    cum = [0] * m
    acc = 0
    for s, w in enumerate(weight):
        acc += w
        cum[s] = acc
    return [0] + [cum[min(n - j, m - 1)] for j in range(1, n + 1)]


def exact_moment_coord(p: int, m: int, n: int) -> Fraction:
    """``E(pi_1 ** p)`` for ``pi`` uniform on ``PF(m, n)``."""
    if m < 1:
        raise ValueError("need at least one car")
    if p < 0:
        raise ValueError("p must be non-negative")
    law = first_coordinate_law(m, n)
    total = sum(j**p * c for j, c in enumerate(law))
    return Fraction(total, count_pf(m, n))


def _mixed_terms(m, n):
    """Yield ``(s, t)`` for the two-coordinate double sum.

    ``s`` and ``t`` are the sizes of the middle and last multi-shuffle components;
    the first two preferences then range over ``j <= n-1-s-t`` and ``k <= n-t``.
    """
    for s in range(m - 1):
        for t in range(m - 1 - s):
            yield s, t


def exact_mixed_moment(p: int, q: int, m: int, n: int, method: str = "auto") -> Fraction | float:
    """``E(pi_1 ** p * pi_2 ** q)``; symmetric in ``p`` and ``q``."""
    if p < 1 or q < 1:
        raise ValueError("p and q must be >= 1")
    if m < 2 or m > n:
        raise ValueError(f"need 2 <= m <= n, got m={m}, n={n}")
    Sp, Sq, Spq = _power_sums(p, n), _power_sums(q, n), _power_sums(p + q, n)

    def cross(r1, S1, S2):
        # cross[A] = sum_{j<=A} j^r1 * S2[j]
        out = [0] * (n + 1)
        acc = 0
        for j in range(1, n + 1):
            acc += j**r1 * S2[j]
            out[j] = acc
        return out

    Wpq, Wqp = cross(p, Sp, Sq), cross(q, Sq, Sp)

    def pref_sum(s, t):
        A, B = n - 1 - s - t, n - t
        pairs = Sp[A] * Sq[B] - Wpq[A] + Sq[A] * Sp[B] - Wqp[A]
        return pairs + Spq[A]  # the tie pi_1 = pi_2 behaves like (j, j + 1)

    if _use_float(method, n):
        log_total = _log_count_pf(m, n)
        terms = []
        for s, t in _mixed_terms(m, n):
            r = m - 2 - s - t
            lw = _log_comb(m - 2, (s, t, r)) + _log_rpow(s + 1, s - 1) + _log_rpow(t + 1, t - 1)
            lw += math.log(n - m + 1) + _log_rpow(n - 1 - s - t, r - 1)
            terms.append(math.exp(lw - log_total) * float(pref_sum(s, t)))
        return math.fsum(terms)

    total = 0
    for s, t in _mixed_terms(m, n):
        r = m - 2 - s - t
        w = multinomial(m - 2, (s, t, r)) * (s + 1) ** max(s - 1, 0) * (t + 1) ** max(t - 1, 0)
        if r > 0:
            w *= (n - m + 1) * (n - 1 - s - t) ** (r - 1)
        # r == 0: (n-1-s-t)^-1 = (n-m+1)^-1 cancels the leading (n-m+1)
        total += w * pref_sum(s, t)
    return Fraction(total, count_pf(m, n))


@dataclass(frozen=True)
class GapMoments:
    E_ki: Fraction | float
    E_ki2: Fraction | float
    E_kikj: Fraction | float | None = None


def _check_gap_index(i, m, n):
    if m > n or not 1 <= i <= n - m:
        raise ValueError(f"need 1 <= i <= n - m, got i={i}, m={m}, n={n}")


def _gap_law(i, m, n, use_float):
    """``[(k, weight)]`` with weight proportional to ``P(k_i = k)``; also the normaliser."""
    out = []
    for k in range(i, m + i + 1):
        if use_float:
            lw = (
                _log_comb(m, (k - i, m - k + i))
                + _log_count_pf(k - i, k - 1)
                + _log_count_pf(m - k + i, n - k)
            )
            out.append((k, math.exp(lw - _log_count_pf(m, n))))
        else:
            out.append((k, math.comb(m, k - i) * count_pf(k - i, k - 1) * count_pf(m - k + i, n - k)))
    return out


def exact_gap_moments(i: int, j: int | None, m: int, n: int, method: str = "auto") -> GapMoments:
    """``E(k_i)``, ``E(k_i ** 2)`` and, when ``j`` is given, ``E(k_i k_j)``."""
    _check_gap_index(i, m, n)
    use_float = _use_float(method, n)
    law = _gap_law(i, m, n, use_float)
    if use_float:
        e1 = math.fsum(k * w for k, w in law)
        e2 = math.fsum(k * k * w for k, w in law)
    else:
        total = count_pf(m, n)
        e1 = Fraction(sum(k * w for k, w in law), total)
        e2 = Fraction(sum(k * k * w for k, w in law), total)
    e12 = None
    if j is not None:
        if not i < j <= n - m:
            raise ValueError(f"need i < j <= n - m, got i={i}, j={j}")
        e12 = _gap_pair_moment(i, j, m, n, use_float)
    return GapMoments(e1, e2, e12)


def _gap_pair_moment(i, j, m, n, use_float):
    # s, t: sizes of the segments before k_i and between k_i and k_j
    d = j - i
    if use_float:
        log_total = _log_count_pf(m, n)
        terms = []
        for s in range(m + 1):
            for t in range(m - s + 1):
                r = m - s - t
                lw = (
                    _log_comb(m, (s, t, r))
                    + _log_count_pf(s, s + i - 1)
                    + _log_count_pf(t, t + d - 1)
                    + _log_count_pf(r, n - (s + t + j))
                )
                k, l = s + i, s + t + j
                terms.append(k * l * math.exp(lw - log_total))
        return math.fsum(terms)
    acc = 0
    for s in range(m + 1):
        k = s + i
        left = math.comb(m, s) * count_pf(s, k - 1)
        for t in range(m - s + 1):
            l = k + t + d
            r = m - s - t
            acc += k * l * left * math.comb(m - s, t) * count_pf(t, l - k - 1) * count_pf(r, n - l)
    return Fraction(acc, count_pf(m, n))


def exact_coord_gap_moment(i: int, m: int, n: int, method: str = "auto") -> Fraction | float:
    """``E(pi_1 * k_i)``.

    For each ``k`` the count with ``pi_1 = j`` depends on ``j`` only through the
    upper limit of an inner sum, so summing ``j`` first leaves triangular numbers.
    """
    _check_gap_index(i, m, n)
    use_float = _use_float(method, n)

    def tri(x):
        return x * (x + 1) // 2

    if use_float:
        log_total = _log_count_pf(m, n)
        lg = math.log
        terms = []
        for k in range(i, m + i + 1):
            if k > i:
                head = (
                    _log_comb(m - 1, (m - k + i, k - i - 1)) + lg(i) + lg(n - m - i + 1)
                    + _log_rpow(n - k + 1, m - k + i - 1)
                )
                for s in range(k - i):
                    lt = (
                        _log_comb(k - i - 1, (s, k - i - 1 - s))
                        + _log_rpow(k - 1 - s, k - i - s - 2) + _log_rpow(s + 1, s - 1)
                    )
                    terms.append(k * tri(k - 1 - s) * math.exp(head + lt - log_total))
            if k < m + i:
                head = (
                    _log_comb(m - 1, (k - i, m - 1 - k + i)) + lg(i) + _log_rpow(k, k - i - 1)
                    + lg(n - m - i + 1)
                )
                for s in range(m + i - k):
                    lt = (
                        _log_comb(m - k + i - 1, (s, m - k + i - 1 - s))
                        + _log_rpow(n - k - s, m + i - k - s - 2) + _log_rpow(s + 1, s - 1)
                    )
                    terms.append(k * (tri(n - s) - tri(k)) * math.exp(head + lt - log_total))
        return math.fsum(terms)

    total: int | Fraction = 0
    for k in range(i, m + i + 1):
        # pi_1 = j < k
        head = binom(m - 1, m - k + i) * i * (n - m - i + 1) * rpow(n - k + 1, m - k + i - 1)
        inner: int | Fraction = 0
        for s in range(k - i):
            inner += (
                binom(k - i - 1, s) * rpow(k - 1 - s, k - i - s - 2) * rpow(s + 1, s - 1)
                * tri(k - 1 - s)
            )
        total += k * head * inner
        # pi_1 = j > k
        head = binom(m - 1, k - i) * i * rpow(k, k - i - 1) * (n - m - i + 1)
        inner = 0
        for s in range(m + i - k):
            inner += (
                binom(m - k + i - 1, s) * rpow(n - k - s, m + i - k - s - 2) * rpow(s + 1, s - 1)
                * (tri(n - s) - tri(k))
            )
        total += k * head * inner
    return Fraction(total) / count_pf(m, n)


def exact_stat(kind: str, m: int, n: int, i: int = 1, j: int = 2, method: str = "auto"):
    """Exact value of any of :data:`REFINED_KINDS` at finite ``(m, n)``."""
    if kind == "E_pi1":
        return exact_moment_coord(1, m, n)
    if kind == "E_pi1pi2":
        return exact_mixed_moment(1, 1, m, n, method)
    if kind == "Var_pi1":
        e1 = exact_moment_coord(1, m, n)
        return exact_moment_coord(2, m, n) - e1 * e1
    if kind == "Cov_pi1pi2":
        e1 = exact_moment_coord(1, m, n)
        return exact_mixed_moment(1, 1, m, n, method) - e1 * e1
    if kind in ("E_ki", "E_ki2", "Var_ki"):
        g = exact_gap_moments(i, None, m, n, method)
        return {"E_ki": g.E_ki, "E_ki2": g.E_ki2, "Var_ki": g.E_ki2 - g.E_ki * g.E_ki}[kind]
    if kind in ("E_kikj", "Cov_kikj"):
        g = exact_gap_moments(i, j, m, n, method)
        if kind == "E_kikj":
            return g.E_kikj
        gj = exact_gap_moments(j, None, m, n, method)
        return g.E_kikj - g.E_ki * gj.E_ki
    if kind == "E_pi1ki":
        return exact_coord_gap_moment(i, m, n, method)
    if kind == "Cov_pi1ki":
        g = exact_gap_moments(i, None, m, n, method)
        e1 = exact_moment_coord(1, m, n)
        return exact_coord_gap_moment(i, m, n, method) - e1 * g.E_ki
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# asymptotics


def asym_mixed_moment(p_list: Sequence[int], ctx: AsymptoticContext) -> float:
    """Two-term expansion of ``E(prod pi_i ** p_i)`` for ``m = c n``."""
    if not p_list or any(p < 1 for p in p_list):
        raise ValueError("exponents must be >= 1")
    n, c = ctx.n, float(ctx.c)
    P, l = sum(p_list), len(p_list)
    lead = n**P / math.prod(p + 1 for p in p_list)
    return lead * (1 + ((P + l) / 2 - c * P / (1 - c)) / n)


def asym_refined(kind: str, ctx: AsymptoticContext, i: int = 1, j: int = 2) -> float:
    """Closed-form large-``n`` approximation of a moment or covariance."""
    n, c = ctx.n, float(ctx.c)
    d = 1 - c
    table: dict[str, Callable[[], float]] = {
        "E_pi1": lambda: n / 2 + (1 - 2 * c) / (2 * d) + (1 + c - c * c) / (2 * d**3 * n),
        "E_pi1pi2": lambda: (
            n * n / 4 + (1 - 2 * c) * n / (2 * d) + (1 - c + 3 * c * c - 2 * c**3) / (2 * d**3)
        ),
        "E_ki": lambda: i / d - i * c / (d * d * n),
        "E_ki2": lambda: i * (c + i - i * c) / d**3,
        "E_kikj": lambda: i * (c + j - j * c) / d**3,
        "E_pi1ki": lambda: i * n / (2 * d) - 3 * i * c / (2 * d * d),
        "Var_pi1": lambda: n * n / 12 - c * n / (6 * d),
        "Cov_pi1pi2": lambda: -1 / (4 * d * d),
        "Cov_pi1ki": lambda: -i / (2 * d * d),
        "Var_ki": lambda: i * c / d**3,
        "Cov_kikj": lambda: i * c / d**3,
    }
    try:
        return table[kind]()
    except KeyError:
        raise ValueError(f"unknown kind {kind!r}") from None


def asym_special_mn(kind: str, n: int) -> float:
    """Expansions for ``m = n``, where the square-root term appears."""
    r = math.sqrt(2 * math.pi) / 4
    if kind == "E_pi1":
        return n / 2 - r * math.sqrt(n) + 5 / 3
    if kind == "E_pi1pi2":
        return n * n / 4 - r * n**1.5 + 2 * n
    raise ValueError(f"unknown kind {kind!r}")


# ---------------------------------------------------------------------------
# tree function


def tree_function_values(kind: str, i: int | None, c: float) -> float:
    """Closed forms of the tree function family at ``z = c exp(-c)``.

    ``F(z) = sum (s+1)^(s-1) z^s / s!`` and its generalisations
    ``F_i = sum (s+i)^(s-1) z^s / s!``, ``G_i = sum (s+i)^s z^s / s!``,
    ``H_i = sum (s+i)^(s+1) z^s / s!``.
    """
    if not 0 < c < 1:
        raise ValueError(f"c must lie in (0, 1), got {c}")
    e = math.exp
    d = 1 - c
    if kind == "F":
        return e(c)
    if kind == "dF":
        return e(2 * c) / d
    if kind == "d2F":
        return (3 - 2 * c) * e(3 * c) / d**3
    if i is None or i < 1:
        raise ValueError(f"{kind} needs an index i >= 1")
    if kind == "F_i":
        return e(i * c) / i
    if kind == "G_i":
        return e(i * c) / d
    if kind == "dG_i":
        return (i + 1 - i * c) * e((i + 1) * c) / d**3
    if kind == "d2G_i":
        return (d * d * i * i + d * (4 - c) * i + (4 - c)) * e((i + 2) * c) / d**5
    if kind == "H_i":
        return (d * i + c) * e(i * c) / d**3
    raise ValueError(f"unknown kind {kind!r}")


_SERIES = {
    # kind: (shift, power offset, derivative order)
    "F": (1, -1, 0),
    "dF": (1, -1, 1),
    "d2F": (1, -1, 2),
    "F_i": (None, -1, 0),
    "G_i": (None, 0, 0),
    "dG_i": (None, 0, 1),
    "d2G_i": (None, 0, 2),
    "H_i": (None, 1, 0),
}


def tree_series(kind: str, i: int | None, z: float, terms: int) -> float:
    """Truncated power series for the functions of :func:`tree_function_values`.

    Terms are formed in log space so that thousands of them stay finite.
    """
    shift, off, deriv = _SERIES[kind]
    a = shift if shift is not None else i
    if a is None:
        raise ValueError(f"{kind} needs an index i")
    lz = math.log(z)
    out = []
    for s in range(deriv, terms):
        # d^r/dz^r z^s / s! = z^(s-r) / (s-r)!
        base = s + a
        lt = (s - deriv) * lz - math.lgamma(s - deriv + 1) + (s + off) * math.log(base)
        out.append(math.exp(lt))
    return math.fsum(out)


# ---------------------------------------------------------------------------


def moment_report(kind: str, m: int, n: int, i: int = 1, j: int = 2, method: str = "auto") -> MomentReport:
    """Exact versus asymptotic comparison for one quantity at ``(m, n)``."""
    if m == n:
        if kind not in ("E_pi1", "E_pi1pi2"):
            raise ValueError(f"{kind} has no m = n expansion")
        asym = asym_special_mn(kind, n)
        terms = "m=n: three terms, sqrt(n) correction"
    else:
        asym = asym_refined(kind, AsymptoticContext.from_mn(m, n), i, j)
        terms = {
            "E_pi1": "three terms, through 1/n",
            "E_pi1pi2": "three terms, through O(1)",
            "E_ki": "two terms, through 1/n",
            "E_pi1ki": "two terms, through O(1)",
            "Var_pi1": "two terms, through n",
        }.get(kind, "leading term")
    exact = exact_stat(kind, m, n, i, j, method)
    ex = float(exact)
    abs_err = abs(ex - asym)
    rel_err = abs_err / abs(ex) if ex else math.inf
    return MomentReport(kind, m, n, exact, asym, abs_err, rel_err, terms)
