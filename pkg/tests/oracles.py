"""Brute-force reference implementations.

Everything here is deliberately naive and shares no code with the package, so
agreement with it is an independent check.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def naive_park(prefs, n):
    """Spot of each car by linear scan, or None if some car fails."""
    taken = [False] * (n + 2)
    out = []
    for p in prefs:
        s = p
        while s <= n and taken[s]:
            s += 1
        if s > n:
            return None
        taken[s] = True
        out.append(s)
    return out


def naive_gaps(prefs, n):
    occ = set(naive_park(prefs, n))
    return [s for s in range(1, n + 1) if s not in occ]


def naive_circular_empty(prefs, n):
    size = n + 1
    taken = [False] * (size + 1)
    for p in prefs:
        s = p
        while taken[s]:
            s = s % size + 1
        taken[s] = True
    return [s for s in range(1, size + 1) if not taken[s]]


def brute_pf(m, n):
    return [pi for pi in itertools.product(range(1, n + 1), repeat=m) if naive_park(pi, n) is not None]


def brute_u_pf_count(u):
    m = len(u)
    if m == 0:
        return 1
    top = max(u[-1], 1)
    return sum(
        1
        for pi in itertools.product(range(1, top + 1), repeat=m)
        if all(a <= b for a, b in zip(sorted(pi), u))
    )


def naive_interval_park(a, b, n):
    taken = [False] * (n + 2)
    for lo, hi in zip(a, b):
        s = lo
        while s <= hi and taken[s]:
            s += 1
        if s > hi:
            return False
        taken[s] = True
    return True


def brute_ipf(m, n):
    out = []
    for a in itertools.product(range(1, n + 1), repeat=m):
        for b in itertools.product(range(1, n + 1), repeat=m):
            if naive_interval_park(a, b, n):
                out.append((a, b))
    return out


def brute_max_completion(suffix, l, m, n):
    """Componentwise maximum of the sorted completing prefixes, checked to generate them all."""
    good = [
        v for v in itertools.product(range(1, n + 1), repeat=l) if naive_park(v + tuple(suffix), n) is not None
    ]
    if not good:
        return None
    u = tuple(max(col) for col in zip(*(sorted(v) for v in good)))
    below = {v for v in itertools.product(range(1, n + 1), repeat=l) if all(x <= y for x, y in zip(sorted(v), u))}
    assert below == set(good), "completing prefixes are not a u-parking set"
    return u


def brute_expectation(f, m, n):
    pfs = brute_pf(m, n)
    return Fraction(sum(f(pi) for pi in pfs), len(pfs))
