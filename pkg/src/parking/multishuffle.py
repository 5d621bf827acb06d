"""Multi-shuffle decomposition of preference suffixes.

Fix the preferences of cars ``l+1..m``.  The first ``l`` preferences that complete
them to a parking function form a down-set (up to sorting) with a unique maximal
strictly increasing element ``u``.  A suffix has maximal completion ``u`` exactly
when it splits, by value bands cut at ``u_1 < ... < u_l``, into ``l + 1`` parking
functions of sizes ``(m-n+u_1-1, u_1-1)``, ``(u_2-u_1-1, u_2-u_1-1)``, ...,
``(n-u_l, n-u_l)``, with the band offsets ``0, u_1, ..., u_l`` removed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core import is_parking_function

__all__ = [
    "MultiShuffleDecomp",
    "max_completion",
    "decompose",
    "interleave",
    "is_multishuffle",
    "ms_frames",
]


@dataclass(frozen=True)
class MultiShuffleDecomp:
    u: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    frames: tuple[tuple[int, int], ...]  # (cars, spots) of each component
    offsets: tuple[int, ...]  # value shift of each component: (0, u_1, ..., u_l)
    interleaving: tuple[tuple[int, int], ...]  # suffix position -> (component, index)


def max_completion(suffix: Sequence[int], l: int, m: int, n: int) -> tuple[int, ...] | None:
    """Component-wise maximal ``u`` with ``(u, suffix)`` a parking function.

    The answer is found coordinate by coordinate from the top, each by binary
    search, using monotonicity of the parking predicate in every coordinate.
    Returns ``None`` when no completion exists.
    """
    if not 1 <= l <= m:
        raise ValueError(f"need 1 <= l <= m, got l={l}, m={m}")
    if m > n:
        raise ValueError(f"more cars than spots ({m} > {n})")
    if len(suffix) != m - l:
        raise ValueError(f"suffix has length {len(suffix)}, expected {m - l}")
    suffix = list(suffix)
    u = [1] * l
    if not is_parking_function(u + suffix, n):
        return None
    for i in range(l - 1, -1, -1):
        lo, hi = 1, n  # u[i] = lo is known feasible
        while lo < hi:
            mid = (lo + hi + 1) // 2
            u[i] = mid
            if is_parking_function(u + suffix, n):
                lo = mid
            else:
                hi = mid - 1
        u[i] = lo
    return tuple(u)


def _bands(word, offsets, frames):
    """Split ``word`` into value bands; ``None`` if any band is malformed."""
    k = len(frames)
    parts = [[] for _ in range(k)]
    where = []
    for v in word:
        # band j holds values in (offsets[j], offsets[j] + spots_j]
        for j in range(k):
            lo = offsets[j]
            hi = lo + frames[j][1]
            if lo < v <= hi:
                where.append((j, len(parts[j])))
                parts[j].append(v - lo)
                break
        else:
            return None  # v hits a cut point u_i or lies outside [1, n]
    for part, (cars, spots) in zip(parts, frames):
        if len(part) != cars or not is_parking_function(part, spots):
            return None
    return tuple(tuple(p) for p in parts), tuple(where)


def _check_u(u, m, n):
    for i, ui in enumerate(u, start=1):
        if not n - m + i <= ui <= n:
            raise ValueError(f"u_{i}={ui} outside [{n - m + i}, {n}]")
    if any(a >= b for a, b in zip(u, u[1:])):
        raise ValueError("u must be strictly increasing")


def decompose(
    suffix: Sequence[int], u: Sequence[int], m: int, n: int
) -> MultiShuffleDecomp | None:
    """Split ``suffix`` into the ``l + 1`` component parking functions cut out by ``u``.

    Succeeds exactly when ``max_completion(suffix, len(u), m, n) == u``.
    """
    u = tuple(u)
    l = len(u)
    _check_u(u, m, n)
    if len(suffix) != m - l:
        raise ValueError(f"suffix has length {len(suffix)}, expected {m - l}")
    cuts = (0,) + u + (n + 1,)
    offsets = cuts[:-1]
    frames = [(m - n + u[0] - 1, u[0] - 1)] if l else [(m, n)]
    frames += [(b - a - 1, b - a - 1) for a, b in zip(cuts[1:], cuts[2:])]
    res = _bands(suffix, offsets, frames)
    if res is None:
        return None
    parts, where = res
    return MultiShuffleDecomp(u, parts, tuple(frames), offsets, where)


def interleave(d: MultiShuffleDecomp) -> tuple[int, ...]:
    """Reassemble the suffix from a decomposition."""
    return tuple(d.components[j][k] + d.offsets[j] for j, k in d.interleaving)


def ms_frames(ms: Sequence[int]) -> tuple[tuple[tuple[int, int], ...], tuple[int, ...]]:
    """Frames and offsets of ``MS(a, b, c_2, ..., c_{l+1})``.

    The first component is a parking function of ``a`` cars on ``b`` spots, the
    others are classical parking functions of sizes ``c_i``.
    """
    if len(ms) < 2:
        raise ValueError("MS needs at least (cars, spots) of the first component")
    frames = [(ms[0], ms[1])] + [(c, c) for c in ms[2:]]
    offsets = [0]
    for _, spots in frames[:-1]:
        offsets.append(offsets[-1] + spots + 1)
    return tuple(frames), tuple(offsets)


def is_multishuffle(word: Sequence[int], ms: Sequence[int]) -> bool:
    """Whether ``word`` interleaves valid components of ``MS(*ms)`` after offset removal."""
    frames, offsets = ms_frames(ms)
    if any(c < 0 or s < 0 or c > s for c, s in frames):
        return False
    return _bands(word, offsets, frames) is not None
