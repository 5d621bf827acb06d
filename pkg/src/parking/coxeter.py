"""Normal forms of permutations in the symmetric group as a Coxeter system.

Permutations are one-line tuples of the values ``1..n``.  The normal form of
``x`` is ``lambda(x) = (lambda_1, ..., lambda_{n-1})`` with ``0 <= lambda_k <= k``,
where ``lambda_k`` is the number of adjacent transpositions needed to bubble the
value ``k + 1`` to position ``k + 1`` once all larger values have been moved out
of the way.  The reduced word is ``v_1 ... v_{n-1}`` with ``v_k = s_k s_{k-1} ...``
of length ``lambda_k``.
"""

from __future__ import annotations

from typing import Sequence

__all__ = [
    "normal_form",
    "perm_from_normal_form",
    "reduced_word",
    "perm_from_word",
    "inversions",
    "inverse",
]


def _check_perm(x: Sequence[int]) -> None:
    if sorted(x) != list(range(1, len(x) + 1)):
        raise ValueError(f"{tuple(x)} is not a permutation of 1..{len(x)}")


def inverse(x: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(x)
    for pos, v in enumerate(x, start=1):
        out[v - 1] = pos
    return tuple(out)


def inversions(x: Sequence[int]) -> int:
    return sum(1 for a in range(len(x)) for b in range(a + 1, len(x)) if x[a] > x[b])


def normal_form(x: Sequence[int]) -> tuple[int, ...]:
    """Bubble the largest value right, record the distance, repeat on the rest."""
    _check_perm(x)
    rest = list(x)
    lam = [0] * (len(x) - 1)
    for v in range(len(x), 1, -1):
        pos = rest.index(v)
        lam[v - 2] = len(rest) - 1 - pos
        del rest[pos]
    return tuple(lam)


def perm_from_normal_form(lam: Sequence[int]) -> tuple[int, ...]:
    """Insert ``2, 3, ..., n`` so that ``k + 1`` has ``lambda_k`` smaller values to its right."""
    out = [1]
    for k, lk in enumerate(lam, start=1):
        if not 0 <= lk <= k:
            raise ValueError(f"lambda_{k} = {lk} outside [0, {k}]")
        out.insert(len(out) - lk, k + 1)
    return tuple(out)


def reduced_word(lam: Sequence[int]) -> list[int]:
    """Generator indices of ``v_1 v_2 ... v_{n-1}``, each ``v_k = s_k s_{k-1} ... s_{k-lambda_k+1}``."""
    word = []
    for k, lk in enumerate(lam, start=1):
        word.extend(range(k, k - lk, -1))
    return word


def perm_from_word(word: Sequence[int], n: int) -> tuple[int, ...]:
    """Product ``s_{i_1} ... s_{i_r}`` in one-line notation (right multiplication swaps positions)."""
    x = list(range(1, n + 1))
    for i in word:
        x[i - 1], x[i] = x[i], x[i - 1]
    return tuple(x)
