"""Parking simulation and membership predicates.

Spots and cars are numbered from 1.  A preference sequence is any sequence of
integers ``prefs`` together with the number of spots ``n``; car ``i`` drives to
``prefs[i]`` and takes the first free spot at or after it.

Free-spot lookup uses a "next free spot" pointer forest with path halving, so a
full simulation costs O((m + n) alpha(n)) instead of O(m n).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

__all__ = [
    "Outcome",
    "FailureReport",
    "CircularOutcome",
    "park",
    "outcome",
    "is_parking_function",
    "unattempted_spots",
    "conjugate",
    "park_circular",
    "leq_c",
    "NotParkingFunctionError",
]


class NotParkingFunctionError(ValueError):
    """Raised when an operation requires a parking function and gets something else."""


@dataclass(frozen=True)
class Outcome:
    slots: tuple[int, ...]  # slots[i] is the spot taken by car i + 1
    gaps: tuple[int, ...]  # unoccupied spots, increasing


@dataclass(frozen=True)
class FailureReport:
    failing_car: int  # 1-based index of the first car left without a spot

    def __str__(self) -> str:
        return f"car {self.failing_car} cannot park"


@dataclass(frozen=True)
class CircularOutcome:
    slots: tuple[int, ...]
    empty: tuple[int, ...]  # spots of Z/(n+1) (labelled 1..n+1) left empty


def _check_range(prefs: Sequence[int], lo: int, hi: int) -> None:
    for p in prefs:
        if not lo <= p <= hi:
            raise ValueError(f"preference {p} outside [{lo}, {hi}]")


def _find(nxt: list[int], s: int) -> int:
    # path halving
    while nxt[s] != s:
        nxt[s] = nxt[nxt[s]]
        s = nxt[s]
    return s


def park(prefs: Sequence[int], n: int) -> Outcome | FailureReport:
    """Run the parking process on a line of ``n`` spots.

    Returns an :class:`Outcome` when every car parks and a :class:`FailureReport`
    naming the first stranded car otherwise.  Failure is a value, not an error.
    """
    _check_range(prefs, 1, n)
    # nxt[s] points towards the first free spot >= s; n + 1 is the sentinel "off the end"
    nxt = list(range(n + 2))
    slots = []
    for car, p in enumerate(prefs, start=1):
        s = _find(nxt, p)
        if s > n:
            return FailureReport(car)
        slots.append(s)
        nxt[s] = s + 1
    taken = set(slots)
    gaps = tuple(s for s in range(1, n + 1) if s not in taken)
    return Outcome(tuple(slots), gaps)


def outcome(prefs: Sequence[int], n: int) -> tuple[int, ...]:
    """Spots taken by each car; raises if ``prefs`` is not a parking function."""
    res = park(prefs, n)
    if isinstance(res, FailureReport):
        raise NotParkingFunctionError(str(res))
    return res.slots


def is_parking_function(prefs: Sequence[int], n: int) -> bool:
    """Counting criterion: at least ``m - n + i`` cars prefer a spot ``<= i``."""
    m = len(prefs)
    if m > n:
        raise ValueError(f"more cars than spots ({m} > {n})")
    _check_range(prefs, 1, n)
    hist = [0] * (n + 1)
    for p in prefs:
        hist[p] += 1
    below = 0
    for i in range(1, n + 1):
        below += hist[i]
        if i >= n - m + 1 and below < m - n + i:
            return False
    return True


def unattempted_spots(prefs: Sequence[int], n: int) -> tuple[int, ...]:
    """Spots no car ever tries; for a parking function these are exactly the empty spots."""
    res = park(prefs, n)
    if isinstance(res, FailureReport):
        raise NotParkingFunctionError(str(res))
    return res.gaps


def conjugate(x: Sequence[int], n: int) -> tuple[int, ...]:
    """Reverse complement ``(n+1-x_m, ..., n+1-x_1)``."""
    _check_range(x, 1, n)
    return tuple(n + 1 - v for v in reversed(x))


def park_circular(prefs: Sequence[int], n: int) -> CircularOutcome:
    """Park on the cycle of ``n + 1`` spots, wrapping from ``n + 1`` back to 1.

    With ``m <= n`` cars every car parks and exactly ``n + 1 - m`` spots stay empty.
    """
    m = len(prefs)
    if m > n:
        raise ValueError(f"more cars than spots ({m} > {n})")
    size = n + 1
    _check_range(prefs, 1, size)
    # 0-based on the cycle; nxt[s] == s means s is free
    nxt = list(range(size))
    slots = []
    for p in prefs:
        s = p - 1
        while nxt[s] != s:
            nxt[s] = nxt[nxt[s]]
            s = nxt[s]
        slots.append(s + 1)
        nxt[s] = (s + 1) % size
    taken = set(slots)
    empty = tuple(s for s in range(1, size + 1) if s not in taken)
    return CircularOutcome(tuple(slots), empty)


def leq_c(a: Sequence[int], b: Sequence[int]) -> bool:
    """Componentwise order ``a <=_C b``."""
    if len(a) != len(b):
        raise ValueError("length mismatch")
    return all(x <= y for x, y in zip(a, b))
