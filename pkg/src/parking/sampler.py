"""Exact uniform sampling of parking functions and Monte Carlo estimates.

Sampling uses the circle construction: draw ``m`` preferences uniformly from
``n + 1`` spots arranged in a circle, park with wrap-around, pick one of the
``n + 1 - m`` empty spots uniformly and rotate it to position ``n + 1``.  Each
(sequence, empty spot) pair corresponds to exactly one (parking function,
rotation) pair, so the output is uniform on ``PF(m, n)``.

The batch sampler finds the empty circle spots of many sequences at once from
their preference histograms: starting just after the minimum of the prefix sums
of ``count - 1`` no car wraps into the first spot, so a one-pass queue recursion
gives the overflow at every spot.
"""

from __future__ import annotations

import math
import re
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .core import outcome, park_circular
from .ipf import IntervalPF

__all__ = [
    "SampleConfig",
    "McEstimate",
    "rotate_to_pf",
    "sample_pf",
    "circular_empty_mask",
    "sample_pf_batch",
    "sample_ipf_square",
    "parse_statistic",
    "mc_report",
]

_CELLS = 1 << 22  # rows * (n + 1) per vectorised chunk


@dataclass(frozen=True)
class SampleConfig:
    m: int
    n: int
    count: int
    seed: int = 0
    threads: int = 1

    def __post_init__(self):
        if not 0 <= self.m <= self.n:
            raise ValueError(f"need 0 <= m <= n, got m={self.m}, n={self.n}")
        if self.count < 1:
            raise ValueError("count must be >= 1")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 bits")


@dataclass(frozen=True)
class McEstimate:
    name: str
    mean: float
    std_error: float
    N: int
    note: str = ""


def rotate_to_pf(prefs, e: int, n: int):
    """Shift preferences so that circle spot ``e`` becomes spot ``n + 1``."""
    return ((np.asarray(prefs) - e - 1) % (n + 1)) + 1


def sample_pf(m: int, n: int, rng: np.random.Generator) -> tuple[int, ...]:
    """One uniform draw from ``PF(m, n)``."""
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    prefs = rng.integers(1, n + 2, size=m)
    empty = park_circular(prefs.tolist(), n).empty
    e = empty[rng.integers(len(empty))]
    return tuple(int(v) for v in rotate_to_pf(prefs, e, n))


def circular_empty_mask(prefs: np.ndarray, n: int) -> np.ndarray:
    """Boolean ``(rows, n + 1)`` mask of empty spots after circular parking of each row."""
    prefs = np.asarray(prefs)
    rows, m = prefs.shape
    size = n + 1
    flat = (np.arange(rows)[:, None] * size + prefs - 1).ravel()
    counts = np.bincount(flat, minlength=rows * size).reshape(rows, size).astype(np.int32)
    # P_t = sum_{s <= t} (c_s - 1); going back one lap adds size - m.  The overflow
    # past spot t is P_t minus the minimum of P over the preceding lap.
    P = np.cumsum(counts - 1, axis=1, dtype=np.int32)
    lead = np.minimum(np.minimum.accumulate(P, axis=1), 0)
    tail = np.minimum.accumulate(P[:, ::-1], axis=1)[:, ::-1]
    lap = np.empty_like(lead)
    lap[:, :-1] = tail[:, 1:] + (size - m)
    lap[:, -1] = np.iinfo(np.int32).max
    w = P - np.minimum(lead, lap)
    carry_in = np.roll(w, 1, axis=1)
    return (carry_in + counts) == 0


class _Chunk:
    """A block of uniform parking functions plus what is needed to read off their gaps.

    With preferences sorted per row, ``c_i = i + 1 - p_i`` (0-based ``i``) is the
    surplus ``#{p <= t} - t`` just before car ``i``'s spot.  Circle parking is
    started right after ``t*``, the first global minimum of that surplus (taking
    ``t* = n + 1`` when the minimum sits at the end).  The ``m - b`` cars above
    ``t*`` then fill a solid run, and the ``b`` cars at or below ``t*`` come after it,
    so the ``r``-th empty spot (0-based) in the rotated frame is
    ``r + 1 + (m - b) + min(b, #{i : c_i >= n + 1 - m + b - t* - r, for all i' <= i})``.
    """

    def __init__(self, m, n, rows, rng, out=None):
        size = n + 1
        self.m, self.n, self.rows = m, n, rows
        prefs = rng.integers(1, size + 1, size=(rows, m), dtype=np.int32)
        self.choice = rng.integers(0, size - m, size=rows).astype(np.int32)
        if m == 0:
            self.pf = prefs
            self.e_rot = self.choice + 1
            return
        p = np.sort(prefs, axis=1)
        self.cand = np.arange(1, m + 1, dtype=np.int32) - p
        first_min = np.argmin(self.cand, axis=1)
        low = self.cand[np.arange(rows), first_min]
        self.b = np.where(low <= m - size, first_min, m).astype(np.int32)
        t_star = np.where(self.b < m, p[np.arange(rows), first_min] - 1, size)
        self.base = ((size - m) + self.b - t_star).astype(np.int32)
        self.e_rot = self._empty_rot(self.choice)
        # rotate e back to the original circle, then make it spot n + 1
        e = ((self.e_rot + t_star - 1) % size + 1).astype(np.int32)
        pf = np.add(prefs, (size - e)[:, None], out=out)
        pf -= (pf > size) * np.int32(size)
        self.pf = pf

    def _empty_rot(self, r):
        if self.m == 0:
            return r + 1
        below = self.cand < (self.base - r)[:, None]
        hit = np.argmax(below, axis=1)
        run = np.where(below[np.arange(self.rows), hit], hit, self.m)
        return r + 1 + (self.m - self.b) + np.minimum(run, self.b)

    def gap(self, i):
        """``k_i`` for every row: the ``i``-th empty spot after ``e`` going round the circle."""
        free = self.n + 1 - self.m
        if not 1 <= i < free:
            raise ValueError(f"k{i} out of range 1..{free - 1}")
        r = (self.choice + i) % free
        return (self._empty_rot(r) - self.e_rot) % (self.n + 1)

    def gaps(self):
        """All unattempted spots, sorted, as a ``(rows, n - m)`` array."""
        cols = [self.gap(i) for i in range(1, self.n + 1 - self.m)]
        return np.stack(cols, axis=1) if cols else np.zeros((self.rows, 0), dtype=np.int32)


def sample_pf_batch(m: int, n: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """``size`` independent uniform draws from ``PF(m, n)`` as an integer array."""
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    rows = max(1, _CELLS // (n + 1))
    out = np.empty((size, m), dtype=np.int32)
    for lo in range(0, size, rows):
        hi = min(lo + rows, size)
        if m:
            _Chunk(m, n, hi - lo, rng, out=out[lo:hi])
    return out


def sample_ipf_square(n: int, rng: np.random.Generator, m: int | None = None) -> IntervalPF:
    """Uniform draw from ``IPF(n, n)``.

    Every ``a`` in ``PF(n, n)`` has exactly ``n!`` admissible ``b``, so drawing ``a``
    uniformly and each ``b_i`` uniformly above the spot car ``i`` takes is uniform.
    """
    if m is not None and m != n:
        raise ValueError("uniform interval parking functions are only supported for m = n")
    a = sample_pf(n, n, rng)
    tau = outcome(a, n)
    b = tuple(int(rng.integers(t, n + 1)) for t in tau)
    return IntervalPF(a, b)


# ---------------------------------------------------------------------------
# Monte Carlo

_FACTOR = re.compile(r"^(pi|tau|k)(\d+)(?:\^(\d+))?$")


@dataclass(frozen=True)
class _Stat:
    name: str
    kind: str  # "mean", "var" or "cov"
    terms: tuple  # mean: factors of the product; var/cov: one or two factors
    shifts: tuple = field(default=())


def _parse_factor(tok, m, n):
    mt = _FACTOR.match(tok.strip())
    if not mt:
        raise ValueError(f"cannot parse factor {tok!r}")
    var, idx, power = mt.group(1), int(mt.group(2)), int(mt.group(3) or 1)
    limit = n - m if var == "k" else m
    if var == "k" and m == n:
        raise ValueError("there are no unattempted spots when m = n")
    if not 1 <= idx <= limit:
        raise ValueError(f"{var}{idx} out of range 1..{limit}")
    return var, idx, power


def parse_statistic(text: str, m: int, n: int) -> _Stat:
    """``pi1``, ``pi1^2*pi2``, ``tau3``, ``k1*k2``, ``var(pi1)``, ``cov(pi1,k1)`` ..."""
    s = text.replace(" ", "")
    mt = re.match(r"^(var|cov)\((.*)\)$", s)
    if mt:
        args = [_parse_factor(t, m, n) for t in mt.group(2).split(",")]
        if (mt.group(1) == "var") != (len(args) == 1) or len(args) > 2:
            raise ValueError(f"bad argument count in {text!r}")
        shifts = tuple((n + 1) / 2 if v != "k" else 0.0 for v, _, _ in args)
        return _Stat(s, mt.group(1), tuple(args), shifts)
    return _Stat(s, "mean", tuple(_parse_factor(t, m, n) for t in s.split("*")))


def _outcome_column(pf, i):
    """Spot taken by car ``i`` (1-based) in each row; only cars ``1..i`` matter."""
    s = pf[:, i - 1].copy()
    if i == 1:
        return s
    taken = np.stack([_outcome_column(pf, j) for j in range(1, i)], axis=1)
    for _ in range(i - 1):
        s += (taken == s[:, None]).any(axis=1)
    return s


def _values(var, idx, chunk, cache):
    key = (var, idx)
    if key not in cache:
        if var == "pi":
            cache[key] = chunk.pf[:, idx - 1].astype(np.float64)
        elif var == "tau":
            cache[key] = _outcome_column(chunk.pf, idx).astype(np.float64)
        else:
            cache[key] = chunk.gap(idx).astype(np.float64)
    return cache[key]


def _chunk_sums(stats, chunk):
    cache = {}
    out = []
    for st in stats:
        if st.kind == "mean":
            v = np.ones(chunk.rows)
            for var, idx, power in st.terms:
                v = v * _values(var, idx, chunk, cache) ** power
            out.append(np.array([v.sum(), (v * v).sum()]))
        else:
            (v1, i1, p1) = st.terms[0]
            x = _values(v1, i1, chunk, cache) ** p1 - st.shifts[0]
            if st.kind == "var":
                y = x
            else:
                (v2, i2, p2) = st.terms[1]
                y = _values(v2, i2, chunk, cache) ** p2 - st.shifts[1]
            out.append(np.array([[(x**a * y**b).sum() for b in range(3)] for a in range(3)]))
    return out


def _split(total, parts):
    base, extra = divmod(total, parts)
    return [base + (1 if t < extra else 0) for t in range(parts)]


def _worker(cfg, stats, count, seed_seq):
    rng = np.random.default_rng(seed_seq)
    rows = max(1, _CELLS // (cfg.n + 1))
    sums = None
    done = 0
    while done < count:
        b = min(rows, count - done)
        part = _chunk_sums(stats, _Chunk(cfg.m, cfg.n, b, rng))
        sums = part if sums is None else [s + p for s, p in zip(sums, part)]
        done += b
    return sums


def _central(raw, mu, nu, a, b):
    """``E[(X - mu)^a (Y - nu)^b]`` from raw moments ``raw[r][t] = E[X^r Y^t]``."""
    return sum(
        math.comb(a, r) * math.comb(b, t) * (-mu) ** (a - r) * (-nu) ** (b - t) * raw[r][t]
        for r in range(a + 1)
        for t in range(b + 1)
    )


def mc_report(cfg: SampleConfig, statistics: Sequence[str]) -> list[McEstimate]:
    """Monte Carlo estimates with standard errors.

    Each of ``cfg.threads`` workers draws its share of the ``cfg.count`` samples
    from its own substream spawned from ``cfg.seed``; sums are merged in worker
    order, so results depend only on ``(seed, threads)``.  Variance and covariance
    errors use the delta method.
    """
    stats = [parse_statistic(s, cfg.m, cfg.n) for s in statistics]
    if cfg.m == 0:
        raise ValueError("need at least one car")
    seeds = np.random.SeedSequence(cfg.seed).spawn(cfg.threads)
    counts = _split(cfg.count, cfg.threads)
    jobs = [(cfg, stats, c, s) for c, s in zip(counts, seeds) if c > 0]
    if cfg.threads == 1:
        results = [_worker(*j) for j in jobs]
    else:
        with ThreadPoolExecutor(cfg.threads) as pool:
            results = list(pool.map(lambda j: _worker(*j), jobs))
    merged = results[0]
    for r in results[1:]:
        merged = [a + b for a, b in zip(merged, r)]

    N = cfg.count
    out = []
    for st, s in zip(stats, merged):
        if st.kind == "mean":
            mean = s[0] / N
            var = max(s[1] / N - mean * mean, 0.0) * N / max(N - 1, 1)
            out.append(McEstimate(st.name, mean, math.sqrt(var / N), N))
            continue
        raw = s / N
        mu, nu = raw[1][0], raw[0][1]
        cov = _central(raw, mu, nu, 1, 1)
        spread = max(_central(raw, mu, nu, 2, 2) - cov * cov, 0.0)
        se = math.sqrt(spread / N)
        note = ""
        if se > abs(cov):
            note = "standard error exceeds the estimate; use the exact moments instead"
        out.append(McEstimate(st.name, cov, se, N, note))
    return out
