"""Interval parking functions and the bijection with edge-labelled spanning trees.

An interval parking function ``(a, b)`` lets car ``i`` park only in ``[a_i, b_i]``.
For ``m = n`` the pairs are in bijection with spanning trees of ``K_{n+1}`` rooted
at 0 whose ``n`` edges carry distinct labels ``1..n``:

* the tree shape and vertex labels encode ``a`` through its specification
  (histogram) and order permutation, read off a breadth-first traversal;
* the edge labels, read in the same traversal order, form a permutation whose
  normal form fixes the slack ``b - outcome(a)``, coordinate by coordinate.
"""

from __future__ import annotations

import heapq
import itertools
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .core import (
    FailureReport,
    NotParkingFunctionError,
    conjugate,
    is_parking_function,
    leq_c,
    outcome,
    park,
)
from .coxeter import inverse, normal_form, perm_from_normal_form
from .enumeration import compositions, multinomial, rpow, as_int

__all__ = [
    "IntervalPF",
    "EdgeLabeledTree",
    "SpecOrder",
    "ipf_outcome",
    "is_ipf",
    "conjugate_props_check",
    "count_ipf",
    "order_permutation",
    "specification",
    "spec_order",
    "pf_from_spec_order",
    "bfs_order",
    "tree_to_ipf",
    "ipf_to_tree",
    "tree_to_bipartite",
    "bipartite_to_tree",
    "spanning_trees",
    "edge_labeled_trees",
]


@dataclass(frozen=True)
class IntervalPF:
    a: tuple[int, ...]
    b: tuple[int, ...]


@dataclass(frozen=True)
class SpecOrder:
    r: tuple[int, ...]  # r[k-1] = number of cars preferring spot k
    sigma: tuple[int, ...]  # order permutation: sigma[i-1] = rank of car i

    def validate(self) -> None:
        n = len(self.r)
        if len(self.sigma) != n or sorted(self.sigma) != list(range(1, n + 1)):
            raise ValueError("sigma must be a permutation of 1..n")
        if any(x < 0 for x in self.r) or sum(self.r) != n:
            raise ValueError("specification must be non-negative with total n")
        acc = 0
        for j, rj in enumerate(self.r, start=1):
            acc += rj
            if acc < j:
                raise ValueError(f"specification is unbalanced at {j}")
        # ranks of each block of equal preferences must appear left to right
        pos = inverse(self.sigma)
        acc = 0
        for rk in self.r:
            block = pos[acc:acc + rk]
            if any(p >= q for p, q in zip(block, block[1:])):
                raise ValueError("sigma is not compatible with the specification")
            acc += rk


@dataclass(frozen=True)
class EdgeLabeledTree:
    """Spanning tree on ``{0, ..., n}`` rooted at 0.

    ``parent[v]`` is the neighbour of ``v`` towards the root and ``label[v]`` the
    label of that edge; both are ``-1`` / ``0`` at the root.
    """

    parent: tuple[int, ...]
    label: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.parent) - 1

    def validate(self) -> None:
        n = self.n
        if len(self.label) != n + 1 or self.parent[0] != -1:
            raise ValueError("root must be vertex 0 with no parent")
        if sorted(self.label[1:]) != list(range(1, n + 1)):
            raise ValueError("edge labels must be a permutation of 1..n")
        for v in range(1, n + 1):
            seen = set()
            w = v
            while w != 0:
                if w in seen or not 0 <= self.parent[w] <= n:
                    raise ValueError(f"vertex {v} does not reach the root")
                seen.add(w)
                w = self.parent[w]

    def edges(self) -> list[tuple[int, int, int]]:
        """``(parent, child, label)`` triples, by child."""
        return [(self.parent[v], v, self.label[v]) for v in range(1, self.n + 1)]

    @classmethod
    def from_edges(cls, n: int, edges: Sequence[tuple[int, int, int]]) -> "EdgeLabeledTree":
        """Root an undirected labelled edge list ``(u, v, label)`` at vertex 0."""
        if len(edges) != n:
            raise ValueError(f"a spanning tree on {n + 1} vertices has {n} edges")
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(n + 1)}
        for u, v, lab in edges:
            if not (0 <= u <= n and 0 <= v <= n) or u == v:
                raise ValueError(f"bad edge {(u, v)}")
            adj[u].append((v, lab))
            adj[v].append((u, lab))
        parent = [-2] * (n + 1)
        label = [0] * (n + 1)
        parent[0] = -1
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v, lab in adj[u]:
                if parent[v] == -2:
                    parent[v], label[v] = u, lab
                    queue.append(v)
        if -2 in parent:
            raise ValueError("edges do not span the vertex set")
        t = cls(tuple(parent), tuple(label))
        t.validate()
        return t


# ---------------------------------------------------------------------------
# interval parking


def ipf_outcome(a: Sequence[int], b: Sequence[int], n: int) -> tuple[int, ...] | None:
    """Spots taken when car ``i`` only accepts ``[a_i, b_i]``; ``None`` on failure."""
    if len(a) != len(b):
        raise ValueError("length mismatch")
    nxt = list(range(n + 2))
    slots = []
    for ai, bi in zip(a, b):
        if not 1 <= ai <= n or not 1 <= bi <= n:
            raise ValueError(f"interval [{ai}, {bi}] not inside [1, {n}]")
        s = ai
        while nxt[s] != s:
            nxt[s] = nxt[nxt[s]]
            s = nxt[s]
        if s > bi:
            return None
        slots.append(s)
        nxt[s] = s + 1
    return tuple(slots)


def _is_ipf_characterised(a, b, n):
    res = park(a, n)
    return not isinstance(res, FailureReport) and leq_c(res.slots, b)


def is_ipf(a: Sequence[int], b: Sequence[int], n: int) -> bool:
    """Interval simulation, cross-checked against "``a`` parks and ``outcome(a) <= b``"."""
    if len(a) > n:
        raise ValueError(f"more cars than spots ({len(a)} > {n})")
    sim = ipf_outcome(a, b, n) is not None
    char = _is_ipf_characterised(a, b, n)
    if sim != char:
        raise AssertionError(f"interval simulation disagrees with characterisation on {a}, {b}")
    return sim


def conjugate_props_check(a: Sequence[int], b: Sequence[int], n: int) -> bool:
    """``b*`` parks, ``a <= outcome(a, b) <= b`` and ``outcome(b*)* <= b``."""
    tau = ipf_outcome(a, b, n)
    if tau is None:
        raise NotParkingFunctionError("not an interval parking function")
    bstar = conjugate(b, n)
    if not is_parking_function(bstar, n):
        return False
    return leq_c(a, tau) and leq_c(tau, b) and leq_c(conjugate(outcome(bstar, n), n), b)


def count_ipf(m: int, n: int) -> int:
    """``|IPF(m, n)|`` summed over the segment lengths between unattempted spots."""
    if m > n:
        raise ValueError(f"more cars than spots ({m} > {n})")
    total: int | Fraction = 0
    fact = math.factorial(n)
    for s in compositions(m, n - m + 1):
        term: int | Fraction = multinomial(m, s)
        for si in s:
            term *= rpow(si + 1, si - 1)
        # each gap k_i = i + s_1 + ... + s_i removes the factor n + 1 - k_i
        denom = 1
        acc = 0
        for i in range(1, n - m + 1):
            acc += s[i - 1]
            denom *= n - i + 1 - acc
        total += term * Fraction(fact, denom)
    return as_int(total)


# ---------------------------------------------------------------------------
# specification and order permutation


def specification(a: Sequence[int], n: int | None = None) -> tuple[int, ...]:
    n = len(a) if n is None else n
    r = [0] * n
    for v in a:
        if not 1 <= v <= n:
            raise ValueError(f"entry {v} outside [1, {n}]")
        r[v - 1] += 1
    return tuple(r)


def order_permutation(a: Sequence[int]) -> tuple[int, ...]:
    """Stable rank of each entry: ``#{j: a_j < a_i or (a_j == a_i and j <= i)}``."""
    ranked = sorted(range(len(a)), key=lambda i: (a[i], i))
    out = [0] * len(a)
    for rank, i in enumerate(ranked, start=1):
        out[i] = rank
    return tuple(out)


def spec_order(a: Sequence[int]) -> SpecOrder:
    return SpecOrder(specification(a), order_permutation(a))


def pf_from_spec_order(so: SpecOrder) -> tuple[int, ...]:
    """Replace rank ``i`` by the ``i``-th smallest entry of ``1^{r_1} 2^{r_2} ...``."""
    so.validate()
    values = [k for k, rk in enumerate(so.r, start=1) for _ in range(rk)]
    return tuple(values[s - 1] for s in so.sigma)


# ---------------------------------------------------------------------------
# trees


def _children(t: EdgeLabeledTree) -> list[list[int]]:
    kids: list[list[int]] = [[] for _ in range(t.n + 1)]
    for v in range(1, t.n + 1):
        kids[t.parent[v]].append(v)
    return kids  # increasing within each list


def bfs_order(t: EdgeLabeledTree) -> list[int]:
    """Vertices level by level; a level lists children of earlier-read vertices first,
    siblings in increasing order."""
    kids = _children(t)
    order = [0]
    for v in order:
        order.extend(kids[v])
    return order


def tree_to_ipf(t: EdgeLabeledTree) -> IntervalPF:
    t.validate()
    n = t.n
    order = bfs_order(t)
    kids = _children(t)
    word = tuple(order[1:])  # BFS word; rank r belongs to vertex word[r - 1]
    r = tuple(len(kids[v]) for v in order[:-1])
    a = pf_from_spec_order(SpecOrder(r, inverse(word)))
    x = tuple(t.label[v] for v in word)
    lam = normal_form(x)
    tau = outcome(a, n)
    # the slack at a car parked in spot tau lives in a chain of n + 1 - tau elements
    b = tuple(ti + (lam[n - ti - 1] if ti < n else 0) for ti in tau)
    return IntervalPF(a, b)


def ipf_to_tree(c: IntervalPF | tuple[Sequence[int], Sequence[int]]) -> EdgeLabeledTree:
    a, b = (c.a, c.b) if isinstance(c, IntervalPF) else c
    a, b = tuple(a), tuple(b)
    n = len(a)
    if len(b) != n or not is_ipf(a, b, n):
        raise NotParkingFunctionError("not an interval parking function with m = n")
    so = spec_order(a)
    word = inverse(so.sigma)
    tau = outcome(a, n)
    lam = [0] * (n - 1)
    for ti, bi in zip(tau, b):
        if ti < n:
            lam[n - ti - 1] = bi - ti
    x = perm_from_normal_form(lam)
    parent = [-1] * (n + 1)
    label = [0] * (n + 1)
    queue = [0]
    pos = 0
    for k, rk in enumerate(so.r):
        v = queue[k]
        for w in word[pos:pos + rk]:
            parent[w] = v
            label[w] = x[pos]
            queue.append(w)
            pos += 1
    return EdgeLabeledTree(tuple(parent), tuple(label))


def tree_to_bipartite(t: EdgeLabeledTree) -> list[tuple[int, int]]:
    """Edges ``(label, vertex)`` of the spanning tree of ``K_{n, n+1}``."""
    out = []
    for p, v, lab in t.edges():
        out.append((lab, min(p, v)))
        out.append((lab, max(p, v)))
    return sorted(out)


def bipartite_to_tree(edges: Sequence[tuple[int, int]], n: int) -> EdgeLabeledTree:
    ends: dict[int, list[int]] = {}
    for lab, v in edges:
        ends.setdefault(lab, []).append(v)
    if sorted(ends) != list(range(1, n + 1)) or any(len(e) != 2 for e in ends.values()):
        raise ValueError("every label vertex needs exactly two neighbours")
    return EdgeLabeledTree.from_edges(n, [(u, v, lab) for lab, (u, v) in ends.items()])


def _prufer_decode(seq: Sequence[int], size: int) -> list[tuple[int, int]]:
    degree = [1] * size
    for v in seq:
        degree[v] += 1
    leaves = [v for v in range(size) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def spanning_trees(n: int) -> Iterator[tuple[int, ...]]:
    """Parent arrays of all ``(n + 1)^(n - 1)`` spanning trees of ``K_{n+1}`` rooted at 0."""
    if n == 0:
        yield (-1,)
        return
    for seq in itertools.product(range(n + 1), repeat=n - 1):
        t = EdgeLabeledTree.from_edges(n, [(u, v, i) for i, (u, v) in enumerate(_prufer_decode(seq, n + 1), 1)])
        yield t.parent


def edge_labeled_trees(n: int) -> Iterator[EdgeLabeledTree]:
    """All ``n! (n + 1)^(n - 1)`` edge-labelled spanning trees of ``K_{n+1}``."""
    for parent in spanning_trees(n):
        for labels in itertools.permutations(range(1, n + 1)):
            yield EdgeLabeledTree(parent, (0,) + labels)
