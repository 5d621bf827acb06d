"""JSON and Graphviz encodings for trees and interval parking functions.

Tree JSON::

    {"vertices": 10, "parent": [null, 5, 0, ...], "edge_labels": [null, 4, 5, ...]}

``parent[v]`` and ``edge_labels[v]`` describe the edge from ``v`` towards the
root 0; the root carries ``null`` in both.  Interval parking functions are
``{"a": [...], "b": [...]}``.
"""

from __future__ import annotations

import json
from typing import Any

from .ipf import EdgeLabeledTree, IntervalPF

__all__ = [
    "tree_to_json",
    "tree_from_json",
    "tree_to_dot",
    "ipf_to_json",
    "ipf_from_json",
    "dumps",
]


def tree_to_json(t: EdgeLabeledTree) -> dict[str, Any]:
    return {
        "vertices": t.n + 1,
        "parent": [None] + list(t.parent[1:]),
        "edge_labels": [None] + list(t.label[1:]),
    }


def tree_from_json(doc: dict[str, Any]) -> EdgeLabeledTree:
    try:
        size = int(doc["vertices"])
        parent = doc["parent"]
        labels = doc["edge_labels"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"tree JSON needs vertices, parent and edge_labels: {exc}") from None
    if len(parent) != size or len(labels) != size:
        raise ValueError("parent and edge_labels must have one entry per vertex")
    if parent[0] is not None or labels[0] is not None:
        raise ValueError("vertex 0 is the root and must have null parent and label")
    t = EdgeLabeledTree((-1,) + tuple(int(p) for p in parent[1:]), (0,) + tuple(int(x) for x in labels[1:]))
    t.validate()
    return t


def tree_to_dot(t: EdgeLabeledTree, name: str = "tree") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(t.n + 1)]
    lines += [f'  {p} -- {v} [label="{lab}"];' for p, v, lab in sorted(t.edges())]
    lines.append("}")
    return "\n".join(lines) + "\n"


def ipf_to_json(c: IntervalPF) -> dict[str, Any]:
    return {"a": list(c.a), "b": list(c.b)}


def ipf_from_json(doc: dict[str, Any]) -> IntervalPF:
    try:
        a, b = doc["a"], doc["b"]
    except (KeyError, TypeError):
        raise ValueError('interval parking function JSON needs "a" and "b"') from None
    if len(a) != len(b):
        raise ValueError("a and b must have the same length")
    return IntervalPF(tuple(int(x) for x in a), tuple(int(x) for x in b))


def dumps(doc: Any) -> str:
    """Stable JSON text: sorted keys, compact separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"
