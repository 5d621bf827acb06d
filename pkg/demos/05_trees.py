"""
Interval parking functions and edge-labelled trees
==================================================

Give each car an interval ``[a_i, b_i]`` instead of a single preference.  When
all ``n`` cars park on ``n`` spots, the pairs ``(a, b)`` correspond one to one
with spanning trees of the complete graph on ``0..n`` whose edges carry the
labels ``1..n``.
"""

# %%
from parking import IntervalPF, count_ipf, ipf_to_tree, tree_to_bipartite, tree_to_ipf
from parking.serialize import dumps, tree_to_dot, tree_to_json

c = IntervalPF((3, 1, 7, 4, 1, 2, 5, 3, 1), (3, 7, 9, 8, 4, 9, 8, 8, 9))
t = ipf_to_tree(c)
print(sorted(t.edges()))
assert tree_to_ipf(t) == c

# %%
print(dumps(tree_to_json(t)), end="")
print(tree_to_dot(t))

# %%
# Each edge label is joined to both endpoints of its edge.
print(tree_to_bipartite(t))

# %%
import math

for n in range(1, 6):
    print(n, count_ipf(n, n), math.factorial(n) * (n + 1) ** (n - 1))
