"""
Abel sums and permutation normal forms
======================================

Two supporting tools: exact Abel multinomial sums, which drive the ``m = n``
expansions, and a normal form for permutations as products of cycles through
chains of adjacent transpositions.
"""

# %%
from parking.abel import abel_last_zero, abel_multinomial, check_peel_recurrence, check_symmetry

x, p, n = (1, 2, 3), (-1, 0, 1), 4
print(abel_multinomial(x, p, n))
print(check_symmetry(x, p, n, 0, 2))
print(check_peel_recurrence(x, p, n))
print(abel_multinomial((1, 1), (-1, 0), 2), abel_last_zero((1, 1), 2))

# %%
from parking.coxeter import inversions, normal_form, perm_from_normal_form, perm_from_word, reduced_word

w = (3, 1, 4, 2)
lam = normal_form(w)
print(lam, sum(lam), inversions(w))
word = reduced_word(lam)
print(word, perm_from_word(word, len(w)))
assert perm_from_normal_form(lam) == w
