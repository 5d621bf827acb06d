"""
Completing a suffix
===================

Given the preferences of the last cars, which choices for the first ``l`` cars
make the whole list a parking function?  The answer is always a u-parking set,
and the suffix splits into independent smaller parking functions.
"""

# %%
from parking import decompose, interleave, is_multishuffle, max_completion

u = max_completion((2, 6), 2, 4, 6)
print("threshold for two missing cars:", u)

# %%
suffix = (2, 7, 2, 9, 10, 1)
u = max_completion(suffix, 2, 8, 10)
d = decompose(suffix, u, 8, 10)
for comp, frame, off in zip(d.components, d.frames, d.offsets):
    print(f"cars/spots {frame}  offset {off:2d}  word {comp}")
assert interleave(d) == suffix

# %%
# The same suffix viewed as a shuffle of three small parking functions.
print(is_multishuffle(suffix, (3, 5, 1, 2)))
print(is_multishuffle((2, 6, 2, 9, 10, 1), (3, 5, 1, 2)))
