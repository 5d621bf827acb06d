"""
Counting parking functions
==========================

Cars arrive one at a time, each with a preferred spot on a one-way street of
``n`` spots.  A car takes the first free spot at or after its preference.  A
preference list is a parking function when every car finds a spot.
"""

# %%
from parking import count_pf, enumerate_pf, park

print(park((3, 1, 7, 4, 1, 2, 5, 3, 1), 9))
print(park((2, 2, 2), 3))  # the third car runs off the end

# %%
# The number of parking functions has a closed form; the small cases are easy
# to list by hand.
print(list(enumerate_pf(2, 2)))
for n in range(1, 7):
    print(n, [count_pf(m, n) for m in range(n + 1)])

# %%
# Fixing the first few preferences: how many ways can the remaining cars park?
from parking import count_pf_contiguous, count_pf_prefix

print(count_pf_prefix((3, 4), 4, 5))
print([count_pf_contiguous(k, 2, 4, 6) for k in range(1, 6)])

# %%
# Once the prefix is fixed, the rest of the cars only need their sorted
# preferences to stay below a threshold vector u.  Those are counted by a
# polytope volume.
from parking import completion_thresholds, count_u_parking

u = completion_thresholds((3, 4), 4, 5)
print(u, count_u_parking(u))
