"""
Exact moments against their large-n expansions
==============================================

Moments of coordinates and of unattempted spots are finite sums of exact
counts, so they come out as rationals.  With ``m = c n`` they approach simple
expansions; with ``m = n`` a square-root term appears.
"""

# %%
from fractions import Fraction

from parking import AsymptoticContext, asym_refined, exact_moment_coord, exact_stat

print(exact_moment_coord(1, 2, 2))  # 4/3
for n in (50, 100, 200, 400):
    ex = float(exact_moment_coord(1, n // 2, n))
    ap = asym_refined("E_pi1", AsymptoticContext(n, Fraction(1, 2)))
    print(f"n={n:4d}  exact {ex:.6f}  expansion {ap:.6f}  residual {abs(ex - ap):.2e}")

# %%
# Covariances are tiny next to the spread of each coordinate; exact sums are the
# only practical way to see them.
print("Cov(pi1,pi2):", float(exact_stat("Cov_pi1pi2", 100, 200)))
print("E(k1), Var(k1):", float(exact_stat("E_ki", 100, 200)), float(exact_stat("Var_ki", 100, 200)))

# %%
from parking import asym_special_mn

for n in (25, 50, 100):
    ex = float(exact_moment_coord(1, n, n))
    print(n, ex, ex - asym_special_mn("E_pi1", n))
