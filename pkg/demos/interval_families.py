"""When do the shifted families of sum intervals fuse into one interval?

Run: python3 demos/interval_families.py
"""

from fractions import Fraction as F

from cantor_arith.intervals import thm3_family_Ilower, thm3_family_Iupper
from cantor_arith.parameters import alpha1_of_m, sign_pattern

for m in (1, 2, 5):
    enc = alpha1_of_m(m)
    print(f"m = {m}: the adjacency expression changes sign at alpha_1 = {enc.decimal(12)}; lifted families fuse below it")

print("\nsign of the adjacency expression, m = 1, coarse grid:")
for a, e, sign in sign_pattern(1, 9):
    print(f"  alpha = {a}: {'+' if sign > 0 else '-' if sign < 0 else '0'}")

for alpha in (F(1, 3), F(1, 2)):
    up, low = thm3_family_Iupper(alpha, 1), thm3_family_Ilower(alpha, 1)
    print(f"\nalpha = {alpha}")
    print(f"  lifted:  {len(up.members)} members -> {up.classification.value}, length {up.total_length}")
    print(f"  lowered: {len(low.members)} members -> {low.classification.value}, length {low.total_length}")
    for part in low.merged:
        print(f"    {part}")
