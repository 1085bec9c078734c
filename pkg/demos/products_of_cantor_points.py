"""Products of Cantor points anchored near 1.

Run: python3 demos/products_of_cantor_points.py
"""

from fractions import Fraction as F

from cantor_arith.cantor_model import params
from cantor_arith.intervals import gamma_split_intervals, thm5_interval, thm6_intervals
from cantor_arith.oracle import verify_decomposition
from cantor_arith.parameters import product_counts, solve_a0
from cantor_arith.product_solver import decompose_mixed_product, decompose_product

a0 = solve_a0()
print(f"a0 lies in [{float(a0.lo):.13f}, {float(a0.hi):.13f}]")

for alpha in (F(1, 3), F(1, 2)):
    c = product_counts(alpha)
    iv = thm5_interval(alpha)
    print(f"\nalpha = {alpha}: k = {c.k_alpha}, t = {c.t_alpha} (s = {c.s_alpha}, p = {c.p_alpha}), theta = {c.theta}")
    print(f"  products of {2 * c.t_alpha} points cover [{iv.lo}, {iv.hi}]")
    x = iv.midpoint
    d = decompose_product(alpha, x, params(alpha).eta_minus ** 30)
    print(f"  x = {x}: {len(d.trace)} trace steps, residual {float(d.residual):.3e}, verified {verify_decomposition(d).ok}")

alphas = [F(1, 2), F(1, 2), F(1, 3), F(1, 3), F(1, 4)]
betas = [F(1, 2), F(1, 3), F(1, 4), F(1, 4)]
first, second = thm6_intervals(alphas, betas, check_splits=False)
print(f"\nmixed lists: interval with betas moving {first}, with alphas moving {second}")
d = decompose_mixed_product(alphas, betas, second.midpoint, F(1, 10**20), interval=2, check_splits=False)
print(f"  midpoint of the second: residual {float(d.residual):.3e}, verified {verify_decomposition(d).ok}")

g = gamma_split_intervals([F(1, 5)] * 5, [F(1, 5)] * 5)
print(f"\nsplit construction for 1/5 x 5 each side: feasible {g.feasible}, reasons {g.reasons}")
