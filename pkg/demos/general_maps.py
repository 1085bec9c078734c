"""Sums of phi-images of Cantor points for a few increasing maps.

Run: python3 demos/general_maps.py
"""

from fractions import Fraction as F

from cantor_arith.c1_maps import c1_product_params, c1_sum_counts, c1_sum_interval, decompose_c1_sum, sum_bounds
from cantor_arith.oracle import verify_decomposition
from cantor_arith.phi import parse_phi

alpha = F(1, 3)
for text in ("power:3", "affine:3,1", "poly:0,1,1"):
    phi = parse_phi(text)
    g2, g1 = sum_bounds(alpha, phi)
    c = c1_sum_counts(alpha, phi)
    iv = c1_sum_interval(alpha, phi)
    d = decompose_c1_sum(alpha, phi, iv.midpoint + iv.length / 7, g1 * F(1, 3) ** 25)
    print(f"{text:>12}: phi' in [{g2}, {g1}], r = {c.r}, interval {iv}, verified {verify_decomposition(d).ok}")

c = c1_product_params(alpha, parse_phi("power:2"))
print(f"\nproducts of squares at alpha = {alpha} need the deeper anchor k = {c.k_alpha}, t = {c.t_alpha}")
