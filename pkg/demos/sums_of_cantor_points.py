"""Writing a number as a sum of points of a middle-third-style Cantor set.

Run: python3 demos/sums_of_cantor_points.py
"""

from fractions import Fraction as F

from cantor_arith.cantor_model import params
from cantor_arith.intervals import lemma2_interval
from cantor_arith.oracle import coverage_check, verify_decomposition
from cantor_arith.parameters import sum_counts
from cantor_arith.sum_solver import decompose_sum

alpha, m = F(1, 2), 2
counts = sum_counts(alpha, m)
iv = lemma2_interval(alpha, m)
print(f"alpha = {alpha}, m = {m}: s = {counts.s}, k = {counts.k}, so r = {counts.r} squares")
print(f"every x in [{iv.lo}, {iv.hi}] is such a sum")

x = iv.lo + iv.length / 3
tol = m * params(alpha).eta_minus ** 30
d = decompose_sum(alpha, m, x, tol)
print(f"\nx = {x}")
for p in d.points:
    print(f"  {p.role} {str(p.address):>40}  value {float(p.value):.12f}")
print(f"residual {float(d.residual):.3e} <= certified {float(d.certified_bound):.3e}")

print("\nresidual after each round:")
for step in d.trace[:12]:
    print(f"  round {step.round:>2} ({step.kind:>5})  |delta| = {float(abs(step.delta_after)):.3e}")

rep = verify_decomposition(d)
print("\nindependent re-check:", {k: ok for k, (ok, _) in rep.checks.items()})

print("\ncoverage of the whole interval by finite construction levels:")
for l in range(1, 6):
    print(f"  level {l}: covered = {coverage_check(iv, alpha, l, terms=counts.r, m=m).covered}")
