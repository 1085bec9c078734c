"""Exact arithmetic on sums and products of central Cantor sets.

The package computes certified intervals contained in sums and products of
central Cantor sets C_alpha, decomposes points of those intervals into
Cantor points with exact rational residuals, and checks both claims with a
finite-level brute-force oracle.
"""

from .cantor_model import (
    CantorParams,
    EndpointAddress,
    Left,
    Right,
    Side,
    endpoint_value,
    gap,
    locate,
    params,
    shift,
)
from .c1_maps import (
    c1_product_interval,
    c1_product_params,
    c1_sum_counts,
    c1_sum_interval,
    decompose_c1_sum,
)
from .errors import (
    BudgetViolation,
    CantorArithError,
    DomainError,
    EvalNotExact,
    Infeasible,
    NoSolution,
    OutOfInterval,
    ResourceLimit,
)
from .intervals import (
    IntervalFamily,
    RatInterval,
    gamma_split_intervals,
    lemma2_interval,
    thm3_family_Ilower,
    thm3_family_Iupper,
    thm4_interval,
    thm5_interval,
    thm6_intervals,
)
from .oracle import coverage_check, level_set, verify_decomposition
from .parameters import (
    alpha1_of_m,
    chi,
    mixed_product_split,
    mixed_sum_split,
    product_counts,
    shift_exponent,
    solve_a0,
    solve_a1,
    sum_counts,
)
from .phi import PhiSpec, phi_affine, phi_poly, phi_power
from .product_solver import decompose_mixed_product, decompose_product
from .sum_solver import Decomposition, decompose_mixed_sum, decompose_sum, decompose_sum_variant

__version__ = "0.1.0"
