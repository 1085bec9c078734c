"""Sums and products of phi-images of Cantor points.

phi is an increasing map with exact rational evaluation (see
:mod:`cantor_arith.phi`).  Derivative bounds g_lower <= phi' <= g_upper on
the working range replace the power-map constants in the term counts, the
certified intervals and the solver's bound schedule.
"""

from __future__ import annotations

from fractions import Fraction

from ._dynamics import Decomposition
from .cantor_model import as_ratio, params
from .errors import DomainError, NoSolution, OutOfInterval
from .intervals import RatInterval
from .parameters import ProductCounts, SumCounts, _ceil, beta_alpha, product_k, scan_t
from .phi import PhiSpec, parse_phi, phi_affine, phi_poly, phi_power

__all__ = [
    "PhiSpec",
    "parse_phi",
    "phi_affine",
    "phi_poly",
    "phi_power",
    "sum_bounds",
    "c1_sum_counts",
    "c1_sum_interval",
    "c1_product_params",
    "c1_product_interval",
    "decompose_c1_sum",
]


def sum_bounds(alpha, phi: PhiSpec) -> tuple[Fraction, Fraction]:
    """(g2, g1): bounds of phi' on [eta_plus, 1]."""
    return phi.bounds(params(alpha).eta_plus, 1)


def c1_sum_counts(alpha, phi: PhiSpec) -> SumCounts:
    p = params(alpha)
    g2, g1 = sum_bounds(p.alpha, phi)
    s = _ceil(g1 / g2)
    k = 0
    if p.alpha > Fraction(1, 3):
        k = _ceil(((3 * p.alpha - 1) / 2) / ((g2 / g1) * ((1 - p.alpha**2) / 4)))
    return SumCounts(s, k)


def c1_sum_interval(alpha, phi: PhiSpec) -> RatInterval:
    p = params(alpha)
    half = c1_sum_counts(p.alpha, phi).half
    top, bottom = phi(Fraction(1)), phi(p.eta_plus)
    return RatInterval((half - 1) * top + (half + 1) * bottom, (half + 1) * top + (half - 1) * bottom)


def c1_product_params(alpha, phi: PhiSpec, k_max: int = 64) -> ProductCounts:
    """Counts for products of phi-images anchored in the top segment 1^k.

    The t scan uses phi(theta) as the base and g3/g4, the ratio of
    derivative bounds on [theta, 1], as the extra factor.  k starts at the
    anchor depth of plain products and is increased until a self-consistent
    t exists, since a steep phi can rule out every t at the shallower anchor.
    """
    p = params(alpha)
    last = None
    for k in range(product_k(p.alpha), k_max + 1):
        th = 1 - p.eta_minus_pow(k)
        base = phi(th)
        if base <= 0:
            raise DomainError(f"{phi.label} must be positive on [{th}, 1]")
        g4, g3 = phi.bounds(th, 1)
        try:
            t, s, pp = scan_t(p.alpha, base, ratio=g3 / g4)
        except NoSolution as exc:
            last = exc
            continue
        return ProductCounts(
            alpha=p.alpha, k_alpha=k, t_alpha=t, s_alpha=s, p_alpha=pp, theta=base,
            beta_alpha=None if p.alpha <= Fraction(1, 3) else beta_alpha(p.alpha),
        )
    raise NoSolution(f"no anchor depth k <= {k_max} admits a solution for {phi.label}") from last


def c1_product_interval(alpha, phi: PhiSpec) -> RatInterval:
    counts = c1_product_params(alpha, phi)
    base, t = counts.theta, counts.t_alpha
    return RatInterval(base ** (t + 1), base ** (t - 1))


def decompose_c1_sum(alpha, phi: PhiSpec, x, tolerance, depth_budget: int = 200) -> Decomposition:
    """Decompose x in c1_sum_interval as a sum of phi-images of r points.

    The bound schedule is g1 * eta_minus**l.
    """
    from .sum_solver import _solve

    x = as_ratio(x)
    interval = c1_sum_interval(alpha, phi)
    if x not in interval:
        raise OutOfInterval(f"x = {x} is outside {interval}")
    return _solve(alpha, phi, c1_sum_counts(alpha, phi), x, tolerance, depth_budget)
