"""Decompose x as a sum of m-th powers (or phi-images) of Cantor points.

Half of the points (the a-points) start at eta_plus and half (the b-points)
at 1, so the initial sum sits at the centre of the certified interval.
The shared dynamics then move a-points up and b-points down until the
residual is below the requested tolerance.
"""

from __future__ import annotations

import enum
from fractions import Fraction

from ._dynamics import Decomposition, DecompPoint, TraceStep, run
from .cantor_model import Left, Right, as_ratio, params
from .errors import DomainError, OutOfInterval
from .intervals import RatInterval, lemma2_interval, thm3_family_Ilower, thm3_family_Iupper, thm4_interval
from .parameters import SumCounts, _check_descending, sum_counts
from .phi import PhiSpec, phi_power

__all__ = [
    "Decomposition",
    "DecompPoint",
    "TraceStep",
    "Family",
    "decompose_sum",
    "decompose_sum_variant",
    "decompose_mixed_sum",
]

DEFAULT_DEPTH = 200


class Family(enum.Enum):
    UPPER = "upper"
    LOWER = "lower"


def _check_x(x, interval: RatInterval) -> Fraction:
    x = as_ratio(x)
    if x not in interval:
        raise OutOfInterval(f"x = {x} is outside {interval}")
    return x


def _solve(alpha, phi: PhiSpec, counts: SumCounts, x, tolerance, depth_budget,
           a_words=None, b_words=None, init_scale=1) -> Decomposition:
    p = params(alpha)
    _, g1 = phi.bounds(p.eta_plus, 1)
    half = counts.half
    a_words = a_words or ["1"] * half
    b_words = b_words or ["1"] * half
    specs = [("a", p.alpha, Left(w)) for w in a_words] + [("b", p.alpha, Right(w)) for w in b_words]
    return run(
        "sum", x, specs,
        phi=phi,
        ref_alpha=p.alpha,
        bound_constant=g1,
        init_scale=init_scale,
        tolerance=as_ratio(tolerance),
        depth_budget=depth_budget,
        caps=(counts.s, counts.k),
    )


def decompose_sum(alpha, m: int, x, tolerance, depth_budget: int = DEFAULT_DEPTH) -> Decomposition:
    """Write x in the certified interval as a sum of r m-th powers of points of C_alpha."""
    x = _check_x(x, lemma2_interval(alpha, m))
    return _solve(alpha, phi_power(m), sum_counts(alpha, m), x, tolerance, depth_budget)


def decompose_sum_variant(alpha, m: int, t: int, family, x, tolerance,
                          depth_budget: int = DEFAULT_DEPTH) -> Decomposition:
    """Decompose x in the t-th member of the upper or lower moved family.

    Upper: the first t a-points start at Left("11").  Lower: the first t
    b-points start at Right("10").  Both start at scale 2.
    """
    family = Family(family) if not isinstance(family, Family) else family
    counts = sum_counts(alpha, m)
    if not 1 <= t <= counts.half:
        raise DomainError(f"t must lie in 1..{counts.half}, got {t}")
    half = counts.half
    if family is Family.UPPER:
        interval = thm3_family_Iupper(alpha, m).member(t)
        a_words = ["11"] * t + ["1"] * (half - t)
        b_words = None
    else:
        interval = thm3_family_Ilower(alpha, m).member(t)
        a_words = None
        b_words = ["10"] * t + ["1"] * (half - t)
    x = _check_x(x, interval)
    return _solve(alpha, phi_power(m), counts, x, tolerance, depth_budget, a_words, b_words, init_scale=2)


def decompose_mixed_sum(alphas, betas, m: int, x, tolerance, depth_budget: int = DEFAULT_DEPTH,
                        check_splits: bool = True) -> Decomposition:
    """Sum of m-th powers with one point in each C_alpha_j and C_beta_j.

    Points of other sets shift at the exponent whose step does not exceed
    the step of C_alpha_1 at the current scale, so all bounds are measured
    in the scale of alpha_1.
    """
    alphas = [as_ratio(a) for a in alphas]
    betas = [as_ratio(b) for b in betas]
    _check_descending(alphas, "alphas")
    _check_descending(betas, "betas")
    x = _check_x(x, thm4_interval(alphas, betas, m, check_splits=check_splits))
    specs = [("a", a, Left("1")) for a in alphas] + [("b", b, Right("1")) for b in betas]
    return run(
        "sum", x, specs,
        phi=phi_power(m),
        ref_alpha=alphas[0],
        bound_constant=Fraction(m),
        init_scale=1,
        tolerance=as_ratio(tolerance),
        depth_budget=depth_budget,
    )
