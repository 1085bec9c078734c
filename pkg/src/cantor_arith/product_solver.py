"""Decompose x as a product of Cantor points.

Every point lives in the segment 1^k of its Cantor set, the top segment
[theta, 1] with theta = 1 - eta_minus**k.  a-points start at theta and
b-points at 1; the dynamics then run multiplicatively.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Optional

from ._dynamics import Decomposition, run
from .cantor_model import Left, Right, as_ratio
from .errors import OutOfInterval
from .intervals import RatInterval, thm5_interval, thm6_intervals
from .parameters import _check_descending, product_counts, product_k

DEFAULT_DEPTH = 200


def decompose_product(alpha, x, tolerance, depth_budget: int = DEFAULT_DEPTH) -> Decomposition:
    """Write x in [theta^(t+1), theta^(t-1)] as a product of 2t points of C_alpha."""
    counts = product_counts(alpha)
    x = as_ratio(x)
    interval = thm5_interval(counts.alpha)
    if x not in interval:
        raise OutOfInterval(f"x = {x} is outside {interval}")
    base = "1" * counts.k_alpha
    t = counts.t_alpha
    specs = [("a", counts.alpha, Left(base))] * t + [("b", counts.alpha, Right(base))] * t
    return run(
        "product", x, specs,
        ref_alpha=counts.alpha,
        bound_constant=Fraction(1),
        init_scale=counts.k_alpha,
        tolerance=as_ratio(tolerance),
        depth_budget=depth_budget,
        caps=(counts.s_alpha, counts.p_alpha),
        prefixes=(counts.k_alpha,) * (2 * t),
    )


def decompose_mixed_product(alphas, betas, x, tolerance, depth_budget: int = DEFAULT_DEPTH,
                            interval: Optional[int] = None, check_splits: bool = True) -> Decomposition:
    """Product with one point in each C_alpha_i and C_beta_i.

    ``interval`` picks which of the two certified intervals x is solved in:
    in interval 2 the alphas start at theta and the betas at 1, in interval
    1 the roles are swapped.  By default the first one containing x is used,
    trying 2 before 1.
    """
    alphas = [as_ratio(a) for a in alphas]
    betas = [as_ratio(b) for b in betas]
    _check_descending(alphas, "alphas")
    _check_descending(betas, "betas")
    x = as_ratio(x)
    first, second = thm6_intervals(alphas, betas, check_splits=check_splits)
    choices = {1: first, 2: second}
    if interval is None:
        interval = next((i for i in (2, 1) if x in choices[i]), None)
        if interval is None:
            raise OutOfInterval(f"x = {x} is outside {second} and {first}")
    chosen: RatInterval = choices[interval]
    if x not in chosen:
        raise OutOfInterval(f"x = {x} is outside {chosen}")
    movers, anchors = (alphas, betas) if interval == 2 else (betas, alphas)
    specs = [("a", a, Left("1" * product_k(a))) for a in movers]
    specs += [("b", b, Right("1" * product_k(b))) for b in anchors]
    return run(
        "product", x, specs,
        ref_alpha=alphas[0],
        bound_constant=Fraction(1),
        init_scale=product_k(alphas[0]),
        tolerance=as_ratio(tolerance),
        depth_budget=depth_budget,
        prefixes=tuple(spec[2].depth for spec in specs),
    )
