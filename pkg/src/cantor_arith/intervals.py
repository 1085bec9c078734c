"""Certified intervals of sums and products of central Cantor sets.

All endpoints are exact rationals.  The two thin-set families built from
moved initial points are returned as :class:`IntervalFamily` objects that
carry the members, their exact union and the closed-form length that the
construction predicts, so the two can be compared.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .cantor_model import as_ratio, params
from .errors import DomainError, Infeasible
from .parameters import (
    MixedSplit,
    _check_descending,
    mixed_product_split,
    mixed_sum_split,
    product_counts,
    sum_counts,
    theta,
)


@dataclass(frozen=True, order=True)
class RatInterval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", as_ratio(self.lo))
        object.__setattr__(self, "hi", as_ratio(self.hi))
        if self.lo > self.hi:
            raise DomainError(f"empty interval [{self.lo}, {self.hi}]")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def __contains__(self, x) -> bool:
        return self.lo <= as_ratio(x) <= self.hi

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"


class Classification(enum.Enum):
    SINGLE = "SingleInterval"
    DISJOINT = "DisjointUnion"


def merge(intervals: Sequence[RatInterval]) -> list[RatInterval]:
    """Union of closed intervals as a sorted list of disjoint pieces."""
    out: list[RatInterval] = []
    for iv in sorted(intervals):
        if out and iv.lo <= out[-1].hi:
            if iv.hi > out[-1].hi:
                out[-1] = RatInterval(out[-1].lo, iv.hi)
        else:
            out.append(iv)
    return out


@dataclass(frozen=True)
class IntervalFamily:
    """Members I(t), t = 1..r/2, and their exact union.

    ``total_length`` is the measure of the union.  ``formula_length`` is the
    closed form the construction predicts for the observed case and
    ``inequality_holds`` the adjacency inequality it is stated with; both
    are reported as-is so callers can compare them with the exact values.
    """

    members: tuple
    merged: tuple
    classification: Classification
    total_length: Fraction
    formula_length: Fraction
    inequality_holds: bool
    adjacency_holds: bool = field(default=True)

    def member(self, t: int) -> RatInterval:
        return dict(self.members)[t]


def _family(members, formula_length, inequality_holds, adjacency_holds) -> IntervalFamily:
    merged = tuple(merge([iv for _, iv in members]))
    cls = Classification.SINGLE if len(merged) == 1 else Classification.DISJOINT
    return IntervalFamily(
        members=tuple(members),
        merged=merged,
        classification=cls,
        total_length=sum((iv.length for iv in merged), Fraction(0)),
        formula_length=formula_length,
        inequality_holds=inequality_holds,
        adjacency_holds=adjacency_holds,
    )


def lemma2_interval(alpha, m: int) -> RatInterval:
    """Interval of x reachable as a sum of r m-th powers of points of C_alpha."""
    p = params(alpha)
    half = Fraction(sum_counts(p.alpha, m).half)
    e = p.eta_plus**m
    return RatInterval((half - 1) + (half + 1) * e, (half + 1) + (half - 1) * e)


def thm3_family_Iupper(alpha, m: int) -> IntervalFamily:
    """Family obtained by lifting t of the a-points to eta_plus*(3-alpha)/2.

    Members move right as t grows, so the union is one interval exactly
    when the left end of I(t+1) does not pass the right end of I(t).
    """
    p = params(alpha)
    half = sum_counts(p.alpha, m).half
    e = p.eta_plus**m
    w = (p.eta_plus * (3 - p.alpha) / 2) ** m
    members = []
    for t in range(1, half + 1):
        lo = (half - t) * e + (t + 1) * w + (half - 1)
        hi = (half - t) * e + (t - 1) * w + (half + 1)
        members.append((t, RatInterval(lo, hi)))
    holds = 2 + e >= 3 * w
    if holds:
        formula = 2 + (half - 3) * w - (half - 1) * e
    else:
        formula = 2 * half * (1 - w)
    return _family(members, formula, holds, holds)


def thm3_family_Ilower(alpha, m: int) -> IntervalFamily:
    """Family obtained by lowering t of the b-points to (3+alpha^2)/4.

    Members move left as t grows.  Consecutive members overlap exactly when
    3 v^m >= 1 + 2 eta_plus^m (v = (3+alpha^2)/4); ``inequality_holds``
    reports the weaker test 1 + v^m >= 2 eta_plus^m separately.
    """
    p = params(alpha)
    half = sum_counts(p.alpha, m).half
    e = p.eta_plus**m
    v = ((3 + p.alpha**2) / 4) ** m
    members = []
    for t in range(1, half + 1):
        lo = (half + 1) * e + (t - 1) * v + (half - t)
        hi = (half - 1) * e + (t + 1) * v + (half - t)
        members.append((t, RatInterval(lo, hi)))
    formula = (half + 1) * v - 2 * e + (half - 1)
    return _family(members, formula, 1 + v >= 2 * e, 3 * v >= 1 + 2 * e)


def _require_equal_heads(alphas, betas):
    if not alphas or not betas:
        raise DomainError("both parameter lists must be nonempty")
    if alphas[0] != betas[0]:
        raise DomainError(f"leading parameters must agree, got {alphas[0]} and {betas[0]}")


def mixed_sum_splits(alphas, betas, m: int) -> tuple[MixedSplit, MixedSplit]:
    return mixed_sum_split(alphas, m, "alphas"), mixed_sum_split(betas, m, "betas")


def thm4_interval(alphas, betas, m: int, swapped: bool = False, check_splits: bool = True) -> RatInterval:
    """Interval for sums of m-th powers from C_alpha_1..C_alpha_n, C_beta_1..C_beta_p.

    The alphas start at eta_plus and the betas at 1.  ``swapped`` exchanges
    the two roles.  ``check_splits=False`` skips the term-count feasibility
    test, which is useful when all parameters coincide and the single-set
    counts already apply.
    """
    alphas = [as_ratio(a) for a in alphas]
    betas = [as_ratio(b) for b in betas]
    _check_descending(alphas, "alphas")
    _check_descending(betas, "betas")
    _require_equal_heads(alphas, betas)
    if check_splits:
        mixed_sum_splits(alphas, betas, m)
    if swapped:
        alphas, betas = betas, alphas
    rest = sum((((1 + a) / 2) ** m for a in alphas[1:]), Fraction(0))
    q = len(betas)
    head = ((1 + betas[0]) / 2) ** m
    return RatInterval(rest + q - 1 + 2 * head, rest + q + 1)


def thm5_interval(alpha) -> RatInterval:
    counts = product_counts(alpha)
    th, t = counts.theta, counts.t_alpha
    return RatInterval(th ** (t + 1), th ** (t - 1))


def _prod(values) -> Fraction:
    out = Fraction(1)
    for v in values:
        out *= v
    return out


def product_interval(moving, anchored_head) -> RatInterval:
    """[prod theta(moving) * theta(anchored_head), prod theta(moving[1:])]."""
    ths = [theta(a) for a in moving]
    return RatInterval(_prod(ths) * theta(anchored_head), _prod(ths[1:]))


def mixed_product_splits(alphas, betas):
    c = _prod(theta(a) for a in list(alphas) + list(betas))
    return (
        mixed_product_split(c, alphas, alphas[0], "alphas"),
        mixed_product_split(c, betas, betas[0], "betas"),
    )


def thm6_intervals(alphas, betas, check_splits: bool = True) -> tuple[RatInterval, RatInterval]:
    """The two product intervals for parameter lists with a common head.

    The first has the betas starting at theta and the alphas at 1; the
    second has the roles the other way round.
    """
    alphas = [as_ratio(a) for a in alphas]
    betas = [as_ratio(b) for b in betas]
    _check_descending(alphas, "alphas")
    _check_descending(betas, "betas")
    _require_equal_heads(alphas, betas)
    if check_splits:
        mixed_product_splits(alphas, betas)
    return product_interval(betas, alphas[0]), product_interval(alphas, betas[0])


@dataclass(frozen=True)
class GammaSplit:
    """The four candidate intervals for a partitioned descending sequence.

    ``intervals[i]`` is None when the interval is undefined (empty product
    range); ``feasible[i]`` says whether its constraint pair holds, and
    ``reasons`` keeps the violated inequality for infeasible pairs.
    """

    intervals: tuple
    feasible: tuple
    reasons: tuple
    chi1: Fraction
    chi2: Fraction


def _pair(chi_value, subset, full, pivot, tags) -> Optional[str]:
    try:
        if not subset:
            raise Infeasible(f"{tags[0]}: empty subset", which=f"{tags[0]}:first")
        mixed_product_split(chi_value, subset, pivot, tags[0])
        mixed_product_split(chi_value, full, pivot, tags[1])
    except Infeasible as exc:
        return exc.which
    return None


def gamma_split_intervals(alphas, betas) -> GammaSplit:
    """Intervals I_1..I_4 for a descending sequence split into alphas and betas."""
    alphas = [as_ratio(a) for a in alphas]
    betas = [as_ratio(b) for b in betas]
    _check_descending(alphas, "alphas")
    _check_descending(betas, "betas")
    if not alphas or not betas:
        raise DomainError("both subsequences must be nonempty")
    a_set = [a for a in alphas if a <= betas[0]]
    b_set = [b for b in betas if b <= alphas[0]]
    chi1 = _prod(theta(a) for a in a_set) * _prod(theta(b) for b in betas)
    chi2 = _prod(theta(b) for b in b_set) * _prod(theta(a) for a in alphas)

    def anchored(subset, head):
        if not subset:
            return None
        prod = _prod(theta(a) for a in subset)
        return RatInterval(prod * theta(head), prod)

    def full(seq):
        ths = [theta(a) for a in seq]
        return RatInterval(_prod(ths), _prod(ths[1:]))

    r12 = _pair(chi1, a_set, betas, betas[0], ("A", "betas"))
    r34 = _pair(chi2, b_set, alphas, alphas[0], ("B", "alphas"))
    return GammaSplit(
        intervals=(anchored(a_set, betas[0]), full(betas), anchored(b_set, alphas[0]), full(alphas)),
        feasible=(r12 is None, r12 is None, r34 is None, r34 is None),
        reasons=(r12, r12, r34, r34),
        chi1=chi1,
        chi2=chi2,
    )
