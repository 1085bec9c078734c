"""Term counts, certified transcendental constants and split searches.

Every integer produced here is checked by exact rational substitution into
its defining inequality.  Constants that are roots of transcendental
equations (a_0, a_1) are carried as rational enclosures whose endpoint signs
are certified with mpmath interval arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

from mpmath import iv

from .cantor_model import as_ratio, params
from .errors import DomainError, Infeasible, NoSolution

THIRD = Fraction(1, 3)
T_MAX = 10**6


@dataclass(frozen=True)
class SumCounts:
    s: int
    k: int

    @property
    def r(self) -> int:
        return 2 * self.s + 2 * self.k

    @property
    def half(self) -> int:
        return self.s + self.k


@dataclass(frozen=True)
class ProductCounts:
    alpha: Fraction
    k_alpha: int
    t_alpha: int
    s_alpha: int
    p_alpha: int
    theta: Fraction
    beta_alpha: Fraction | None


@dataclass(frozen=True)
class MixedSplit:
    n1: int
    n2: int

    @property
    def total(self) -> int:
        return self.n1 + self.n2


@dataclass(frozen=True)
class ApproxReal:
    """A real constant known to lie in the closed rational interval [lo, hi]."""

    lo: Fraction
    hi: Fraction

    @property
    def value(self) -> Fraction:
        return (self.lo + self.hi) / 2

    @property
    def radius(self) -> Fraction:
        return (self.hi - self.lo) / 2

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def decimal(self, digits: int = 20) -> str:
        v = self.value
        return f"{v.numerator * 10**digits // v.denominator / 10**digits:.{digits}f}"

    def __contains__(self, q) -> bool:
        return self.lo <= q <= self.hi


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def sum_counts(alpha, m: int) -> SumCounts:
    p = params(alpha)
    if m < 1:
        raise DomainError("m must be a positive integer")
    lower = p.eta_plus ** (m - 1)
    s = _ceil(1 / lower)
    if p.alpha <= THIRD:
        return SumCounts(s, 0)
    k = _ceil(((3 * p.alpha - 1) / 2) / (lower * (1 - p.alpha**2) / 4))
    return SumCounts(s, k)


# --- certified roots --------------------------------------------------------


def _iv(q: Fraction):
    return iv.mpf(q.numerator) / iv.mpf(q.denominator)


def _sign(f: Callable, q: Fraction) -> int:
    """Certified sign of an interval-valued f at a rational point."""
    saved = iv.dps
    try:
        for dps in (30, 60, 120, 240):
            iv.dps = dps
            y = f(_iv(q))
            if y.a > 0:
                return 1
            if y.b < 0:
                return -1
    finally:
        iv.dps = saved
    raise NoSolution(f"cannot certify the sign at {q}")


def bisect_root(f: Callable, lo: Fraction, hi: Fraction, radius: Fraction) -> ApproxReal:
    """Enclose the root of an increasing interval-valued ``f`` on [lo, hi]."""
    if _sign(f, lo) >= 0 or _sign(f, hi) <= 0:
        raise NoSolution(f"no sign change on [{lo}, {hi}]")
    while (hi - lo) / 2 > radius:
        mid = (lo + hi) / 2
        s = _sign(f, mid)
        if s == 0:
            return ApproxReal(mid, mid)
        if s < 0:
            lo = mid
        else:
            hi = mid
    return ApproxReal(lo, hi)


_RADIUS = Fraction(1, 10**13)


@lru_cache(maxsize=None)
def solve_a0(radius: Fraction = _RADIUS) -> ApproxReal:
    """Root a_0 > 1 of a**2 * log(a) = 1/(2e)."""
    return bisect_root(lambda a: a**2 * iv.log(a) - 1 / (2 * iv.e), Fraction(1), Fraction(2), radius)


def beta_alpha(alpha) -> Fraction:
    a = as_ratio(alpha)
    return (1 - a**2) / (6 * a - 1 - a**2)


@lru_cache(maxsize=None)
def solve_a1(beta, radius: Fraction = _RADIUS) -> ApproxReal:
    """Root a_1 > 1 of a**5 * log(a) = beta/(2e)."""
    beta = as_ratio(beta)
    if beta <= 0:
        raise DomainError(f"beta_alpha must be positive, got {beta}")
    b = beta
    hi = Fraction(2)
    # a^5 log a is increasing and unbounded, so widen until the root is inside
    while _sign(lambda a: a**5 * iv.log(a) - _iv(b) / (2 * iv.e), hi) <= 0:
        hi *= 2
    return bisect_root(lambda a: a**5 * iv.log(a) - _iv(b) / (2 * iv.e), Fraction(1), hi, radius)


def _anchor_constant(alpha: Fraction, radius: Fraction) -> ApproxReal:
    if alpha <= THIRD:
        return solve_a0(radius)
    return solve_a1(beta_alpha(alpha), radius)


@lru_cache(maxsize=None)
def product_k(alpha) -> int:
    """Least k with 1/(1 - eta_minus**k) <= a, a = a_0 or a_1 by regime.

    The comparison eta_minus**k <= 1 - 1/a is decided against both ends of
    the enclosure of a; an undecided k triggers a tighter enclosure.
    """
    p = params(alpha)
    radius = _RADIUS
    for _ in range(6):
        a = _anchor_constant(p.alpha, radius)
        sure_lo, sure_hi = 1 - 1 / a.lo, 1 - 1 / a.hi
        k = 1
        while True:
            e = p.eta_minus_pow(k)
            if e <= sure_lo:
                return k
            if e <= sure_hi:
                break  # undecided at this precision
            k += 1
        radius /= 10**6
    raise NoSolution(f"k_alpha undecidable for alpha={p.alpha}")


def theta(alpha) -> Fraction:
    p = params(alpha)
    return 1 - p.eta_minus_pow(product_k(p.alpha))


def _product_sp(alpha: Fraction, th_pow: Fraction, ratio: Fraction = Fraction(1)):
    """s and p for a given theta**(2t-1) (and optional g3/g4 ratio)."""
    s = _ceil(ratio / th_pow)
    if alpha <= THIRD:
        return s, 0
    p = _ceil(ratio * ((3 * alpha - 1) / 2) / (th_pow * (1 - alpha**2) / 4))
    return s, p


def _in_bracket(alpha: Fraction, t: int, th_pow: Fraction) -> bool:
    y = 1 / th_pow
    if alpha <= THIRD:
        return y <= t < 1 + y
    g = 1 / beta_alpha(alpha)
    return g * y <= t < 2 + g * y


def scan_t(alpha: Fraction, base: Fraction, ratio: Fraction = Fraction(1), t_max: int = T_MAX):
    """Smallest t with t = s(t) + p(t); returns (t, s, p).

    ``base`` is the anchor value theta (or phi(theta)).  For ratio 1 a
    self-consistent t always satisfies the two-sided bracket, since
    s + p lies in [y/beta, y/beta + 2) with y = base**(1-2t).
    """
    th_pow = base
    sq = base * base
    for t in range(1, t_max + 1):
        s, p = _product_sp(alpha, th_pow, ratio)
        if s + p == t:
            assert ratio != 1 or _in_bracket(alpha, t, th_pow)
            return t, s, p
        # s + p grows geometrically in t; once it outruns t with slope >= 1 it never returns
        if s + p > t + 2 and (s + p) * (1 / sq - 1) >= 3:
            break
        th_pow *= sq
    raise NoSolution(f"no admissible t <= {t_max} for alpha={alpha}")


def product_counts(alpha, t_max: int = T_MAX) -> ProductCounts:
    p = params(alpha)
    k = product_k(p.alpha)
    th = 1 - p.eta_minus_pow(k)
    t, s, pp = scan_t(p.alpha, th, t_max=t_max)
    return ProductCounts(
        alpha=p.alpha,
        k_alpha=k,
        t_alpha=t,
        s_alpha=s,
        p_alpha=pp,
        theta=th,
        beta_alpha=None if p.alpha <= THIRD else beta_alpha(p.alpha),
    )


# --- sign change of the adjacency expression ----------------------------------


def adjacency_expr(alpha, m: int) -> Fraction:
    """2 + eta_plus**m - 3 * eta_plus**m * ((3 - alpha)/2)**m."""
    a = as_ratio(alpha)
    ep = (1 + a) / 2
    return 2 + ep**m - 3 * ep**m * ((3 - a) / 2) ** m


def sign_pattern(m: int, grid: int = 99):
    """Rows (alpha, E(alpha), sign) for alpha = i/(grid+1), i = 1..grid."""
    rows = []
    for i in range(1, grid + 1):
        a = Fraction(i, grid + 1)
        e = adjacency_expr(a, m)
        rows.append((a, e, (e > 0) - (e < 0)))
    return rows


def alpha1_of_m(m: int, grid: int = 1000, radius: Fraction = _RADIUS) -> ApproxReal:
    """Smallest sign change of the adjacency expression in (0, 1)."""
    if m < 1:
        raise DomainError("m must be a positive integer")
    prev_a, prev_s = None, 0
    for i in range(1, grid):
        a = Fraction(i, grid)
        e = adjacency_expr(a, m)
        if e == 0:
            return ApproxReal(a, a)
        s = 1 if e > 0 else -1
        if prev_s and s != prev_s:
            break
        prev_a, prev_s = a, s
    else:
        raise NoSolution(f"no sign change on the {grid}-point grid for m={m}")
    lo, hi = prev_a, a
    while (hi - lo) / 2 > radius:
        mid = (lo + hi) / 2
        e = adjacency_expr(mid, m)
        if e == 0:
            return ApproxReal(mid, mid)
        if (e > 0) == (prev_s > 0):
            lo = mid
        else:
            hi = mid
    # a rational root is recovered exactly when a small denominator fits
    guess = ((lo + hi) / 2).limit_denominator(10**4)
    if lo <= guess <= hi and adjacency_expr(guess, m) == 0:
        return ApproxReal(guess, guess)
    return ApproxReal(lo, hi)


# --- mixed schedules -----------------------------------------------------------


def shift_exponent(alpha_1, alpha_j, l: int) -> int:
    """Least n with eta_plus_j * eta_minus_j**n <= eta_plus_1 * eta_minus_1**l."""
    return _shift_exponent(as_ratio(alpha_1), as_ratio(alpha_j), l)


@lru_cache(maxsize=65536)
def _shift_exponent(a1: Fraction, aj: Fraction, l: int) -> int:
    if aj > a1:
        raise DomainError("shift_exponent needs alpha_j <= alpha_1")
    p1, pj = params(a1), params(aj)
    target = p1.step(l)
    n = l
    while pj.step(n) > target:
        n += 1
    return n


def _check_descending(seq: Sequence[Fraction], name: str):
    if not seq:
        raise DomainError(f"{name} must be nonempty")
    for a in seq:
        if not 0 < a < 1:
            raise DomainError(f"{name} entries must lie in (0, 1)")
    if any(a < b for a, b in zip(seq, seq[1:])):
        raise DomainError(f"{name} must be weakly descending")


def _greedy_split(terms_first, terms_second, rhs_first, label: str) -> MixedSplit:
    n = len(terms_first)
    total = Fraction(0)
    n1 = 0
    while not total > rhs_first:
        if n1 >= n:
            raise Infeasible(
                f"{label}: first inequality sum > {rhs_first} not met with {n} terms",
                which=f"{label}:first",
            )
        total += terms_first[n1]
        n1 += 1
    total = Fraction(0)
    n2 = 0
    while not total > 1:
        if n1 + n2 >= n:
            raise Infeasible(
                f"{label}: second inequality sum > 1 not met with {n - n1} remaining terms",
                which=f"{label}:second",
            )
        total += terms_second[n1 + n2]
        n2 += 1
    return MixedSplit(n1, n2)


def mixed_sum_split(alphas, m: int, label: str = "alphas") -> MixedSplit:
    alphas = [as_ratio(a) for a in alphas]
    _check_descending(alphas, label)
    a1 = alphas[0]
    first = [((1 + a) / 2) ** (m - 1) * ((1 - a) / 2) ** 2 for a in alphas]
    second = [((1 + a) / 2) ** (m - 1) * ((1 - a) / 2) for a in alphas]
    return _greedy_split(first, second, (3 * a1 - 1) / (1 + a1), label)


def mixed_product_split(chi, seq, pivot, label: str = "seq") -> MixedSplit:
    chi = as_ratio(chi)
    if not 0 < chi <= 1:
        raise DomainError("chi must lie in (0, 1]")
    seq = [as_ratio(a) for a in seq]
    _check_descending(seq, label)
    pivot = as_ratio(pivot)
    first = [chi * ((1 - a) / 2) ** 2 for a in seq]
    second = [chi * ((1 - a) / 2) for a in seq]
    return _greedy_split(first, second, (3 * pivot - 1) / (1 + pivot), label)


def chi(alphas, betas=()) -> Fraction:
    """Product of theta over every parameter in both lists."""
    out = Fraction(1)
    for a in list(alphas) + list(betas):
        out *= theta(a)
    return out
