"""Brute-force checks at finite construction level.

The level-l set C_l of C_alpha is a union of 2**l closed segments, and
sums or products of the C_l decrease to the sum or product of the Cantor
sets themselves.  If a target interval is covered by the fold over C_l for
some l, that is a necessary condition for the infinite-level claim, and a
failure at any l refutes it.

Nothing here reuses the solver code: level sets are built by repeated
middle removal and endpoint addresses are evaluated from their digits.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from typing import Callable, Optional, Sequence

from .cantor_model import EndpointAddress, Side, as_ratio, locate, params, Gap
from .errors import DomainError, ResourceLimit
from .intervals import RatInterval

DEFAULT_LMAX = 12
DEFAULT_PART_CAP = 10**6


def l_max() -> int:
    return int(os.environ.get("CANTOR_ARITH_LMAX", DEFAULT_LMAX))


def _merge_pairs(pairs):
    """Sort and merge closed (lo, hi) pairs; touching pairs merge."""
    pairs = sorted(pairs)
    out = []
    for lo, hi in pairs:
        if out and lo <= out[-1][1]:
            if hi > out[-1][1]:
                out[-1] = (out[-1][0], hi)
        else:
            out.append((lo, hi))
    return out


@dataclass(frozen=True)
class IntervalUnion:
    parts: tuple

    @classmethod
    def of(cls, pairs) -> "IntervalUnion":
        pairs = [(as_ratio(a), as_ratio(b)) for a, b in pairs]
        for a, b in pairs:
            if a > b:
                raise DomainError(f"empty part [{a}, {b}]")
        return cls(tuple(RatInterval(a, b) for a, b in _merge_pairs(pairs)))

    def pairs(self):
        return [(p.lo, p.hi) for p in self.parts]

    @property
    def measure(self) -> Fraction:
        return sum((p.length for p in self.parts), Fraction(0))

    def __len__(self):
        return len(self.parts)

    def contains_interval(self, target: RatInterval) -> bool:
        return any(p.lo <= target.lo and target.hi <= p.hi for p in self.parts)

    def contains_union(self, other: "IntervalUnion") -> bool:
        return all(self.contains_interval(q) for q in other.parts)

    def uncovered(self, target: RatInterval) -> list[RatInterval]:
        """Closures of the pieces of target not inside the union."""
        gaps = []
        cur = target.lo
        for p in self.parts:
            if p.hi < cur:
                continue
            if p.lo > target.hi:
                break
            if p.lo > cur:
                gaps.append(RatInterval(cur, p.lo))
            cur = max(cur, p.hi)
        if cur < target.hi:
            gaps.append(RatInterval(cur, target.hi))
        return gaps


def level_set(alpha, l: int) -> IntervalUnion:
    """C_l: 2**l closed segments of width eta_minus**l."""
    if l < 0:
        raise DomainError("level must be nonnegative")
    if l > l_max():
        raise ResourceLimit(f"level {l} exceeds L_max = {l_max()}")
    keep = (1 - as_ratio(alpha)) / 2
    parts = [(Fraction(0), Fraction(1))]
    for _ in range(l):
        nxt = []
        for a, b in parts:
            w = (b - a) * keep
            nxt.append((a, a + w))
            nxt.append((b - w, b))
        parts = nxt
    return IntervalUnion(tuple(RatInterval(a, b) for a, b in parts))


def map_phi(u: IntervalUnion, phi: Callable) -> IntervalUnion:
    """Image of u under an increasing map."""
    return IntervalUnion.of((phi(p.lo), phi(p.hi)) for p in u.parts)


def map_power(u: IntervalUnion, m: int) -> IntervalUnion:
    if m < 1:
        raise DomainError("power must be positive")
    if u.parts and u.parts[0].lo < 0:
        raise DomainError("power map needs a nonnegative union")
    return map_phi(u, lambda v: v**m)


def minkowski_sum(u: IntervalUnion, v: IntervalUnion) -> IntervalUnion:
    return IntervalUnion.of((a.lo + b.lo, a.hi + b.hi) for a in u.parts for b in v.parts)


def minkowski_product(u: IntervalUnion, v: IntervalUnion) -> IntervalUnion:
    for w in (u, v):
        if w.parts and w.parts[0].lo < 0:
            raise DomainError("product needs nonnegative unions")
    return IntervalUnion.of((a.lo * b.lo, a.hi * b.hi) for a in u.parts for b in v.parts)


# --- coverage -------------------------------------------------------------


@dataclass(frozen=True)
class CoverageReport:
    covered: bool
    target: RatInterval
    level: int
    terms: int
    op: str
    uncovered: tuple = ()
    final_parts: int = 0
    max_pairs: int = 0


def _scaled(union: IntervalUnion, scale: int):
    return [(int(p.lo * scale), int(p.hi * scale)) for p in union.parts]


def _common_scale(unions) -> int:
    d = 1
    for u in unions:
        for p in u.parts:
            d = lcm(d, p.lo.denominator, p.hi.denominator)
    return d


def _ceil(q: Fraction) -> int:
    return -((-q.numerator) // q.denominator)


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


def _fold_sum(terms, target, part_cap):
    scale = _common_scale(terms)
    ints = [_scaled(t, scale) for t in terms]
    lo_t, hi_t = target.lo * scale, target.hi * scale
    mins = [t[0][0] for t in ints]
    maxs = [t[-1][1] for t in ints]
    acc = [(0, 0)]
    max_pairs = 0
    for j, parts in enumerate(ints):
        pairs = len(acc) * len(parts)
        max_pairs = max(max_pairs, pairs)
        if pairs > part_cap:
            raise ResourceLimit(f"{pairs} candidate parts exceed the cap {part_cap}")
        acc = _merge_pairs((a + c, b + d) for a, b in acc for c, d in parts)
        rest_min, rest_max = sum(mins[j + 1:]), sum(maxs[j + 1:])
        w_lo, w_hi = _ceil(lo_t - rest_max), _floor(hi_t - rest_min)
        acc = [(a, b) for a, b in acc if b >= w_lo and a <= w_hi]
    return [(Fraction(a, scale), Fraction(b, scale)) for a, b in acc], max_pairs


def _fold_product(terms, target, part_cap):
    scales = [_common_scale([t]) for t in terms]
    ints = [_scaled(t, s) for t, s in zip(terms, scales)]
    acc = [(1, 1)]
    scale = 1
    max_pairs = 0
    for j, parts in enumerate(ints):
        pairs = len(acc) * len(parts)
        max_pairs = max(max_pairs, pairs)
        if pairs > part_cap:
            raise ResourceLimit(f"{pairs} candidate parts exceed the cap {part_cap}")
        acc = _merge_pairs((a * c, b * d) for a, b in acc for c, d in parts)
        scale *= scales[j]
        rest_min = Fraction(1)
        rest_max = Fraction(1)
        for t in terms[j + 1:]:
            rest_min *= t.parts[0].lo
            rest_max *= t.parts[-1].hi
        w_lo = _ceil(target.lo * scale / rest_max) if rest_max > 0 else None
        w_hi = _floor(target.hi * scale / rest_min) if rest_min > 0 else None
        acc = [(a, b) for a, b in acc if (w_lo is None or b >= w_lo) and (w_hi is None or a <= w_hi)]
    return [(Fraction(a, scale), Fraction(b, scale)) for a, b in acc], max_pairs


def coverage_check(
    target: RatInterval,
    alphas,
    l: int,
    *,
    terms: Optional[int] = None,
    m: int = 1,
    op: str = "sum",
    phi: Optional[Callable] = None,
    part_cap: int = DEFAULT_PART_CAP,
) -> CoverageReport:
    """Is ``target`` inside the fold of level-l sets?

    ``alphas`` is one parameter per term, or a single parameter repeated
    ``terms`` times.  Sums add phi-images (phi defaults to the m-th power);
    products multiply raw points, or phi-images when phi is given.  Parts
    that cannot reach the target after the remaining terms are pruned
    during the fold, which leaves the covered part of the target unchanged.
    """
    if op not in ("sum", "product"):
        raise DomainError(f"unknown operation {op!r}")
    if isinstance(alphas, (list, tuple)):
        alphas = [as_ratio(a) for a in alphas]
    else:
        if terms is None:
            raise DomainError("terms is required with a single parameter")
        alphas = [as_ratio(alphas)] * terms
    if terms is not None and terms != len(alphas):
        raise DomainError("terms does not match the parameter list")
    cache = {}
    unions = []
    for a in alphas:
        if a not in cache:
            base = level_set(a, l)
            if phi is not None:
                base = map_phi(base, phi)
            elif op == "sum" and m != 1:
                base = map_power(base, m)
            cache[a] = base
        unions.append(cache[a])
    fold = _fold_sum if op == "sum" else _fold_product
    parts, max_pairs = fold(unions, target, part_cap)
    union = IntervalUnion(tuple(RatInterval(a, b) for a, b in parts))
    gaps = tuple(union.uncovered(target))
    return CoverageReport(
        covered=not gaps,
        target=target,
        level=l,
        terms=len(alphas),
        op=op,
        uncovered=gaps,
        final_parts=len(parts),
        max_pairs=max_pairs,
    )


# --- decomposition checks -------------------------------------------------


def address_value(alpha, addr: EndpointAddress) -> Fraction:
    """Value of an endpoint address straight from its digits."""
    alpha = as_ratio(alpha)
    em, ep = (1 - alpha) / 2, (1 + alpha) / 2
    v = Fraction(0)
    w = Fraction(1)
    for digit in addr.word:
        if digit == "1":
            v += ep * w
        w *= em
    return v + w if addr.side is Side.RIGHT else v


@dataclass
class VerifyReport:
    checks: dict = field(default_factory=dict)

    def record(self, name: str, passed: bool, detail: str = ""):
        self.checks[name] = (passed, detail)

    @property
    def ok(self) -> bool:
        return all(passed for passed, _ in self.checks.values())

    def failures(self) -> list[str]:
        return [f"{k}: {d}" for k, (ok, d) in self.checks.items() if not ok]


def verify_decomposition(decomp, x=None, phi: Optional[Callable] = None) -> VerifyReport:
    """Re-check a Decomposition from scratch.

    values: every address recomputes to its stored value and lies in the set
    identity: aggregate of recomputed values + residual == x
    bound: |residual| <= certified_bound
    trace: every trace step obeys the bound schedule, scales never decrease
    and rounds strictly increase them
    """
    rep = VerifyReport()
    x = as_ratio(x) if x is not None else decomp.x
    phi = phi if phi is not None else decomp.phi

    bad = []
    values = []
    for pt in decomp.points:
        v = address_value(pt.alpha, pt.address)
        values.append(v)
        if v != pt.value:
            bad.append(f"point {pt.index}: stored {pt.value} but address gives {v}")
        elif isinstance(locate(params(pt.alpha), v, max(1, pt.address.depth + 2)), Gap):
            bad.append(f"point {pt.index}: value {v} lies in a gap")
        if decomp.prefixes is not None:
            k = decomp.prefixes[pt.index]
            if not pt.address.word.startswith("1" * k):
                bad.append(f"point {pt.index}: lost its 1^{k} prefix")
        want = Side.LEFT if pt.role == "a" else Side.RIGHT
        if pt.address.side is not want and decomp.residual != 0:
            bad.append(f"point {pt.index}: role {pt.role} with side {pt.address.side.value}")
    rep.record("values", not bad, "; ".join(bad))

    if decomp.kind == "sum":
        img = phi if phi is not None else (lambda v: v)
        agg = sum((img(v) for v in values), Fraction(0))
    else:
        agg = Fraction(1)
        for v in values:
            agg *= v
    mismatch = x - (agg + decomp.residual)
    rep.record("identity", mismatch == 0, "" if mismatch == 0 else f"off by {mismatch}")

    ok = abs(decomp.residual) <= decomp.certified_bound
    rep.record("bound", ok, "" if ok else f"|{decomp.residual}| > {decomp.certified_bound}")

    rep.record("trace", *_check_trace(decomp))
    return rep


def _check_trace(decomp):
    em = (1 - decomp.ref_alpha) / 2
    prev_scale = None
    prev_after = None
    for step in decomp.trace:
        if prev_after is not None and step.delta_before != prev_after:
            return False, f"round {step.round}: delta does not chain"
        bound = decomp.bound_constant * em**step.scale
        if abs(step.delta_after) > bound:
            return False, f"round {step.round}: |delta| exceeds M*eta^{step.scale}"
        if step.kind == "round":
            if prev_scale is not None and step.scale <= prev_scale:
                return False, f"round {step.round}: scale did not increase"
            if decomp.caps is not None and len(step.moved) > sum(decomp.caps):
                return False, f"round {step.round}: {len(step.moved)} shifts exceed the budget"
        elif prev_scale is not None and step.scale < prev_scale:
            return False, f"step {step.round}: scale decreased"
        prev_scale, prev_after = step.scale, step.delta_after
    if prev_after is not None and prev_after != decomp.residual:
        return False, "trace does not end at the residual"
    return True, ""
