"""Exact round-based dynamics shared by the sum and product solvers.

Points start at segment endpoints.  a-points only move up (Left moves) and
b-points only move down (Right moves).  After a first move that places one
point next to the exact solution, every round brackets the residual

    B(n+1) < |delta| <= B(n),   B(l) = M * eta_minus(alpha_ref)**l

and shifts points one at a time until |delta| <= B(n+1).  A shift that
would overshoot past -B(n+1) is never applied: the round first uses large
shifts at the matched scale of each point, then small shifts one level finer.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Optional, Sequence

from .cantor_model import (
    EndpointAddress,
    Left,
    Right,
    Side,
    endpoint_value,
    params,
    segment_left,
    shift,
)
from .errors import BudgetViolation, DomainError, OutOfInterval
from .parameters import shift_exponent

SMALL_DEEPEN = 4


@dataclass(frozen=True)
class DecompPoint:
    index: int
    role: str
    alpha: Fraction
    address: EndpointAddress
    value: Fraction

    @property
    def param(self) -> Fraction:
        return self.alpha


@dataclass(frozen=True)
class TraceStep:
    round: int
    kind: str
    delta_before: Fraction
    delta_after: Fraction
    moved: tuple
    scale: int
    bound: Fraction


@dataclass(frozen=True)
class Decomposition:
    """Cantor points whose images aggregate to ``x`` up to ``residual``.

    ``kind`` is "sum" (images phi(value) are added) or "product" (values are
    multiplied).  ``certified_bound`` is M * eta_minus(ref_alpha)**l for the
    final scale l, or 0 when the residual vanished.
    """

    kind: str
    x: Fraction
    points: tuple
    residual: Fraction
    certified_bound: Fraction
    trace: tuple
    ref_alpha: Fraction
    bound_constant: Fraction
    phi: Optional[object]
    status: str
    caps: Optional[tuple] = None
    prefixes: Optional[tuple] = None

    def image(self, value: Fraction) -> Fraction:
        return self.phi(value) if self.phi is not None else value

    def aggregate(self) -> Fraction:
        if self.kind == "sum":
            return sum((self.image(p.value) for p in self.points), Fraction(0))
        out = Fraction(1)
        for p in self.points:
            out *= p.value
        return out

    def bound(self, scale: int) -> Fraction:
        return self.bound_constant * params(self.ref_alpha).eta_minus_pow(scale)

    @property
    def deltas(self) -> tuple:
        return tuple(step.delta_after for step in self.trace)

    def with_points(self, points) -> "Decomposition":
        return replace(self, points=tuple(points))


@dataclass
class _Point:
    role: str
    alpha: Fraction
    addr: EndpointAddress
    value: Fraction
    image: Fraction


class _Engine:
    def __init__(self, kind, x, specs, phi, ref_alpha, bound_constant, caps):
        self.kind = kind
        self.x = x
        self.phi = phi
        self.ref = params(ref_alpha)
        self.M = bound_constant
        self.caps = caps
        self.points: list[_Point] = []
        for role, alpha, addr in specs:
            p = params(alpha)
            v = endpoint_value(p, addr)
            self.points.append(_Point(role, p.alpha, addr, v, self._img(v)))
        self.agg = self._aggregate()
        self.trace: list[TraceStep] = []

    def _img(self, v):
        if self.kind == "sum":
            return self.phi(v) if self.phi is not None else v
        return v

    def _aggregate(self):
        if self.kind == "sum":
            return sum((pt.image for pt in self.points), Fraction(0))
        out = Fraction(1)
        for pt in self.points:
            out *= pt.value
        return out

    def bound(self, n: int) -> Fraction:
        return self.M * self.ref.eta_minus_pow(n)

    def bracket(self, absd: Fraction, start: int = 0) -> int:
        n = start
        while absd <= self.bound(n + 1):
            n += 1
        return n

    def _agg_with(self, pt: _Point, value: Fraction, image: Fraction) -> Fraction:
        if self.kind == "sum":
            return self.agg - pt.image + image
        return self.agg / pt.value * value

    def _set(self, pt: _Point, addr: EndpointAddress, value: Fraction):
        image = self._img(value)
        self.agg = self._agg_with(pt, value, image)
        pt.addr, pt.value, pt.image = addr, value, image

    # first move

    def _first_target(self, pt: _Point) -> Fraction:
        if self.kind == "sum":
            return self.x - (self.agg - pt.image)
        return self.x / (self.agg / pt.value)

    def _locate_image(self, pt: _Point, y: Fraction, max_depth: int):
        """Descend inside pt's segment to the point whose image is y.

        Returns ("hit", addr), ("gap", word) or ("deep", word), comparing
        images of endpoints with y exactly.
        """
        p = params(pt.alpha)
        f = self._img
        word = pt.addr.word
        left = segment_left(p, word)
        right = left + p.eta_minus_pow(len(word))
        if y == f(left):
            return "hit", Left(word)
        if y == f(right):
            return "hit", Right(word)
        if not f(left) < y < f(right):
            raise OutOfInterval(f"first move target {y} is outside the reachable range")
        while True:
            d = len(word)
            if d >= max_depth:
                return "deep", word
            gl = left + p.eta_minus_pow(d + 1)
            gr = left + p.step(d)
            fl, fr = f(gl), f(gr)
            if y == fl:
                return "hit", Right(word + "0")
            if y == fr:
                return "hit", Left(word + "1")
            if fl < y < fr:
                return "gap", word
            if y < fl:
                word += "0"
            else:
                word += "1"
                left = gr

    def first_move(self, max_depth: int) -> bool:
        """Move one point next to the exact solution.  True on an exact hit."""
        delta = self.x - self.agg
        role = "a" if delta > 0 else "b"
        idx = next(i for i, pt in enumerate(self.points) if pt.role == role)
        pt = self.points[idx]
        old_depth = pt.addr.depth
        y = self._first_target(pt)
        how, where = self._locate_image(pt, y, max(max_depth, old_depth + 1))
        p = params(pt.alpha)
        if how == "hit":
            addr = where
        elif how == "gap":
            addr = Right(where + "0") if role == "b" else Left(where + "1")
        else:
            addr = Right(where) if role == "b" else Left(where)
        self._set(pt, addr, endpoint_value(p, addr))
        after = self.x - self.agg
        scale = self.trace[-1].scale if after == 0 else self.bracket(abs(after))
        self.trace.append(
            TraceStep(1, "first_move", delta, after, ((idx, old_depth, addr.depth),), scale,
                      Fraction(0) if after == 0 else self.bound(scale))
        )
        return after == 0

    # rounds

    def _exponent(self, pt: _Point, n: int) -> int:
        if pt.alpha == self.ref.alpha:
            return n
        return shift_exponent(self.ref.alpha, pt.alpha, n)

    def _try(self, pt: _Point, scale: int):
        p = params(pt.alpha)
        addr, step = shift(p, pt.addr, scale)
        value = pt.value + step if addr.side is Side.LEFT else pt.value - step
        image = self._img(value)
        return addr, value, image, self.x - self._agg_with(pt, value, image)

    def round(self, k: int, n: int):
        delta = self.x - self.agg
        target = self.bound(n + 1)
        role = "a" if delta > 0 else "b"
        sign = 1 if delta > 0 else -1
        cands = [i for i, pt in enumerate(self.points) if pt.role == role]
        used: set[int] = set()
        moved = []
        large = small = 0

        def overshoots(new_delta):
            return sign * new_delta < -target

        cur = delta
        for i in cands:
            if abs(cur) <= target:
                break
            pt = self.points[i]
            e = self._exponent(pt, n)
            if pt.addr.depth > e:
                continue
            addr, value, _, nd = self._try(pt, e)
            if overshoots(nd):
                break
            moved.append((i, pt.addr.depth, addr.depth))
            self._set(pt, addr, value)
            used.add(i)
            large += 1
            cur = nd
        for i in cands:
            if abs(cur) <= target:
                break
            if i in used:
                continue
            pt = self.points[i]
            e = max(self._exponent(pt, n) + 1, pt.addr.depth)
            for extra in range(SMALL_DEEPEN):
                addr, value, _, nd = self._try(pt, e + extra)
                if not overshoots(nd):
                    break
            else:
                continue
            moved.append((i, pt.addr.depth, addr.depth))
            self._set(pt, addr, value)
            used.add(i)
            small += 1
            cur = nd
        if abs(cur) > target:
            raise BudgetViolation(
                f"round {k} at scale {n}: |delta| = {float(abs(cur)):.3e} exceeds {float(target):.3e}"
            )
        if self.caps is not None and (large > self.caps[0] or small > self.caps[1]):
            raise BudgetViolation(
                f"round {k} at scale {n}: used {large} large and {small} small shifts, caps {self.caps}"
            )
        self.trace.append(TraceStep(k, "round", delta, cur, tuple(moved), n + 1,
                                    Fraction(0) if cur == 0 else target))


def run(
    kind: str,
    x: Fraction,
    specs: Sequence[tuple],
    *,
    phi: Optional[Callable] = None,
    ref_alpha: Fraction,
    bound_constant: Fraction,
    init_scale: int,
    tolerance: Fraction,
    depth_budget: int,
    caps: Optional[tuple] = None,
    prefixes: Optional[tuple] = None,
) -> Decomposition:
    """Run the dynamics from the initial addresses ``specs``.

    ``specs`` lists (role, alpha, address) with role "a" or "b".  The caller
    checks that x lies in the certified interval of the construction.
    """
    if tolerance <= 0:
        raise DomainError("tolerance must be positive")
    if depth_budget < init_scale + 1:
        raise DomainError(f"depth_budget must exceed {init_scale}")
    eng = _Engine(kind, x, specs, phi, ref_alpha, bound_constant, caps)
    delta = x - eng.agg
    if abs(delta) > eng.bound(init_scale):
        raise OutOfInterval(f"x = {x} is too far from the initial aggregate {eng.agg}")
    eng.trace.append(TraceStep(0, "init", delta, delta, (), init_scale,
                               Fraction(0) if delta == 0 else eng.bound(init_scale)))
    status = "exact"
    if delta != 0 and not eng.first_move(depth_budget):
        n = eng.trace[-1].scale
        k = 2
        while True:
            if eng.bound(n) <= tolerance:
                status = "tolerance"
                break
            if n + 2 > depth_budget:
                status = "depth_budget"
                break
            eng.round(k, n)
            cur = x - eng.agg
            if cur == 0:
                break
            n = eng.bracket(abs(cur), n + 1)
            k += 1
    residual = x - eng.agg
    bound = Fraction(0) if residual == 0 else eng.bound(eng.bracket(abs(residual), 0))
    if residual == 0:
        status = "exact"
    points = tuple(
        DecompPoint(i, pt.role, pt.alpha, pt.addr, pt.value) for i, pt in enumerate(eng.points)
    )
    return Decomposition(
        kind=kind,
        x=x,
        points=points,
        residual=residual,
        certified_bound=bound,
        trace=tuple(eng.trace),
        ref_alpha=eng.ref.alpha,
        bound_constant=bound_constant,
        phi=phi,
        status=status,
        caps=caps,
        prefixes=prefixes,
    )
