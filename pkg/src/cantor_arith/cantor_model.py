"""Exact symbolic model of the central Cantor set C_alpha.

C_alpha is built from [0, 1] by repeatedly removing the open middle fraction
alpha of every segment.  A segment at level l is addressed by a binary word
w of length l (0 = left child, 1 = right child); its left end is

    sum over positions i with w_i = 1 of  eta_plus * eta_minus**(i-1)

and its width is eta_minus**l, where eta_plus = (1+alpha)/2 and
eta_minus = (1-alpha)/2.  Every segment endpoint belongs to C_alpha, so the
solvers carry points only as endpoint addresses.

All arithmetic is done with :class:`fractions.Fraction`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .errors import DomainError

Ratio = Fraction


def as_ratio(value) -> Fraction:
    """Convert ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are rejected so that set parameters never lose precision.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("bool is not a ratio")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} to an exact ratio")


@dataclass(frozen=True)
class CantorParams:
    alpha: Fraction
    eta_plus: Fraction = field(init=False)
    eta_minus: Fraction = field(init=False)

    def __post_init__(self):
        alpha = as_ratio(self.alpha)
        if not 0 < alpha < 1:
            raise DomainError(f"alpha must lie in (0, 1), got {alpha}")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "eta_plus", (1 + alpha) / 2)
        object.__setattr__(self, "eta_minus", (1 - alpha) / 2)

    def eta_minus_pow(self, n: int) -> Fraction:
        return _pow(self.eta_minus, n)

    def step(self, n: int) -> Fraction:
        """Size eta_plus * eta_minus**n of a move at scale n."""
        return self.eta_plus * _pow(self.eta_minus, n)


@lru_cache(maxsize=4096)
def _pow(base: Fraction, n: int) -> Fraction:
    return base**n


def params(alpha) -> CantorParams:
    """Shorthand constructor accepting anything :func:`as_ratio` accepts."""
    if isinstance(alpha, CantorParams):
        return alpha
    return CantorParams(as_ratio(alpha))


class Side(enum.Enum):
    LEFT = "L"
    RIGHT = "R"


@dataclass(frozen=True)
class EndpointAddress:
    """Left or right endpoint of the segment addressed by ``word``."""

    word: str
    side: Side

    def __post_init__(self):
        if self.word.strip("01"):
            raise DomainError(f"address word must be binary, got {self.word!r}")

    @property
    def depth(self) -> int:
        return len(self.word)

    def __str__(self):
        return f"{self.side.value}:{self.word}"

    @classmethod
    def parse(cls, text: str) -> "EndpointAddress":
        side, _, word = text.partition(":")
        try:
            return cls(word, Side(side))
        except ValueError as exc:
            raise DomainError(f"bad address {text!r}") from exc


def Left(word: str = "") -> EndpointAddress:
    return EndpointAddress(word, Side.LEFT)


def Right(word: str = "") -> EndpointAddress:
    return EndpointAddress(word, Side.RIGHT)


def segment_left(p: CantorParams, word: str) -> Fraction:
    total = Fraction(0)
    scale = Fraction(1)
    for digit in word:
        if digit == "1":
            total += p.eta_plus * scale
        scale *= p.eta_minus
    return total


def endpoint_value(p: CantorParams, addr: EndpointAddress) -> Fraction:
    left = segment_left(p, addr.word)
    if addr.side is Side.LEFT:
        return left
    return left + p.eta_minus_pow(addr.depth)


@dataclass(frozen=True)
class GapLocation:
    word: str
    left: Fraction
    right: Fraction

    @property
    def level(self) -> int:
        return len(self.word)


def gap(p: CantorParams, word: str) -> GapLocation:
    """The open gap O_word removed from segment A_word."""
    return GapLocation(
        word,
        endpoint_value(p, Right(word + "0")),
        endpoint_value(p, Left(word + "1")),
    )


@dataclass(frozen=True)
class Member:
    """``x`` is in C_alpha.

    ``address`` is set when x is a segment endpoint.  Otherwise ``periodic``
    is True and ``word`` is the address prefix read before the rescaled state
    repeated (an eventually periodic address proves membership).
    """

    word: str
    address: EndpointAddress | None = None
    periodic: bool = False


@dataclass(frozen=True)
class Gap:
    gap: GapLocation


@dataclass(frozen=True)
class DepthExceeded:
    word: str


LocateResult = Union[Member, Gap, DepthExceeded]


def locate(p: CantorParams, x, max_depth: int) -> LocateResult:
    """Find the gap containing ``x`` or prove that ``x`` lies in C_alpha.

    Descends the construction tree with the affine rescaling
    y -> y / eta_minus (left child) or (y - eta_plus) / eta_minus (right
    child).  A repeated rescaled state means the address is eventually
    periodic, hence ``x`` is a member.
    """
    x = as_ratio(x)
    if not 0 <= x <= 1:
        raise DomainError(f"x must lie in [0, 1], got {x}")
    if max_depth < 1:
        raise DomainError("max_depth must be positive")
    em, ep = p.eta_minus, p.eta_plus
    y = x
    word = ""
    seen = set()
    while True:
        if y == 0:
            return Member(word, Left(word))
        if y == 1:
            return Member(word, Right(word))
        if y == em:
            return Member(word, Right(word + "0"))
        if y == ep:
            return Member(word, Left(word + "1"))
        if em < y < ep:
            return Gap(gap(p, word))
        if y in seen:
            return Member(word, periodic=True)
        if len(word) >= max_depth:
            return DepthExceeded(word)
        seen.add(y)
        if y < em:
            word += "0"
            y = y / em
        else:
            word += "1"
            y = (y - ep) / em


def move_increase(p: CantorParams, addr: EndpointAddress):
    """Move a left endpoint up to the left end of its right child."""
    if addr.side is not Side.LEFT:
        raise DomainError("move_increase needs a Left address")
    return Left(addr.word + "1"), p.step(addr.depth)


def move_decrease(p: CantorParams, addr: EndpointAddress):
    """Move a right endpoint down to the right end of its left child."""
    if addr.side is not Side.RIGHT:
        raise DomainError("move_decrease needs a Right address")
    return Right(addr.word + "0"), p.step(addr.depth)


def deepen(addr: EndpointAddress, times: int = 1) -> EndpointAddress:
    # value-preserving child: left end stays left, right end stays right
    digit = "0" if addr.side is Side.LEFT else "1"
    return EndpointAddress(addr.word + digit * times, addr.side)


def shift(p: CantorParams, addr: EndpointAddress, scale: int):
    """Deepen ``addr`` to depth ``scale`` then apply the side's move.

    Returns the new address and the unsigned change of value,
    eta_plus * eta_minus**scale.
    """
    if scale < addr.depth:
        raise DomainError(f"cannot shift at scale {scale} from depth {addr.depth}")
    addr = deepen(addr, scale - addr.depth)
    if addr.side is Side.LEFT:
        return move_increase(p, addr)
    return move_decrease(p, addr)
