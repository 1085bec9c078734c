"""Monotone maps with exact rational evaluation.

Every built-in map is a polynomial with rational coefficients, so images of
Cantor points stay exact.  Derivative bounds on a closed interval come from
evaluating phi' at the endpoints, which is valid only when phi' is monotone
there; general polynomials get that checked by exact real-root counting of
phi''.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cantor_model import as_ratio
from .errors import DomainError


def _horner(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _derivative(coeffs):
    return tuple(i * c for i, c in enumerate(coeffs))[1:] or (Fraction(0),)


@dataclass(frozen=True)
class PhiSpec:
    """phi(x) = sum_i coeffs[i] * x**i, required increasing where used."""

    coeffs: tuple
    label: str
    kind: str = "poly"

    def __call__(self, x: Fraction) -> Fraction:
        if self.kind == "power":
            return x ** (len(self.coeffs) - 1)
        return _horner(self.coeffs, x)

    eval = __call__

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def derivative(self, x: Fraction) -> Fraction:
        return _horner(_derivative(self.coeffs), x)

    def bounds(self, lo, hi):
        """(lower, upper) bounds of phi' on [lo, hi], lower > 0.

        Raises DomainError if phi' is not monotone on the interval or not
        strictly positive there.
        """
        lo, hi = as_ratio(lo), as_ratio(hi)
        if self.kind not in ("power", "affine") and not _monotone_derivative(self.coeffs, lo, hi):
            raise DomainError(f"{self.label}: derivative is not monotone on [{lo}, {hi}]")
        d_lo, d_hi = self.derivative(lo), self.derivative(hi)
        g_lo, g_hi = min(d_lo, d_hi), max(d_lo, d_hi)
        if g_lo <= 0:
            raise DomainError(f"{self.label}: not strictly increasing on [{lo}, {hi}]")
        return g_lo, g_hi

    def __str__(self):
        return self.label


def _monotone_derivative(coeffs, lo, hi) -> bool:
    """True when phi'' has no sign change strictly inside (lo, hi)."""
    second = _derivative(_derivative(coeffs))
    if all(c == 0 for c in second):
        return True
    import sympy

    x = sympy.Symbol("x")
    poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(second)], x)
    a = sympy.Rational(lo.numerator, lo.denominator)
    b = sympy.Rational(hi.numerator, hi.denominator)
    # only factors of odd multiplicity change sign
    for factor, mult in poly.sqf_list()[1]:
        if mult % 2 == 0:
            continue
        inside = factor.count_roots(a, b)
        inside -= sum(1 for end in (a, b) if factor.eval(end) == 0)
        if inside > 0:
            return False
    return True


def phi_power(m: int) -> PhiSpec:
    if m < 1:
        raise DomainError("power must be a positive integer")
    coeffs = (Fraction(0),) * m + (Fraction(1),)
    return PhiSpec(coeffs, f"power:{m}", "power")


def phi_affine(a, b=0) -> PhiSpec:
    a, b = as_ratio(a), as_ratio(b)
    if a <= 0:
        raise DomainError("affine slope must be positive")
    return PhiSpec((b, a), f"affine:{a},{b}", "affine")


def phi_poly(coeffs) -> PhiSpec:
    coeffs = tuple(as_ratio(c) for c in coeffs)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs = coeffs[:-1]
    if len(coeffs) < 2:
        raise DomainError("constant polynomial is not monotone")
    return PhiSpec(coeffs, "poly:" + ",".join(str(c) for c in coeffs))


def parse_phi(text: str) -> PhiSpec:
    """Parse ``power:m``, ``affine:a,b`` or ``poly:c0,c1,...``."""
    kind, _, rest = text.partition(":")
    args = [a for a in rest.split(",") if a.strip()]
    try:
        if kind == "power" and len(args) == 1:
            return phi_power(int(args[0]))
        if kind == "affine" and len(args) in (1, 2):
            return phi_affine(*args)
        if kind == "poly" and args:
            return phi_poly(args)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"bad phi spec {text!r}: {exc}") from exc
    raise DomainError(f"bad phi spec {text!r}")
