"""Interval arithmetic over rationals with directed rounding.

Endpoints are exact ``Fraction`` values.  Ring operations (+, -, *, /)
are exact; square roots, logarithms, and embedded constants round
outward to a 2^-prec grid, so every enclosure is sound by construction.
Widening the working precision can only shrink an enclosure, never move
a certified sign.

``prec`` counts fractional bits.  The default of 128 is far more than
any check in this package needs; callers that hit an indeterminate sign
double it (see ``certified_sign``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from typing import Callable, Union

__all__ = [
    "DEFAULT_PREC",
    "MAX_PREC",
    "Interval",
    "IndeterminateSignError",
    "sqrt_down",
    "sqrt_up",
    "ln_interval",
    "pi_squared",
    "certified_sign",
]

DEFAULT_PREC = 128
MAX_PREC = 1024

Rat = Union[Fraction, int]


class IndeterminateSignError(ArithmeticError):
    """An enclosure still straddles zero at the maximum working precision."""


def _round_down(x: Fraction, prec: int) -> Fraction:
    return Fraction((x.numerator << prec) // x.denominator, 1 << prec)

def _round_up(x: Fraction, prec: int) -> Fraction:
    return Fraction(-((-x.numerator << prec) // x.denominator), 1 << prec)


def sqrt_down(x: Fraction, prec: int = DEFAULT_PREC) -> Fraction:
    """Largest grid value not exceeding sqrt(x)."""
    if x < 0:
        raise ValueError("sqrt of a negative rational")
    n = (x.numerator << (2 * prec)) // x.denominator       # floor(x * 4^prec)
    return Fraction(isqrt(n), 1 << prec)

def sqrt_up(x: Fraction, prec: int = DEFAULT_PREC) -> Fraction:
    """Smallest grid value not below sqrt(x)."""
    if x < 0:
        raise ValueError("sqrt of a negative rational")
    n = -((-x.numerator << (2 * prec)) // x.denominator)   # ceil(x * 4^prec)
    s = isqrt(n)
    if s * s < n:
        s += 1
    return Fraction(s, 1 << prec)


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @staticmethod
    def point(x: Rat) -> "Interval":
        x = Fraction(x)
        return Interval(x, x)

    @staticmethod
    def of(lo: Rat, hi: Rat) -> "Interval":
        return Interval(Fraction(lo), Fraction(hi))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x: Rat) -> bool:
        return self.lo <= Fraction(x) <= self.hi

    # --- exact ring operations -------------------------------------

    def __add__(self, other) -> "Interval":
        o = _coerce(other)
        return Interval(self.lo + o.lo, self.hi + o.hi)

    __radd__ = __add__

    def __neg__(self) -> "Interval":
        return Interval(-self.hi, -self.lo)

    def __sub__(self, other) -> "Interval":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "Interval":
        return _coerce(other) + (-self)

    def __mul__(self, other) -> "Interval":
        o = _coerce(other)
        prods = (self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi)
        return Interval(min(prods), max(prods))

    __rmul__ = __mul__

    def inv(self) -> "Interval":
        if self.lo <= 0 <= self.hi:
            raise ZeroDivisionError(f"interval {self} contains zero")
        return Interval(1 / self.hi, 1 / self.lo)

    def __truediv__(self, other) -> "Interval":
        return self * _coerce(other).inv()

    def __rtruediv__(self, other) -> "Interval":
        return _coerce(other) * self.inv()

    # --- outward-rounded operations ----------------------------------

    def sqrt(self, prec: int = DEFAULT_PREC) -> "Interval":
        return Interval(sqrt_down(self.lo, prec), sqrt_up(self.hi, prec))

    def pow_3_2(self, prec: int = DEFAULT_PREC) -> "Interval":
        """x^{3/2} as sqrt(x^3); requires a non-negative interval."""
        return Interval(
            sqrt_down(self.lo ** 3, prec), sqrt_up(self.hi ** 3, prec)
        )

    def round_out(self, prec: int) -> "Interval":
        return Interval(_round_down(self.lo, prec), _round_up(self.hi, prec))

    # --- certified comparisons ---------------------------------------

    def strictly_positive(self) -> bool:
        return self.lo > 0

    def strictly_negative(self) -> bool:
        return self.hi < 0

    def certainly_lt(self, other) -> bool:
        return self.hi < _coerce(other).lo

    def certainly_gt(self, other) -> bool:
        return self.lo > _coerce(other).hi

    def __str__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def _coerce(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval.point(x)


# atanh series with a rigorous tail: for |t| < 1,
#   atanh(t) = sum_{k>=0} t^{2k+1}/(2k+1),
# and the remainder after the k=N term is bounded in absolute value by
#   |t|^{2N+3} / ((2N+3)(1 - t^2)).
def _atanh_enclosure(t: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    target = Fraction(1, 1 << (prec + 2))
    s = Fraction(0)
    tsq = t * t
    term = t
    k = 0
    while True:
        s += term / (2 * k + 1)
        term *= tsq
        k += 1
        bound = abs(term) / ((2 * k + 1) * (1 - tsq))
        if bound <= target:
            return s - bound, s + bound


_LN2_CACHE: dict[int, tuple[Fraction, Fraction]] = {}

def _ln2(prec: int) -> tuple[Fraction, Fraction]:
    if prec not in _LN2_CACHE:
        lo, hi = _atanh_enclosure(Fraction(1, 3), prec + 2)
        _LN2_CACHE[prec] = (2 * lo, 2 * hi)
    return _LN2_CACHE[prec]


def _ln_point(x: Fraction, prec: int) -> tuple[Fraction, Fraction]:
    if x <= 0:
        raise ValueError("log of a non-positive rational")
    e = 0
    while x > Fraction(4, 3):
        x /= 2
        e += 1
    while x < Fraction(2, 3):
        x *= 2
        e -= 1
    t = (x - 1) / (x + 1)                  # |t| <= 1/5 after reduction
    alo, ahi = _atanh_enclosure(t, prec + 2)
    l2lo, l2hi = _ln2(prec)
    if e >= 0:
        lo = 2 * alo + e * l2lo
        hi = 2 * ahi + e * l2hi
    else:
        lo = 2 * alo + e * l2hi
        hi = 2 * ahi + e * l2lo
    return _round_down(lo, prec), _round_up(hi, prec)


def ln_interval(x: Interval, prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure of the natural log (log is increasing, so endpoints map
    to endpoints)."""
    lo, _ = _ln_point(x.lo, prec)
    _, hi = _ln_point(x.hi, prec)
    return Interval(lo, hi)


# pi to 50 decimal places, truncated (digits are OEIS A000796); the
# upper endpoint adds one unit in the 50th place.  Squaring the bracket
# gives pi^2 to width under 1e-49.
_PI_LO = Fraction(314159265358979323846264338327950288419716939937510, 10**50)
_PI_HI = _PI_LO + Fraction(1, 10**50)
_PI_SQUARED = Interval(_PI_LO * _PI_LO, _PI_HI * _PI_HI)


def pi_squared() -> Interval:
    return _PI_SQUARED


def certified_sign(
    make: Callable[[int], Interval],
    prec: int = DEFAULT_PREC,
    max_prec: int = MAX_PREC,
) -> tuple[int, Interval]:
    """Evaluate ``make(prec)`` at doubling precision until the sign of
    the enclosure is determined.  Returns (sign, enclosure) with sign in
    {-1, +1}, or (0, enclosure) if the sign is still indeterminate at
    ``max_prec``."""
    while True:
        iv = make(prec)
        if iv.strictly_positive():
            return 1, iv
        if iv.strictly_negative():
            return -1, iv
        if prec >= max_prec:
            return 0, iv
        prec *= 2
