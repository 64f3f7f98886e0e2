"""Closed-form diameter bounds and the window machinery for the
explicit floor sequence.

The window function W_k(x) = phi(x+k) - phi(x), with
phi(x) = C((x+2)^{3/2} - (x+2)), localizes which indices m can produce a
pair of sequence elements at a given distance d: any pair (h_m, h_{m+k})
at distance d has W_k(m) inside the open interval (d-1, d+1).  The gap
cutoff K(d) is the point beyond which no gap size k can contribute, and
the tail bound B(d) turns per-gap window counts into a closed-form upper
bound on the representation count whose slack (d-1) - B(d) certifies the
linear-multiplicity property for all large d.

All real-valued quantities are certified rational enclosures built on
:mod:`ruler_forge.intervals`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .intervals import (
    DEFAULT_PREC,
    MAX_PREC,
    IndeterminateSignError,
    Interval,
    certified_sign,
    ln_interval,
    pi_squared,
)

__all__ = [
    "golomb_lower_bound",
    "lm_lower_bound",
    "sorted_gap_floor",
    "gap_sum_bound",
    "window_value",
    "window_tilde",
    "gap_cutoff",
    "window_count_bound",
    "tail_bound",
    "tail_slack",
    "beta_coefficient",
    "WindowModel",
]


def golomb_lower_bound(g: int, b: int) -> int:
    """Diameter lower bound g + 2b - 2 for a g-Golomb ruler with g + b
    marks (counting unit distances destroyed by holes)."""
    if g < 1 or b < 1:
        raise ValueError("need g >= 1 and b >= 1")
    return g + 2 * b - 2


def lm_lower_bound(n: int) -> int:
    """Exact integer ceiling of (2*sqrt(2)/3)(n-1)^{3/2}, a diameter
    lower bound for n-mark linear-multiplicity rulers.

    Computed as the least t with 9 t^2 >= 8 (n-1)^3; no floating point.
    """
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    x = 8 * (n - 1) ** 3
    t = isqrt(x) // 3
    while 9 * t * t < x:
        t += 1
    return t


def sorted_gap_floor(i: int) -> int:
    """Least integer strictly above sqrt(2i).  In any linear-multiplicity
    ruler the i-th smallest first-difference is at least this value."""
    if i < 1:
        raise ValueError(f"need i >= 1, got {i}")
    return isqrt(2 * i) + 1


def gap_sum_bound(n: int) -> int:
    """Sum of the n-1 sorted-gap floors: a diameter lower bound for
    n-mark linear-multiplicity rulers."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return sum(sorted_gap_floor(i) for i in range(1, n))


# --- window machinery ---------------------------------------------------


def _phi(x: Fraction, c: Fraction, prec: int) -> Interval:
    base = Interval.point(x + 2)
    return Interval.point(c) * (base.pow_3_2(prec) - base)


def window_tilde(k: int, x, c=Fraction(7, 4), prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure of C((x+k+2)^{3/2} - (x+2)^{3/2})."""
    x = Fraction(x)
    c = Fraction(c)
    hi = Interval.point(x + k + 2).pow_3_2(prec)
    lo = Interval.point(x + 2).pow_3_2(prec)
    return Interval.point(c) * (hi - lo)


def window_value(k: int, x, c=Fraction(7, 4), prec: int = DEFAULT_PREC) -> Interval:
    """Enclosure of the window function W_k(x) = phi(x+k) - phi(x)."""
    if k < 1:
        raise ValueError(f"need k >= 1, got {k}")
    x = Fraction(x)
    if x < 1:
        raise ValueError(f"window function is defined for x >= 1, got {x}")
    c = Fraction(c)
    return window_tilde(k, x, c, prec) - Interval.point(c * k)


def _cutoff_curve(x: Fraction, c: Fraction, prec: int) -> Interval:
    # C((x+3)^{3/2} - 3^{3/2} - x), the minimum of W_x over integer
    # arguments >= 1; strictly increasing in x.
    three32 = Interval.point(Fraction(27)).sqrt(prec)
    return Interval.point(c) * (
        Interval.point(x + 3).pow_3_2(prec) - three32 - Interval.point(x)
    )


def _certified_cmp(x: Fraction, target: Fraction, c: Fraction, prec: int) -> int:
    """Sign of cutoff_curve(x) - target, escalating precision as needed."""
    sign, iv = certified_sign(
        lambda pr: _cutoff_curve(x, c, pr) - target, prec, MAX_PREC
    )
    if sign == 0:
        raise IndeterminateSignError(
            f"cannot separate cutoff curve at x={x} from {target}"
        )
    return sign


def gap_cutoff(
    d: int,
    c=Fraction(7, 4),
    prec: int = DEFAULT_PREC,
    width: Fraction | None = None,
    max_iter: int = 60,
) -> Interval:
    """Enclosure of the unique positive K with
    C((K+3)^{3/2} - 3^{3/2} - K) = d + 1.

    Bisection only: the curve is strictly increasing, so the bracket
    invariant curve(lo) < d+1 < curve(hi) is maintained with certified
    comparisons at every step.  Gap sizes above floor(K) contribute no
    pairs at distance d, and overshooting the cutoff is harmless.

    The default width target tightens with the working precision (never
    looser than 2^-20) so that retrying a sign check at higher precision
    actually narrows downstream enclosures; the iteration cap keeps the
    worst case bounded either way.
    """
    if d < 1:
        raise ValueError(f"need d >= 1, got {d}")
    c = Fraction(c)
    if c <= 0:
        raise ValueError(f"constant must be positive, got {c}")
    if width is None:
        width = Fraction(1, 1 << min(48, max(20, prec // 3)))
    target = Fraction(d + 1)
    lo = Fraction(0)  # curve(0) = 0 < d+1
    hi = Fraction(1)
    while _certified_cmp(hi, target, c, prec) < 0:
        lo = hi
        hi *= 2
    it = 0
    while hi - lo > width and it < max_iter:
        mid = (lo + hi) / 2
        if _certified_cmp(mid, target, c, prec) < 0:
            lo = mid
        else:
            hi = mid
        it += 1
    return Interval(lo, hi)


def window_count_bound(k: int, d: int, c=Fraction(7, 4)) -> Interval:
    """Exact rational upper bound 16(d+1)/(9 C^2 k^2) + 16/(9 C k) + 1 on
    the number of integers whose window value falls in (d-1, d+1)."""
    if k < 1 or d < 1:
        raise ValueError("need k >= 1 and d >= 1")
    c = Fraction(c)
    val = (
        Fraction(16 * (d + 1), 1) / (9 * c * c * k * k)
        + Fraction(16, 1) / (9 * c * k)
        + 1
    )
    return Interval.point(val)


def beta_coefficient(c=Fraction(7, 4)) -> Interval:
    """Linear coefficient 8 pi^2 / (27 C^2) of the tail bound.  The
    explicit sequence only has slack for large d when this is below 1."""
    c = Fraction(c)
    return pi_squared() * Fraction(8, 27) / (c * c)


def tail_bound(
    d: int, c=Fraction(7, 4), prec: int = DEFAULT_PREC, cutoff: Interval | None = None
) -> Interval:
    """Enclosure of B(d) = 8 pi^2 (d+1)/(27 C^2) + 16(1+ln K)/(9 C) + K,
    the closed-form bound with r(d) < 1 + B(d)."""
    c = Fraction(c)
    k = cutoff if cutoff is not None else gap_cutoff(d, c, prec)
    lnk = ln_interval(k, prec)
    linear = beta_coefficient(c) * (d + 1)
    log_term = (Interval.point(1) + lnk) * Fraction(16, 1) / (9 * c)
    return linear + log_term + k


def tail_slack(
    d: int, c=Fraction(7, 4), prec: int = DEFAULT_PREC, cutoff: Interval | None = None
) -> Interval:
    """Enclosure of (d-1) - B(d).  A certified positive sign proves the
    representation count at distance d is at most d - 1; if the
    enclosure straddles zero the caller should retry at higher
    precision rather than trust either sign."""
    return Interval.point(d - 1) - tail_bound(d, c, prec, cutoff=cutoff)


@dataclass(frozen=True)
class WindowModel:
    """Analytic quantities for one distance d: the gap cutoff K(d), the
    tail bound B(d), its slack, and the linear coefficient beta."""

    c: Fraction
    d: int
    cutoff: Interval
    bound: Interval
    slack: Interval
    beta: Interval

    @staticmethod
    def build(d: int, c=Fraction(7, 4), prec: int = DEFAULT_PREC) -> "WindowModel":
        c = Fraction(c)
        cutoff = gap_cutoff(d, c, prec)
        bound = tail_bound(d, c, prec, cutoff=cutoff)
        slack = Interval.point(d - 1) - bound
        return WindowModel(
            c=c, d=d, cutoff=cutoff, bound=bound, slack=slack,
            beta=beta_coefficient(c),
        )
