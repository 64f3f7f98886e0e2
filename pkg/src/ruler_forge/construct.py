"""Explicit ruler constructions.

Four families:

* interval-plus-tail rulers for small numbers of extra marks (b = 1..4),
  each meeting the general lower bound exactly;
* the hole-complement construction: punch a small linear-multiplicity
  ruler of holes into an interval to get an optimal g-Golomb ruler;
* the explicit floor sequence h_m = floor(C((m+2)^{3/2} - (m+2))), an
  infinite linear-multiplicity ruler for suitable C (default 7/4), with
  the floor decided purely in integer arithmetic;
* the greedy linear-multiplicity ruler (smallest next mark that keeps
  the multiplicity condition).
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

from .core import Ruler, is_lm_ruler

__all__ = [
    "DEFAULT_C",
    "OPTIMAL_LM_TABLE",
    "known_lm_diameter",
    "known_lm_witness",
    "small_b_ruler",
    "hole_complement_ruler",
    "default_holes",
    "explicit_lm_mark",
    "explicit_lm_prefix",
    "greedy_lm",
]

DEFAULT_C = Fraction(7, 4)

# Computationally verified minimum diameters of n-mark linear-multiplicity
# rulers, n = 1..18, with one optimal witness each.
OPTIMAL_LM_TABLE: dict[int, tuple[int, tuple[int, ...]]] = {
    1: (0, (0,)),
    2: (2, (0, 2)),
    3: (5, (0, 2, 5)),
    4: (8, (0, 2, 5, 8)),
    5: (12, (0, 2, 5, 8, 12)),
    6: (16, (0, 2, 5, 8, 12, 16)),
    7: (20, (0, 2, 5, 8, 12, 16, 20)),
    8: (25, (0, 2, 5, 8, 12, 16, 20, 25)),
    9: (30, (0, 2, 5, 8, 12, 16, 20, 25, 30)),
    10: (35, (0, 2, 5, 8, 12, 16, 20, 25, 30, 35)),
    11: (40, (0, 2, 6, 9, 12, 16, 20, 25, 30, 35, 40)),
    12: (46, (0, 2, 6, 9, 12, 16, 20, 25, 30, 35, 40, 46)),
    13: (52, (0, 2, 6, 9, 12, 16, 20, 25, 30, 35, 40, 46, 52)),
    14: (58, (0, 2, 6, 9, 12, 16, 20, 25, 30, 35, 40, 46, 52, 58)),
    15: (64, (0, 2, 6, 9, 13, 16, 20, 25, 30, 35, 40, 46, 52, 58, 64)),
    16: (70, (0, 2, 7, 10, 14, 17, 21, 25, 30, 35, 40, 46, 52, 58, 64, 70)),
    17: (77, (0, 2, 7, 10, 14, 17, 21, 25, 30, 35, 40, 46, 52, 58, 64, 70, 77)),
    18: (84, (0, 2, 7, 10, 14, 17, 21, 25, 30, 35, 40, 46, 52, 58, 64, 70, 77, 84)),
}


def known_lm_diameter(n: int) -> int | None:
    """Verified minimum diameter of an n-mark LM ruler, or None if n is
    beyond the table (n = 0 counts as diameter 0: no holes needed)."""
    if n == 0:
        return 0
    entry = OPTIMAL_LM_TABLE.get(n)
    return entry[0] if entry else None


def known_lm_witness(n: int) -> Ruler:
    return Ruler(OPTIMAL_LM_TABLE[n][1])


def small_b_ruler(g: int, b: int) -> Ruler:
    """Optimal g-Golomb ruler with g + b marks for b = 1..4.

    Shapes (diameter g + 2b - 2 in every case):
      b=1: [0, g]
      b=2: [0, g] + {g+2}
      b=3: [0, g-1] + {g+1, g+2} + {g+4}        (needs g >= 2)
      b=4: [0, g-2] + {g, g+1} + {g+3} + {g+5, g+6}   (needs g >= 4)
    """
    if b not in (1, 2, 3, 4):
        raise ValueError(f"small-b construction covers b in 1..4, got b={b}")
    if g < 1:
        raise ValueError(f"need g >= 1, got g={g}")
    if b == 3 and g < 2:
        raise ValueError(f"b=3 construction needs g >= 2, got g={g}")
    if b == 4 and g < 4:
        raise ValueError(f"b=4 construction needs g >= 4, got g={g}")
    if b == 1:
        marks = list(range(g + 1))
    elif b == 2:
        marks = list(range(g + 1)) + [g + 2]
    elif b == 3:
        if g == 2:
            # The published shape [0,1]+{3,4}+{6} realizes distance 3
            # three times at this boundary; this witness (verified by
            # exhaustive search) has the same size and diameter.
            marks = [0, 1, 3, 5, 6]
        else:
            marks = list(range(g)) + [g + 1, g + 2, g + 4]
    else:
        marks = list(range(g - 1)) + [g, g + 1, g + 3, g + 5, g + 6]
    return Ruler(marks)


def hole_complement_ruler(g: int, b: int, lm_holes: Ruler, offset: int = 0) -> Ruler:
    """g-Golomb ruler with g + b marks and diameter g + 2b - 2, built by
    removing a translated copy of ``lm_holes`` from the full interval.

    The holes must form a linear-multiplicity ruler with b - 1 marks and
    diameter at most g - 1, so that they fit strictly inside the span.
    ``offset`` shifts the holes right of their leftmost legal position
    (any placement inside [b, g+b-1] works; leftmost is the default).
    """
    if b < 2:
        raise ValueError(f"hole-complement construction needs b >= 2, got b={b}")
    if g < b - 1:
        raise ValueError(f"needs g >= b-1 = {b - 1}, got g={g}")
    if lm_holes.n != b - 1:
        raise ValueError(f"need exactly b-1 = {b - 1} holes, got {lm_holes.n}")
    if not is_lm_ruler(lm_holes):
        raise ValueError("holes must form a linear-multiplicity ruler")
    if lm_holes.diameter > g - 1:
        raise ValueError(
            f"holes span {lm_holes.diameter} but must fit in a window of"
            f" diameter g-1 = {g - 1}"
        )
    if offset < 0 or lm_holes.diameter + offset > g - 1:
        raise ValueError(f"offset {offset} pushes the holes outside [b, g+b-1]")
    start = b + offset
    hole_set = {h + start for h in lm_holes.marks}
    diam = g + 2 * b - 2
    return Ruler(x for x in range(diam + 1) if x not in hole_set)


def default_holes(b: int, c: Fraction = DEFAULT_C) -> Ruler:
    """Hole set for ``hole_complement_ruler``: the verified optimal
    witness when b - 1 is in the table, else the explicit prefix."""
    if b - 1 < 1:
        raise ValueError("no hole set needed for b < 2")
    if b - 1 in OPTIMAL_LM_TABLE:
        return known_lm_witness(b - 1)
    return explicit_lm_prefix(b - 1, c)


def explicit_lm_mark(m: int, c: Fraction = DEFAULT_C) -> int:
    """m-th mark of the explicit sequence: 0 for m = 0, otherwise the
    exact floor of C((m+2)^{3/2} - (m+2)).

    The floor is the largest integer t with (qt + pM)^2 <= p^2 M^3 where
    C = p/q and M = m + 2; decided entirely with integer arithmetic so
    that exact-integer boundary cases (e.g. M a perfect square) are
    handled correctly.  No floating point is involved.
    """
    if m < 0:
        raise ValueError(f"mark index must be >= 0, got {m}")
    if m == 0:
        return 0
    c = Fraction(c)
    if c <= 0:
        raise ValueError(f"constant must be positive, got {c}")
    p, q = c.numerator, c.denominator
    big_m = m + 2
    # floor(sqrt(p^2 M^3)) = floor(p M^{3/2}); integer floor-division
    # then commutes with subtracting the integer p*M and dividing by q.
    root = isqrt(p * p * big_m * big_m * big_m)
    return (root - p * big_m) // q


def explicit_lm_prefix(n: int, c: Fraction = DEFAULT_C) -> Ruler:
    """First n marks of the explicit sequence as a ruler."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    return Ruler(explicit_lm_mark(m, c) for m in range(n))


def greedy_lm(n: int) -> Ruler:
    """Greedy linear-multiplicity ruler: starting from 0, repeatedly
    append the smallest mark that keeps every distance d at or below
    d - 1 occurrences.  Deterministic; each output is a prefix of the
    next."""
    if n < 1:
        raise ValueError(f"need n >= 1, got {n}")
    marks = [0]
    counts: dict[int, int] = {}
    while len(marks) < n:
        c = marks[-1] + 1
        while True:
            ok = True
            for a in marks:
                d = c - a
                if counts.get(d, 0) + 1 > d - 1:
                    ok = False
                    break
            if ok:
                break
            c += 1
        for a in marks:
            d = c - a
            counts[d] = counts.get(d, 0) + 1
        marks.append(c)
    return Ruler(marks)
