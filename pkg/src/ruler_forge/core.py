"""Ruler values, difference profiles, and the two defining predicates.

A ruler is a finite strictly increasing sequence of integer marks,
normalized so the smallest mark is 0.  Everything downstream (search,
constructions, certification) goes through the exact pair counting done
here: no hashing, no floats, one count per positive distance.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator

MAX_MARKS = 10**6

__all__ = [
    "MAX_MARKS",
    "Ruler",
    "DifferenceProfile",
    "HoleSet",
    "diff_profile",
    "is_g_golomb",
    "is_lm_ruler",
    "max_multiplicity",
    "holes",
    "parse_ruler",
    "format_ruler",
]


@dataclass(frozen=True)
class Ruler:
    """Normalized set of marks: strictly increasing, first mark 0."""

    marks: tuple[int, ...]

    def __init__(self, marks: Iterable[int]):
        seq = sorted(int(m) for m in marks)
        if not seq:
            raise ValueError("a ruler needs at least one mark")
        if len(seq) > MAX_MARKS:
            raise ValueError(f"too many marks ({len(seq)} > {MAX_MARKS})")
        for a, b in zip(seq, seq[1:]):
            if a == b:
                raise ValueError(f"duplicate mark {a}")
        base = seq[0]
        if base != 0:
            seq = [m - base for m in seq]
        object.__setattr__(self, "marks", tuple(seq))

    @property
    def n(self) -> int:
        return len(self.marks)

    @property
    def diameter(self) -> int:
        return self.marks[-1]

    def translate(self, t: int) -> "Ruler":
        """Translation normalizes back to start at 0, so this is identity."""
        return Ruler(m + t for m in self.marks)

    def reflect(self) -> "Ruler":
        """Mirror each mark a to diameter - a."""
        d = self.diameter
        return Ruler(d - m for m in self.marks)

    def __iter__(self) -> Iterator[int]:
        return iter(self.marks)

    def __len__(self) -> int:
        return len(self.marks)

    def __str__(self) -> str:
        return format_ruler(self)


@dataclass(frozen=True)
class DifferenceProfile:
    """Exact map distance -> number of mark pairs at that distance.

    Only realized distances are stored; counts for all other distances
    are 0.  The total over all distances is n(n-1)/2.
    """

    counts: dict[int, int]
    n: int

    def count(self, d: int) -> int:
        return self.counts.get(d, 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    @property
    def max_multiplicity(self) -> int:
        return max(self.counts.values()) if self.counts else 0


@dataclass(frozen=True)
class HoleSet:
    """Integers strictly inside the span that are not marks."""

    holes: tuple[int, ...]
    lo: int
    hi: int


def diff_profile(r: Ruler) -> DifferenceProfile:
    """Count every pair of distinct marks at each positive distance."""
    marks = r.marks
    counts: dict[int, int] = {}
    for i, a in enumerate(marks):
        for b in marks[i + 1 :]:
            d = b - a
            counts[d] = counts.get(d, 0) + 1
    return DifferenceProfile(counts=counts, n=len(marks))


def _max_count_over_limit(marks: tuple[int, ...], limit_of) -> bool:
    # List-indexed counting; returns True at the first distance whose
    # count exceeds its limit.  Faster than building the dict profile
    # for large rulers, used by both predicates.
    if len(marks) < 2:
        return False
    counts = [0] * (marks[-1] + 1)
    for i, a in enumerate(marks):
        for b in marks[i + 1 :]:
            d = b - a
            c = counts[d] + 1
            if c > limit_of(d):
                return True
            counts[d] = c
    return False


def is_g_golomb(r: Ruler, g: int) -> bool:
    """True iff no distance is realized by more than g mark pairs."""
    if g < 1:
        raise ValueError(f"multiplicity bound must be >= 1, got {g}")
    return not _max_count_over_limit(r.marks, lambda d: g)


def is_lm_ruler(r: Ruler) -> bool:
    """True iff each distance d is realized by at most d - 1 pairs."""
    return not _max_count_over_limit(r.marks, lambda d: d - 1)


def max_multiplicity(r: Ruler) -> int:
    """Largest pair count over all distances; the smallest g for which
    the ruler is a g-Golomb ruler.  0 for a single mark."""
    marks = r.marks
    if len(marks) < 2:
        return 0
    counts = [0] * (marks[-1] + 1)
    best = 0
    for i, a in enumerate(marks):
        for b in marks[i + 1 :]:
            d = b - a
            c = counts[d] + 1
            counts[d] = c
            if c > best:
                best = c
    return best


def holes(r: Ruler) -> HoleSet:
    """Exact complement of the marks inside [0, diameter]."""
    present = set(r.marks)
    hs = tuple(x for x in range(r.diameter + 1) if x not in present)
    return HoleSet(holes=hs, lo=0, hi=r.diameter)


def parse_ruler(text: str) -> Ruler:
    """Parse comma-separated marks, optionally wrapped in brackets.

    Marks must already be in increasing order; raises ValueError on
    anything else (including decimal points).
    """
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1]
    if s.startswith("{") and s.endswith("}"):
        s = s[1:-1]
    parts = [p.strip() for p in s.split(",")] if s.strip() else []
    if not parts or any(p == "" for p in parts):
        raise ValueError(f"cannot parse ruler from {text!r}")
    try:
        vals = [int(p, 10) for p in parts]
    except ValueError:
        raise ValueError(f"ruler marks must be integers: {text!r}") from None
    for a, b in zip(vals, vals[1:]):
        if b <= a:
            raise ValueError(f"marks must be strictly increasing: {text!r}")
    return Ruler(vals)


def format_ruler(r: Ruler) -> str:
    return "[" + ", ".join(str(m) for m in r.marks) + "]"
