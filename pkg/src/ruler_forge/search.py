"""Exact minimum-diameter search for g-Golomb and linear-multiplicity
rulers.

The decision procedure fixes the endpoints 0 and D and places interior
marks left to right, smallest candidate first, keeping an incremental
table of distance counts.  A branch dies the moment any distance count
passes its cap (g for the Golomb kind, d-1 for the LM kind).  Reflection
symmetry is broken by requiring first gap <= last gap, which preserves
the lexicographically smallest ruler of each mirror pair, so the first
complete ruler found depth-first is the canonical witness.

Two extra pruning devices, both plain counting arguments:

* saturated distances block positions: once a distance d is at its cap,
  any position at distance d from a placed mark is dead, tracked as a
  bitmask;
* remaining-gap floors: the gaps still to be placed are first
  differences, so a value v can appear among them at most cap(v) minus
  its current count times; the cheapest legal multiset of r such values
  lower-bounds the remaining span.

`min_diameter` walks D upward from the best lower bound until the
decision procedure succeeds; every smaller D has then been refuted, so
the result is proven optimal.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb
from typing import Optional

from .bounds import gap_sum_bound, golomb_lower_bound, lm_lower_bound
from .construct import (
    OPTIMAL_LM_TABLE,
    default_holes,
    greedy_lm,
    hole_complement_ruler,
    known_lm_diameter,
    known_lm_witness,
    small_b_ruler,
)
from .core import Ruler, is_g_golomb, is_lm_ruler

__all__ = [
    "SearchProblem",
    "SearchStats",
    "SearchResult",
    "BudgetExhaustedError",
    "feasible_at_diameter",
    "min_diameter",
    "brute_force_oracle",
    "table_sweep",
    "TableDocument",
]

ORACLE_GUARD = 10**7


class BudgetExhaustedError(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"search budget exhausted after {nodes} nodes")
        self.nodes = nodes


@dataclass(frozen=True)
class SearchProblem:
    """What to search: kind is "golomb" (with multiplicity bound g) or
    "lm"; n is the number of marks.  Budgets are per feasibility call in
    serial runs and per subtree in parallel runs."""

    kind: str
    n: int
    g: Optional[int] = None
    max_nodes: int = 10**9
    max_seconds: float = 600.0
    diameter_start: Optional[int] = None

    def __post_init__(self):
        if self.kind not in ("golomb", "lm"):
            raise ValueError(f"kind must be 'golomb' or 'lm', got {self.kind!r}")
        if self.n < 1:
            raise ValueError(f"need n >= 1, got {self.n}")
        if self.kind == "golomb":
            if self.g is None or self.g < 1:
                raise ValueError("golomb kind needs g >= 1")
        elif self.g is not None:
            raise ValueError("lm kind takes no g")

    def predicate(self, r: Ruler) -> bool:
        if self.kind == "golomb":
            return is_g_golomb(r, self.g)
        return is_lm_ruler(r)


@dataclass
class SearchStats:
    nodes: int = 0
    elapsed_ms: int = 0
    deepest_level: int = 0
    start_bound: int = 0
    levels_refuted: int = 0


@dataclass(frozen=True)
class SearchResult:
    problem: SearchProblem
    min_diameter: Optional[int]
    witness: Optional[Ruler]
    status: str  # proven_optimal | budget_exhausted_with_incumbent | infeasible_below_budget
    stats: SearchStats

    def to_json_dict(self) -> dict:
        doc = {
            "kind": self.problem.kind,
            "n": self.problem.n,
            "min_diameter": self.min_diameter,
            "witness": list(self.witness.marks) if self.witness else None,
            "status": self.status,
            "nodes": self.stats.nodes,
            "elapsed_ms": self.stats.elapsed_ms,
        }
        if self.problem.kind == "golomb":
            doc["g"] = self.problem.g
        return doc


def _caps_for(problem: SearchProblem, diam: int) -> list[int]:
    if problem.kind == "golomb":
        return [problem.g] * (diam + 1)
    return [max(0, d - 1) for d in range(diam + 1)]


class _Budget:
    __slots__ = ("max_nodes", "deadline", "nodes")

    def __init__(self, max_nodes: int, max_seconds: float):
        self.max_nodes = max_nodes
        self.deadline = time.monotonic() + max_seconds
        self.nodes = 0

    def spend(self):
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExhaustedError(self.nodes)
        if not (self.nodes & 0x3FF) and time.monotonic() > self.deadline:
            raise BudgetExhaustedError(self.nodes)


def _search_marks(
    n: int,
    diam: int,
    caps: list[int],
    budget: _Budget,
    first_gap_only: Optional[int] = None,
    stats: Optional[SearchStats] = None,
) -> Optional[list[int]]:
    """Lexicographically smallest feasible mark list with endpoints 0 and
    diam, or None.  ``first_gap_only`` restricts the first interior mark
    (used to partition the tree across workers)."""
    if n == 1:
        return [0] if diam == 0 else None
    counts = [0] * (diam + 1)
    if diam < 1 or caps[diam] < 1:
        return None
    counts[diam] = 1
    full_mask = (1 << (diam + 1)) - 1
    sat: list[int] = [d for d in range(1, diam + 1) if caps[d] == 0]
    if caps[diam] == 1:
        sat.append(diam)
    forb0 = 0
    base_pos = 1 | (1 << diam)
    for d in sat:
        forb0 |= ((base_pos << d) | (base_pos >> d)) & full_mask
    if n == 2:
        return [0, diam]

    def span_floors(r: int) -> Optional[list[int]]:
        # prefix sums of the cheapest r legal remaining gap values
        out = [0]
        v = 1
        need = r
        total = 0
        while need > 0:
            if v > diam:
                return None
            take = caps[v] - counts[v]
            if take > 0:
                if take > need:
                    take = need
                for _ in range(take):
                    total += v
                    out.append(total)
                need -= take
            v += 1
        return out

    deepest = 0

    def dfs(marks: list[int], last: int, left: int, forb: int, pos: int, first_gap: int) -> Optional[list[int]]:
        nonlocal deepest
        floors = span_floors(left)
        if floors is None:
            return None
        hi = diam - floors[left]
        if first_gap:
            hi = min(hi, diam - first_gap - floors[left - 1])
        else:
            hi = min(hi, diam // 2)
        c = last + 1
        while c <= hi:
            if (forb >> c) & 1:
                c += 1
                continue
            ds = [c - m if m < c else m - c for m in marks]
            ok = True
            done = 0
            for d in ds:
                counts[d] += 1
                done += 1
                if counts[d] > caps[d]:
                    ok = False
                    break
            if not ok:
                for d in ds[:done]:
                    counts[d] -= 1
                c += 1
                continue
            budget.spend()
            depth = len(marks) - 1
            if depth > deepest:
                deepest = depth
            if left == 1:
                result = marks + [c]
                for d in ds:
                    counts[d] -= 1
                if stats is not None:
                    stats.deepest_level = max(stats.deepest_level, deepest)
                return result
            sat_len = len(sat)
            new_forb = forb
            new_pos = pos | (1 << c)
            for d in ds:
                if counts[d] == caps[d]:
                    sat.append(d)
                    new_forb |= ((new_pos << d) | (new_pos >> d)) & full_mask
            for i in range(sat_len):
                d = sat[i]
                t = c + d
                if t <= diam:
                    new_forb |= 1 << t
                if c >= d:
                    new_forb |= 1 << (c - d)
            marks.append(c)
            found = dfs(marks, c, left - 1, new_forb, new_pos, first_gap or c)
            if found is not None:
                return found
            marks.pop()
            del sat[sat_len:]
            for d in ds:
                counts[d] -= 1
            c += 1
        return None

    if first_gap_only is not None:
        m1 = first_gap_only
        if m1 < 1 or m1 > diam // 2 or (forb0 >> m1) & 1:
            return None
        ds = [m1, diam - m1]
        done = 0
        for d in ds:
            counts[d] += 1
            done += 1
            if counts[d] > caps[d]:
                for dd in ds[:done]:
                    counts[dd] -= 1
                return None
        budget.spend()
        if n == 3:
            res = [0, diam, m1]
        else:
            sat_len = len(sat)
            new_forb = forb0
            new_pos = base_pos | (1 << m1)
            for d in ds:
                if counts[d] == caps[d]:
                    sat.append(d)
                    new_forb |= ((new_pos << d) | (new_pos >> d)) & full_mask
            for i in range(sat_len):
                d = sat[i]
                if m1 + d <= diam:
                    new_forb |= 1 << (m1 + d)
                if m1 >= d:
                    new_forb |= 1 << (m1 - d)
            res = dfs([0, diam, m1], m1, n - 3, new_forb, new_pos, m1)
        if stats is not None:
            stats.deepest_level = max(stats.deepest_level, deepest)
        return res

    res = dfs([0, diam], 0, n - 2, forb0, base_pos, 0)
    if stats is not None:
        stats.deepest_level = max(stats.deepest_level, deepest)
    return res


def _feasible_task(args) -> tuple[int, Optional[list[int]], int, bool]:
    kind, g, n, diam, m1, max_nodes, max_seconds = args
    problem = SearchProblem(kind=kind, n=n, g=g, max_nodes=max_nodes, max_seconds=max_seconds)
    caps = _caps_for(problem, diam)
    budget = _Budget(max_nodes, max_seconds)
    try:
        marks = _search_marks(n, diam, caps, budget, first_gap_only=m1)
    except BudgetExhaustedError as e:
        return m1, None, e.nodes, True
    return m1, marks, budget.nodes, False


def feasible_at_diameter(
    problem: SearchProblem,
    diam: int,
    threads: int = 1,
    stats: Optional[SearchStats] = None,
) -> Optional[Ruler]:
    """Lexicographically smallest ruler of the problem's kind with
    min 0 and max exactly ``diam``, or None if there is none.  Budget
    exhaustion raises BudgetExhaustedError, distinct from infeasibility.
    """
    if diam < 0:
        raise ValueError(f"need diameter >= 0, got {diam}")
    caps = _caps_for(problem, diam)
    if stats is None:
        stats = SearchStats()
    if threads > 1 and problem.n > 3 and diam >= 8:
        tasks = [
            (problem.kind, problem.g, problem.n, diam, m1,
             problem.max_nodes, problem.max_seconds)
            for m1 in range(1, diam // 2 + 1)
        ]
        results = {}
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for m1, marks, nodes, exhausted in pool.map(_feasible_task, tasks):
                results[m1] = (marks, nodes, exhausted)
        witness = None
        for m1 in sorted(results):
            marks, nodes, exhausted = results[m1]
            stats.nodes += nodes
            if witness is None and exhausted:
                raise BudgetExhaustedError(stats.nodes)
            if witness is None and marks is not None:
                witness = marks
        return Ruler(witness) if witness is not None else None
    budget = _Budget(problem.max_nodes, problem.max_seconds)
    try:
        marks = _search_marks(problem.n, diam, caps, budget, stats=stats)
    finally:
        stats.nodes += budget.nodes
    return Ruler(marks) if marks is not None else None


def _greedy_golomb(g: int, n: int) -> Ruler:
    """First-fit g-Golomb ruler: cheap feasible upper bound."""
    marks = [0]
    counts: dict[int, int] = {}
    while len(marks) < n:
        c = marks[-1] + 1
        while True:
            if all(counts.get(c - a, 0) + 1 <= g for a in marks):
                break
            c += 1
        for a in marks:
            d = c - a
            counts[d] = counts.get(d, 0) + 1
        marks.append(c)
    return Ruler(marks)


def _incumbent(problem: SearchProblem) -> Ruler:
    """Constructive feasible ruler used as an upper bound and fallback
    witness when the budget runs out."""
    n = problem.n
    if problem.kind == "lm":
        best = greedy_lm(n)
        if n in OPTIMAL_LM_TABLE:
            table = known_lm_witness(n)
            if table.diameter < best.diameter:
                best = table
        return best
    g = problem.g
    if n <= g + 1:
        return Ruler(range(n))
    b = n - g
    candidates = [_greedy_golomb(g, n)]
    if b <= 4 and (b <= 2 or (b == 3 and g >= 2) or (b == 4 and g >= 4)):
        candidates.append(small_b_ruler(g, b))
    else:
        lb_diam = known_lm_diameter(b - 1)
        if lb_diam is not None and g >= lb_diam + 1 and b >= 2:
            candidates.append(hole_complement_ruler(g, b, default_holes(b)))
    return min(candidates, key=lambda r: r.diameter)


def _pair_capacity_bound(problem: SearchProblem) -> int:
    """Smallest D whose distance capacity can hold all n(n-1)/2 pairs."""
    pairs = problem.n * (problem.n - 1) // 2
    if problem.kind == "golomb":
        return -(-pairs // problem.g)
    d = 1
    while d * (d - 1) // 2 < pairs:
        d += 1
    return d


def _gap_floor_bound(problem: SearchProblem) -> int:
    """Cheapest legal multiset of n-1 first differences (value v can
    repeat at most cap(v) times), summed."""
    need = problem.n - 1
    total = 0
    v = 1
    while need > 0:
        cap = problem.g if problem.kind == "golomb" else v - 1
        take = min(cap, need)
        total += v * take
        need -= take
        v += 1
    return total


def start_bound(problem: SearchProblem) -> int:
    """Best lower bound to start the deepening loop from."""
    n = problem.n
    if n == 1:
        return 0
    bounds = [n - 1, _pair_capacity_bound(problem), _gap_floor_bound(problem)]
    if problem.kind == "golomb":
        if n > problem.g:
            bounds.append(golomb_lower_bound(problem.g, n - problem.g))
    else:
        bounds.append(lm_lower_bound(n))
        bounds.append(gap_sum_bound(n))
    return max(bounds)


def min_diameter(problem: SearchProblem, threads: int = 1) -> SearchResult:
    """Minimum diameter by iterative deepening from the start bound.

    The result is proven optimal when every diameter below the found one
    has been refuted (analytically below the start bound, exhaustively
    from there up).  On budget exhaustion the constructive incumbent is
    reported instead, with the refuted range in the stats.
    """
    t0 = time.monotonic()
    stats = SearchStats()
    lower = problem.diameter_start if problem.diameter_start is not None else start_bound(problem)
    stats.start_bound = lower
    incumbent = _incumbent(problem)
    for diam in range(lower, incumbent.diameter + 1):
        try:
            witness = feasible_at_diameter(problem, diam, threads=threads, stats=stats)
        except BudgetExhaustedError:
            stats.elapsed_ms = int((time.monotonic() - t0) * 1000)
            stats.levels_refuted = diam - lower
            return SearchResult(
                problem=problem,
                min_diameter=incumbent.diameter,
                witness=incumbent,
                status="budget_exhausted_with_incumbent",
                stats=stats,
            )
        if witness is not None:
            stats.elapsed_ms = int((time.monotonic() - t0) * 1000)
            stats.levels_refuted = diam - lower
            return SearchResult(
                problem=problem,
                min_diameter=diam,
                witness=witness,
                status="proven_optimal",
                stats=stats,
            )
    # unreachable: the incumbent guarantees feasibility at its diameter
    stats.elapsed_ms = int((time.monotonic() - t0) * 1000)
    return SearchResult(
        problem=problem,
        min_diameter=None,
        witness=None,
        status="infeasible_below_budget",
        stats=stats,
    )


def brute_force_oracle(problem: SearchProblem, d_cap: int) -> SearchResult:
    """Exhaustive reference: every n-subset of [0, D] for D up to d_cap,
    no pruning beyond the predicate.  Guarded to combinatorially tiny
    instances."""
    from itertools import combinations

    n = problem.n
    if comb(d_cap + 1, n) > ORACLE_GUARD:
        raise ValueError(
            f"oracle instance too large: C({d_cap + 1},{n}) > {ORACLE_GUARD}"
        )
    t0 = time.monotonic()
    stats = SearchStats()
    for diam in range(0 if n == 1 else n - 1, d_cap + 1):
        for combo in combinations(range(diam + 1), n):
            if combo[0] != 0 or combo[-1] != diam:
                continue
            stats.nodes += 1
            r = Ruler(combo)
            if problem.predicate(r):
                stats.elapsed_ms = int((time.monotonic() - t0) * 1000)
                return SearchResult(
                    problem=problem,
                    min_diameter=diam,
                    witness=r,
                    status="proven_optimal",
                    stats=stats,
                )
    stats.elapsed_ms = int((time.monotonic() - t0) * 1000)
    return SearchResult(
        problem=problem,
        min_diameter=None,
        witness=None,
        status="infeasible_below_budget",
        stats=stats,
    )


@dataclass(frozen=True)
class TableDocument:
    kind: str
    rows: tuple[int, ...]          # g values, or n values for lm
    cols: tuple[int, ...]          # b values; empty for lm
    cells: dict                    # (g, b) -> SearchResult, or n -> SearchResult

    def _cell_text(self, res: SearchResult) -> str:
        if res.status == "proven_optimal":
            return str(res.min_diameter)
        if res.status == "budget_exhausted_with_incumbent":
            return f"<={res.min_diameter}?"
        return "?"

    def to_text(self) -> str:
        lines = []
        if self.kind == "golomb":
            rows_out = [["g\\b"] + [str(b) for b in self.cols]]
            for g in self.rows:
                row = [str(g)]
                for b in self.cols:
                    row.append(self._cell_text(self.cells[(g, b)]))
                rows_out.append(row)
            widths = [max(len(r[i]) for r in rows_out) for i in range(len(rows_out[0]))]
            for row in rows_out:
                lines.append("  ".join(s.rjust(w) for s, w in zip(row, widths)))
        else:
            lines.append("   n  min_diameter")
            for n in self.rows:
                lines.append(f"{n:4d}  {self._cell_text(self.cells[n])}")
        return "\n".join(lines) + "\n"

    def to_csv(self) -> str:
        lines = []
        if self.kind == "golomb":
            lines.append("g," + ",".join(str(b) for b in self.cols))
            for g in self.rows:
                cells = [self._cell_text(self.cells[(g, b)]) for b in self.cols]
                lines.append(f"{g}," + ",".join(cells))
        else:
            lines.append("n,min_diameter")
            for n in self.rows:
                lines.append(f"{n},{self._cell_text(self.cells[n])}")
        return "\n".join(lines) + "\n"


def table_sweep(
    kind: str,
    g_range: Optional[range] = None,
    b_range: Optional[range] = None,
    n_range: Optional[range] = None,
    max_nodes: int = 10**9,
    max_seconds: float = 600.0,
    threads: int = 1,
) -> TableDocument:
    """Grid of minimum diameters in the published layout (rows g,
    columns b for the Golomb kind; one row per n for the LM kind).
    Budget exhaustion is recorded in the cell, never fatal."""
    cells: dict = {}
    if kind == "golomb":
        g_range = g_range or range(0)
        b_range = b_range or range(0)
        for g in g_range:
            for b in b_range:
                problem = SearchProblem(
                    kind="golomb", n=g + b, g=g,
                    max_nodes=max_nodes, max_seconds=max_seconds,
                )
                cells[(g, b)] = min_diameter(problem, threads=threads)
        return TableDocument(
            kind="golomb", rows=tuple(g_range), cols=tuple(b_range), cells=cells
        )
    if kind == "lm":
        n_range = n_range or range(0)
        for n in n_range:
            problem = SearchProblem(
                kind="lm", n=n, max_nodes=max_nodes, max_seconds=max_seconds
            )
            cells[n] = min_diameter(problem, threads=threads)
        return TableDocument(kind="lm", rows=tuple(n_range), cols=(), cells=cells)
    raise ValueError(f"kind must be 'golomb' or 'lm', got {kind!r}")
