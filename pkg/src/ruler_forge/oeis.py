"""b-file export for the supported integer sequences.

A b-file is one "index value" pair per line, newline-terminated, no
header.  Terms come from the exact search: the linear-multiplicity
sequence maps index n to the minimum diameter of an n-mark LM ruler,
and each Golomb sequence maps n to the minimum diameter at its
multiplicity bound.  Index conventions live in data/oeis_offsets.json
rather than in code.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from typing import Callable, Optional

from .search import SearchProblem, min_diameter

__all__ = ["SequenceSpec", "load_sequences", "bfile_lines", "write_bfile"]


@dataclass(frozen=True)
class SequenceSpec:
    seq_id: str
    kind: str
    g: Optional[int]
    offset: int
    source: str


def load_sequences() -> dict[str, SequenceSpec]:
    raw = json.loads(
        resources.files("ruler_forge.data").joinpath("oeis_offsets.json").read_text()
    )
    out = {}
    for seq_id, entry in raw.items():
        if seq_id.startswith("_"):
            continue
        out[seq_id] = SequenceSpec(
            seq_id=seq_id,
            kind=entry["kind"],
            g=entry.get("g"),
            offset=entry["offset"],
            source=entry["source"],
        )
    return out


def _term(spec: SequenceSpec, n: int, max_nodes: int, max_seconds: float, threads: int):
    problem = SearchProblem(
        kind=spec.kind,
        n=n,
        g=spec.g,
        max_nodes=max_nodes,
        max_seconds=max_seconds,
    )
    return min_diameter(problem, threads=threads)


def bfile_lines(
    spec: SequenceSpec,
    lo: int,
    hi: int,
    max_nodes: int = 10**9,
    max_seconds: float = 600.0,
    threads: int = 1,
) -> tuple[list[str], Optional[int]]:
    """Lines for indices lo..hi plus the last proven index (None when the
    range is empty).  Stops early if a term exhausts its budget; the
    caller records the partial state in a sidecar."""
    if lo < spec.offset:
        raise ValueError(
            f"{spec.seq_id} starts at index {spec.offset}, got {lo}"
        )
    lines: list[str] = []
    last_proven: Optional[int] = None
    for n in range(lo, hi + 1):
        result = _term(spec, n, max_nodes, max_seconds, threads)
        if result.status != "proven_optimal":
            break
        lines.append(f"{n} {result.min_diameter}")
        last_proven = n
    return lines, last_proven


def write_bfile(
    spec: SequenceSpec,
    lo: int,
    hi: int,
    path: str,
    max_nodes: int = 10**9,
    max_seconds: float = 600.0,
    threads: int = 1,
) -> tuple[int, Optional[int]]:
    """Write the b-file; on budget exhaustion leave the partial file plus
    a sidecar noting the last proven term.  Returns (terms written,
    last proven index)."""
    lines, last_proven = bfile_lines(
        spec, lo, hi, max_nodes=max_nodes, max_seconds=max_seconds, threads=threads
    )
    with open(path, "w") as fh:
        for line in lines:
            fh.write(line + "\n")
    complete = lo > hi or last_proven == hi
    if not complete:
        with open(path + ".partial", "w") as fh:
            fh.write(
                f"incomplete b-file for {spec.seq_id}: requested {lo}..{hi}, "
                f"last proven term at index {last_proven}\n"
            )
    return len(lines), last_proven
