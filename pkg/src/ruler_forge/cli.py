"""Command-line surface.

Subcommands: verify, construct, search, bounds, certify, oeis, sweep.
Exit codes: 0 pass / proven optimal, 1 mathematical failure, 2 usage or
domain error, 3 budget exhaustion, 4 indeterminate precision.

Numeric inputs are integers or exact rationals like 7/4; decimal floats
are rejected so that certified checks never start from an inexact
constant.  RULER_FORGE_THREADS is the fallback for --threads.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .bounds import gap_sum_bound, golomb_lower_bound, lm_lower_bound
from .certify import certify_lm_sequence
from .construct import (
    DEFAULT_C,
    default_holes,
    explicit_lm_mark,
    explicit_lm_prefix,
    greedy_lm,
    hole_complement_ruler,
    known_lm_diameter,
    small_b_ruler,
)
from .core import diff_profile, format_ruler, is_g_golomb, is_lm_ruler, parse_ruler
from .intervals import IndeterminateSignError
from .oeis import load_sequences, write_bfile
from .search import (
    BudgetExhaustedError,
    SearchProblem,
    min_diameter,
    table_sweep,
)

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_PRECISION = 4


class UsageError(Exception):
    pass


def _json_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _parse_rational(text: str) -> Fraction:
    s = text.strip()
    if "." in s:
        raise UsageError(
            f"decimal constants are not accepted ({text!r}); use an exact "
            "fraction like 7/4"
        )
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse rational constant {text!r}") from None


def _parse_range(text: str) -> tuple[int, int]:
    s = text.strip()
    if ".." not in s:
        raise UsageError(f"range must look like LO..HI, got {text!r}")
    lo_s, hi_s = s.split("..", 1)
    try:
        return int(lo_s), int(hi_s)
    except ValueError:
        raise UsageError(f"range endpoints must be integers: {text!r}") from None


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return args.threads
    env = os.environ.get("RULER_FORGE_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"RULER_FORGE_THREADS must be an integer, got {env!r}")
    return os.cpu_count() or 1


def _write_out(args, text: str) -> None:
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# --- verify ---------------------------------------------------------------


def cmd_verify(args) -> int:
    try:
        ruler = parse_ruler(args.ruler)
    except ValueError as e:
        raise UsageError(str(e))
    profile = diff_profile(ruler)
    if args.lm:
        predicate, passed = "lm", is_lm_ruler(ruler)
    else:
        predicate, passed = "golomb", is_g_golomb(ruler, args.g)
    if args.emit == "json":
        doc = {
            "ruler": list(ruler.marks),
            "diameter": ruler.diameter,
            "profile": {str(d): profile.counts[d] for d in sorted(profile.counts)},
            "max_multiplicity": profile.max_multiplicity,
            "predicate": predicate,
            "g": args.g if predicate == "golomb" else None,
            "pass": passed,
        }
        _write_out(args, _json_dumps(doc) + "\n")
    else:
        lines = [f"ruler: {format_ruler(ruler)}", f"diameter: {ruler.diameter}"]
        lines.append("profile:")
        lines.extend(f"  {d} {profile.counts[d]}" for d in sorted(profile.counts))
        lines.append(f"max multiplicity: {profile.max_multiplicity}")
        label = f"golomb g={args.g}" if predicate == "golomb" else "lm"
        lines.append(f"check {label}: {'PASS' if passed else 'FAIL'}")
        _write_out(args, "\n".join(lines) + "\n")
    return EXIT_OK if passed else EXIT_FAIL


# --- construct --------------------------------------------------------------


def cmd_construct(args) -> int:
    name = args.construction
    g = b = None
    c = _parse_rational(args.c) if getattr(args, "c", None) else DEFAULT_C
    if name == "small-b":
        g, b = args.g, args.b
        ruler = small_b_ruler(g, b)
        verified = is_g_golomb(ruler, g)
        label = f"golomb g={g}"
    elif name == "hole-complement":
        g, b = args.g, args.b
        if args.holes:
            try:
                holes = parse_ruler(args.holes)
            except ValueError as e:
                raise UsageError(str(e))
        else:
            holes = default_holes(b, c)
            if holes.diameter > g - 1:
                raise UsageError(
                    f"hole-complement needs g >= {holes.diameter + 1}: the "
                    f"{b - 1}-mark hole set spans {holes.diameter} and must fit "
                    f"strictly inside the ruler"
                )
        ruler = hole_complement_ruler(g, b, holes, offset=args.offset)
        verified = is_g_golomb(ruler, g)
        label = f"golomb g={g}"
    elif name == "explicit-lm":
        ruler = explicit_lm_prefix(args.n, c)
        verified = is_lm_ruler(ruler)
        label = "lm"
    else:  # greedy-lm
        ruler = greedy_lm(args.n)
        verified = is_lm_ruler(ruler)
        label = "lm"

    if args.emit == "json":
        doc = {
            "construction_name": name,
            "g": g,
            "b": b,
            "n": ruler.n,
            "marks": list(ruler.marks),
            "diameter": ruler.diameter,
            "verified": verified,
        }
        _write_out(args, _json_dumps(doc) + "\n")
    else:
        lines = [
            format_ruler(ruler),
            f"diameter: {ruler.diameter}",
            f"verified {label}: {'PASS' if verified else 'FAIL'}",
        ]
        _write_out(args, "\n".join(lines) + "\n")
    return EXIT_OK if verified else EXIT_FAIL


# --- search -----------------------------------------------------------------


def cmd_search(args) -> int:
    if args.problem == "golomb":
        problem = SearchProblem(
            kind="golomb", n=args.n, g=args.g,
            max_nodes=args.max_nodes, max_seconds=args.max_seconds,
            diameter_start=args.start,
        )
    else:
        problem = SearchProblem(
            kind="lm", n=args.n,
            max_nodes=args.max_nodes, max_seconds=args.max_seconds,
            diameter_start=args.start,
        )
    result = min_diameter(problem, threads=_threads(args))
    if args.emit == "json":
        _write_out(args, _json_dumps(result.to_json_dict()) + "\n")
    else:
        lines = [
            f"min diameter: {result.min_diameter}",
            f"witness: {format_ruler(result.witness) if result.witness else 'none'}",
            f"status: {result.status}",
            f"nodes: {result.stats.nodes}",
            f"elapsed_ms: {result.stats.elapsed_ms}",
        ]
        _write_out(args, "\n".join(lines) + "\n")
    return EXIT_OK if result.status == "proven_optimal" else EXIT_BUDGET


# --- bounds -----------------------------------------------------------------


def cmd_bounds(args) -> int:
    lines = []
    have_golomb = args.g is not None and args.b is not None
    if (args.g is None) != (args.b is None):
        raise UsageError("golomb bounds need both --g and --b")
    if have_golomb:
        g, b = args.g, args.b
        if g < 1 or b < 1:
            raise UsageError("need g >= 1 and b >= 1")
        lines.append(
            f"golomb g={g} b={b} (n={g + b}): lower {golomb_lower_bound(g, b)}"
            " (hole-counting bound)"
        )
        upper = None
        if b == 1 or b == 2 or (b == 3 and g >= 2) or (b == 4 and g >= 4):
            upper = ("interval-plus-tail construction", g + 2 * b - 2)
        else:
            lb_diam = known_lm_diameter(b - 1)
            if lb_diam is not None and g >= lb_diam + 1:
                upper = ("hole-complement construction", g + 2 * b - 2)
        if upper:
            lines.append(f"golomb g={g} b={b}: upper {upper[1]} ({upper[0]})")
    if args.lm_n is not None:
        n = args.lm_n
        if n < 1:
            raise UsageError("need --lm-n >= 1")
        lines.append(f"lm n={n}: lower {lm_lower_bound(n)} (sorted-gap integral bound)")
        lines.append(f"lm n={n}: lower {gap_sum_bound(n)} (gap-floor sum bound)")
        upper = 0 if n == 1 else explicit_lm_mark(n - 1, DEFAULT_C)
        lines.append(f"lm n={n}: upper {upper} (explicit floor-sequence diameter)")
        known = known_lm_diameter(n)
        if known is not None and n >= 1:
            lines.append(f"lm n={n}: optimal {known} (verified table)")
    if not lines:
        raise UsageError("nothing to bound: pass --g/--b and/or --lm-n")
    _write_out(args, "\n".join(lines) + "\n")
    return EXIT_OK


# --- certify ----------------------------------------------------------------


def cmd_certify(args) -> int:
    c = _parse_rational(args.c)
    if args.dmax < 3:
        raise UsageError("need --dmax >= 3")
    report = certify_lm_sequence(args.dmax, c, threads=_threads(args))
    base = args.out or "certification"
    with open(base + ".log", "w") as fh:
        fh.write("\n".join(report.to_log_lines()) + "\n")
    with open(base + ".json", "w") as fh:
        fh.write(report.to_json() + "\n")
    n_fail = len(report.failures)
    summary = [
        f"records: {len(report.records)} (distances 3..{report.d_max})",
        f"failing distances: {n_fail}",
        f"tail: {'PASS' if report.tail.passed else 'FAIL'}"
        f" (anchor d={report.tail.anchor_d})",
        f"cutoff at 4476 exceeds 194: "
        f"{'yes' if report.tail.cutoff_claim_holds else 'no'}",
        f"verdict: {'PASS' if report.verdict else 'FAIL'}",
        f"wrote {base}.log and {base}.json",
    ]
    sys.stdout.write("\n".join(summary) + "\n")
    return EXIT_OK if report.verdict else EXIT_FAIL


# --- oeis -------------------------------------------------------------------


def cmd_oeis(args) -> int:
    sequences = load_sequences()
    if args.sequence not in sequences:
        raise UsageError(
            f"unsupported sequence {args.sequence!r}; supported: "
            + ", ".join(sorted(sequences))
        )
    spec = sequences[args.sequence]
    lo, hi = _parse_range(args.range)
    out = args.out or f"b{args.sequence[1:]}.txt"
    if lo > hi:
        with open(out, "w") as fh:
            pass
        return EXIT_OK
    written, last_proven = write_bfile(
        spec, lo, hi, out,
        max_nodes=args.max_nodes, max_seconds=args.max_seconds,
        threads=_threads(args),
    )
    if last_proven != hi:
        sys.stderr.write(
            f"budget exhausted: wrote {written} terms, see {out}.partial\n"
        )
        return EXIT_BUDGET
    return EXIT_OK


# --- sweep ------------------------------------------------------------------


def cmd_sweep(args) -> int:
    threads = _threads(args)
    if args.table == "golomb":
        g_lo, g_hi = _parse_range(args.g_range)
        b_lo, b_hi = _parse_range(args.b_range)
        doc = table_sweep(
            "golomb",
            g_range=range(g_lo, g_hi + 1),
            b_range=range(b_lo, b_hi + 1),
            max_nodes=args.max_nodes, max_seconds=args.max_seconds,
            threads=threads,
        )
    else:
        n_lo, n_hi = _parse_range(args.n_range)
        doc = table_sweep(
            "lm",
            n_range=range(n_lo, n_hi + 1),
            max_nodes=args.max_nodes, max_seconds=args.max_seconds,
            threads=threads,
        )
    if args.emit == "csv":
        _write_out(args, doc.to_csv())
    elif args.emit == "json":
        cells = (
            {f"{g},{b}": doc.cells[(g, b)].to_json_dict() for g in doc.rows for b in doc.cols}
            if doc.kind == "golomb"
            else {str(n): doc.cells[n].to_json_dict() for n in doc.rows}
        )
        _write_out(args, _json_dumps({"kind": doc.kind, "cells": cells}) + "\n")
    else:
        _write_out(args, doc.to_text())
    return EXIT_OK


# --- parser -----------------------------------------------------------------


def _add_budget_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--max-nodes", type=int, default=10**9)
    p.add_argument("--max-seconds", type=float, default=600.0)
    p.add_argument("--threads", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ruler-forge",
        description="Construct, verify, search, and certify generalized "
        "Golomb rulers and linear-multiplicity rulers.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a ruler against a predicate")
    p.add_argument("ruler", help='ruler text, e.g. "[0, 2, 5, 8]"')
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--g", type=int, help="multiplicity bound")
    group.add_argument("--lm", action="store_true", help="linear-multiplicity check")
    p.add_argument("--emit", choices=["text", "json"], default="text")
    p.add_argument("--out")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="build a ruler from a named construction")
    csub = p.add_subparsers(dest="construction", required=True)
    sb = csub.add_parser("small-b")
    sb.add_argument("g", type=int)
    sb.add_argument("b", type=int)
    hc = csub.add_parser("hole-complement")
    hc.add_argument("g", type=int)
    hc.add_argument("b", type=int)
    hc.add_argument("--holes", help="explicit hole ruler (default: best known)")
    hc.add_argument("--offset", type=int, default=0)
    el = csub.add_parser("explicit-lm")
    el.add_argument("n", type=int)
    el.add_argument("--c", default="7/4")
    gl = csub.add_parser("greedy-lm")
    gl.add_argument("n", type=int)
    for q in (sb, hc, el, gl):
        q.add_argument("--emit", choices=["text", "json"], default="text")
        q.add_argument("--out")
        q.set_defaults(func=cmd_construct)

    p = sub.add_parser("search", help="exact minimum diameter")
    ssub = p.add_subparsers(dest="problem", required=True)
    sg = ssub.add_parser("golomb")
    sg.add_argument("g", type=int)
    sg.add_argument("n", type=int)
    sl = ssub.add_parser("lm")
    sl.add_argument("n", type=int)
    for q in (sg, sl):
        _add_budget_flags(q)
        q.add_argument("--start", type=int, default=None,
                       help="override the initial lower bound")
        q.add_argument("--emit", choices=["text", "json"], default="text")
        q.add_argument("--out")
        q.set_defaults(func=cmd_search)

    p = sub.add_parser("bounds", help="applicable diameter bounds")
    p.add_argument("--g", type=int)
    p.add_argument("--b", type=int)
    p.add_argument("--lm-n", type=int, dest="lm_n")
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("certify", help="finite certification of the explicit sequence")
    p.add_argument("--dmax", type=int, default=4475)
    p.add_argument("--c", default="7/4")
    p.add_argument("--out", help="base path for .log and .json reports")
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("oeis", help="emit a b-file for a supported sequence")
    p.add_argument("sequence")
    p.add_argument("range", help="index range LO..HI")
    p.add_argument("--out")
    _add_budget_flags(p)
    p.set_defaults(func=cmd_oeis)

    p = sub.add_parser("sweep", help="reproduce a table block")
    tsub = p.add_subparsers(dest="table", required=True)
    tg = tsub.add_parser("golomb")
    tg.add_argument("--g-range", required=True)
    tg.add_argument("--b-range", required=True)
    tl = tsub.add_parser("lm")
    tl.add_argument("--n-range", required=True)
    for q in (tg, tl):
        _add_budget_flags(q)
        q.add_argument("--emit", choices=["text", "csv", "json"], default="text")
        q.add_argument("--out")
        q.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except UsageError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE
    except BudgetExhaustedError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_BUDGET
    except IndeterminateSignError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_PRECISION
    except ValueError as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_USAGE


def entrypoint() -> None:
    sys.exit(main())
