"""Command-line workbench: ``rotkit <subcommand> ...``.

Exit codes: 0 success, 1 domain error (message on stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import warnings
from typing import Optional, Sequence

from .classify import (
    PairClass,
    TreePairProblem,
    classify_pair,
    common_diagonals,
    one_off_diagonals,
    reduce_fully,
)
from .census import exact_census, exact_census_naive, sample_census
from .combinatorics import catalan, dihedral_class_count
from .distance import DEFAULT_SIZE_CAP, exact_distance
from .plot import emit_plot
from .stats import FractionPoint, fit_exponential, fit_power_cube
from .triangulation import Triangulation, enumerate_class_representatives, parse_triangulation
from .tree import parse_tree, tree_to_triangulation

CENSUS_HEADER = ["size", "no_common", "difficult", "total"]
SAMPLE_HEADER = ["size", "iters", "no_common", "difficult", "seed", "workers"]


def parse_input(text: str) -> Triangulation:
    """Leading digits and ':' mean a triangulation; leading '(' or 'L' a tree."""
    s = text.strip()
    if s[:1].isdigit():
        return parse_triangulation(s)
    return tree_to_triangulation(parse_tree(s))


def parse_sizes(text: str) -> list[int]:
    sizes = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            lo, hi = part.split("-", 1)
            sizes.extend(range(int(lo), int(hi) + 1))
        else:
            sizes.append(int(part))
    return sizes


def _default_threads() -> int:
    return int(os.environ.get("ROTKIT_THREADS", "1"))


def _write_csv(header: list[str], rows: list[list], out: Optional[str]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    if out:
        with open(out, "w", encoding="utf-8", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        sys.stdout.write(buf.getvalue())


def read_points(path: str, column: str) -> list[FractionPoint]:
    """Load census or sample CSV rows as fraction points (census rows also carry counts)."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        if header == CENSUS_HEADER:
            denom, has_counts = "total", True
        elif header == SAMPLE_HEADER:
            denom, has_counts = "iters", False
        else:
            raise ValueError(f"{path}: unrecognised CSV header {header}")
        if column not in ("no_common", "difficult"):
            raise ValueError(f"unknown column {column!r}")
        points = []
        for row in reader:
            value, total = int(row[column]), int(row[denom])
            points.append(FractionPoint(int(row["size"]), value / total,
                                        value if has_counts else None))
    if not points:
        raise ValueError(f"{path}: no data rows")
    return points


def cmd_catalan(args) -> None:
    print(catalan(args.n))


def cmd_classes(args) -> None:
    if args.list:
        for tri, orbit in enumerate_class_representatives(args.size):
            print(f"{tri} {orbit}")
    else:
        print(dihedral_class_count(args.size))


def _pair(args) -> TreePairProblem:
    return TreePairProblem.of(parse_input(args.a), parse_input(args.b))


def cmd_classify(args) -> None:
    pair = _pair(args)
    cls = classify_pair(pair)
    print(cls)
    if cls is PairClass.HAS_COMMON:
        for a, b in sorted(common_diagonals(pair)):
            print(f"common ({a},{b})")
    for w in one_off_diagonals(pair):
        print(f"one-off side={w.side} target=({w.target[0]},{w.target[1]}) "
              f"flip=({w.flipped[0]},{w.flipped[1]})")


def cmd_distance(args) -> None:
    print(exact_distance(_pair(args), size_cap=args.cap).distance)


def cmd_reduce(args) -> None:
    parts, moves = reduce_fully(_pair(args))
    print(json.dumps({
        "parts": [{"size": p.size, "S": str(p.S), "T": str(p.T)} for p in parts],
        "one_off_moves": moves,
    }))


def cmd_census(args) -> None:
    sizes = parse_sizes(args.size)
    if args.checkpoint and len(sizes) != 1:
        raise ValueError("--checkpoint needs a single --size")
    rows = []
    for n in sizes:
        if args.naive:
            row = exact_census_naive(n)
        else:
            row = exact_census(n, workers=args.threads, max_size=args.max_size,
                               checkpoint=args.checkpoint)
        rows.append([row.size, row.no_common, row.difficult, row.total])
    _write_csv(CENSUS_HEADER, rows, args.out)


def cmd_sample(args) -> None:
    rows = []
    for n in parse_sizes(args.size):
        r = sample_census(n, args.iters, args.seed, workers=args.threads)
        rows.append([r.size, r.iterations, r.no_common_hits, r.difficult_hits, r.seed, r.workers])
    _write_csv(SAMPLE_HEADER, rows, args.out)


def cmd_fit(args) -> None:
    points = read_points(args.input, args.column)
    if args.model == "exp":
        fit = fit_exponential(points)
    else:
        if any(p.count is None for p in points):
            raise ValueError("powcube needs exact counts (census CSV), not sample fractions")
        fit = fit_power_cube(points)
    print(fit.to_json())


def cmd_plot(args) -> None:
    points = read_points(args.input, args.column)
    fit = fit_exponential(points) if args.fit else None
    emit_plot(points, fit, args.output, title=args.title or f"{args.column} fraction")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rotkit", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("catalan", help="print C_n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_catalan)

    p = sub.add_parser("classes", help="triangulations up to dihedral symmetry")
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--list", action="store_true", help="print each representative and orbit size")
    p.set_defaults(func=cmd_classes)

    for name, func, help_ in (
        ("classify", cmd_classify, "classify a pair (tree or triangulation strings)"),
        ("distance", cmd_distance, "exact rotation distance"),
        ("reduce", cmd_reduce, "reduce along common and one-off edges"),
    ):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--a", required=True)
        p.add_argument("--b", required=True)
        if name == "distance":
            p.add_argument("--cap", type=int, default=DEFAULT_SIZE_CAP,
                           help="largest size searched (memory grows with C_n)")
        p.set_defaults(func=func)

    p = sub.add_parser("census", help="exact census rows")
    p.add_argument("--size", required=True, help="N, A-B or comma list")
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--naive", action="store_true", help="all pairs, no symmetry (sizes <= 7)")
    p.add_argument("--max-size", type=int, default=12)
    p.add_argument("--checkpoint", help="resume file, one line per finished representative")
    p.add_argument("--out")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("sample", help="Monte-Carlo census rows")
    p.add_argument("--size", required=True, help="N, A-B or comma list")
    p.add_argument("--iters", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--threads", type=int, default=_default_threads())
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("fit", help="fit a decay/growth model to a CSV column")
    p.add_argument("--input", required=True)
    p.add_argument("--column", choices=["no_common", "difficult"], required=True)
    p.add_argument("--model", choices=["exp", "powcube"], default="exp")
    p.set_defaults(func=cmd_fit)

    p = sub.add_parser("plot", help="SVG of ln(fraction) against size")
    p.add_argument("--input", required=True)
    p.add_argument("--column", choices=["no_common", "difficult"], required=True)
    p.add_argument("--output", required=True)
    p.add_argument("--fit", action="store_true")
    p.add_argument("--title")
    p.set_defaults(func=cmd_plot)
    return parser


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"rotkit: warning: {message}", file=sys.stderr)


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    warnings.showwarning = _show_warning
    try:
        args.func(args)
    except (ValueError, OverflowError, IndexError, OSError) as exc:
        print(f"rotkit: error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run())
