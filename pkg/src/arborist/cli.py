"""Command-line surface.

Subcommands: verify, orbit, independence, search, julia, report.
Exit status 0 on success, 2 on usage errors, 1 on internal invariant
violations.
"""

from __future__ import annotations

import argparse
import json
import sys

from .backorbit import RenderConfig, points_csv, render, sample_backward
from .critorbit import d_sequence, orbit_report
from .dynamics import family1, family2
from .errors import DegenerateBasePoint, InvariantViolation
from .exactnum import parse_rational
from .independence import brute_force_independent, two_independent
from .search import SearchConfig, load_rows, search, tally
from .verdict import certify

USAGE_ERROR = 2
INVARIANT_ERROR = 1


def _parse_complex(text: str) -> complex:
    parts = text.split(",")
    if len(parts) == 1:
        return complex(float(parts[0]), 0.0)
    if len(parts) == 2:
        return complex(float(parts[0]), float(parts[1]))
    raise ValueError(f"expected RE or RE,IM, got {text!r}")


def cmd_verify(args: argparse.Namespace) -> int:
    a = parse_rational(args.a)
    verdict = certify(a, args.family, depth=args.depth)
    print(json.dumps(verdict.to_json_dict(), sort_keys=True))
    return 0


def cmd_orbit(args: argparse.Namespace) -> int:
    a = parse_rational(args.a)
    qmap = family1(a) if args.family == 1 else family2(a)
    orbit = d_sequence(qmap, args.depth)
    print(json.dumps(orbit_report(orbit), sort_keys=True))
    return 0


def cmd_independence(args: argparse.Namespace) -> int:
    values = [parse_rational(piece) for piece in args.values.split(",")]
    checker = brute_force_independent if args.oracle else two_independent
    result = checker(values)
    payload = {
        "status": "Independent" if result.independent else "Dependent",
        "witness_indices": sorted(result.witness) if result.witness else None,
        "witness_values": [str(values[i]) for i in result.witness]
        if result.witness
        else None,
    }
    print(json.dumps(payload, sort_keys=True))
    return 0


def cmd_search(args: argparse.Namespace) -> int:
    families = tuple(sorted(set(args.family or [1, 2])))
    cfg = SearchConfig(
        height=args.height,
        out_path=args.out,
        families=families,
        depth=args.depth,
        workers=args.workers,
    )
    summary = search(cfg)
    print(f"rows written: {summary.rows_written}")
    print(f"rows skipped (already present): {summary.rows_skipped}")
    for status in sorted(summary.status_counts):
        print(f"  {status}: {summary.status_counts[status]}")
    for tag in sorted(summary.condition_counts):
        print(f"  condition {tag}: {summary.condition_counts[tag]}")
    return 0


def cmd_julia(args: argparse.Namespace) -> int:
    cfg = RenderConfig(
        width=args.width,
        height=args.height,
        bounds=tuple(args.bounds),
        n_points=args.points,
        burn_in=args.burn_in,
        seed=args.seed,
    )
    points = sample_backward(_parse_complex(args.c), _parse_complex(args.a), cfg)
    if args.csv:
        payload = points_csv(points).encode("ascii")
    else:
        payload = render(points, cfg)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
    return 0


def cmd_report(args: argparse.Namespace) -> int:
    rows = load_rows(args.in_path)
    counts = tally(rows)
    width = max([len(status) for status, _ in counts] + [6])
    print(f"{'status':<{width}}  {'condition':<10}  count")
    for (status, condition), count in sorted(counts.items()):
        print(f"{status:<{width}}  {condition:<10}  {count}")
    print(f"total rows: {len(rows)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arborist",
        description="Certify surjectivity of arboreal Galois representations "
        "for quadratic maps with strictly preperiodic base points.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="certify a single base point")
    p.add_argument("--family", type=int, choices=(1, 2), required=True)
    p.add_argument("--a", required=True, metavar="R/S")
    p.add_argument("--depth", type=int, default=12)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("orbit", help="adjusted critical orbit report")
    p.add_argument("--family", type=int, choices=(1, 2), required=True)
    p.add_argument("--a", required=True, metavar="R/S")
    p.add_argument("--depth", type=int, default=12)
    p.set_defaults(func=cmd_orbit)

    p = sub.add_parser("independence", help="2-independence of a value list")
    p.add_argument("--values", required=True, metavar="V1,V2,...")
    p.add_argument("--oracle", action="store_true", help="use the subset-product oracle")
    p.set_defaults(func=cmd_independence)

    p = sub.add_parser("search", help="height-bounded certification sweep")
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--family", type=int, choices=(1, 2), action="append")
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--out", required=True)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("julia", help="render a Julia set by backward orbit")
    p.add_argument("--c", required=True, metavar="RE[,IM]")
    p.add_argument("--a", required=True, metavar="RE[,IM]")
    p.add_argument("--points", type=int, default=200_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--burn-in", type=int, default=50, dest="burn_in")
    p.add_argument("--width", type=int, default=800)
    p.add_argument("--height", type=int, default=800)
    p.add_argument(
        "--bounds",
        type=float,
        nargs=4,
        default=(-2.0, 2.0, -2.0, 2.0),
        metavar=("RE_MIN", "RE_MAX", "IM_MIN", "IM_MAX"),
    )
    p.add_argument("--out", default=None)
    p.add_argument("--csv", action="store_true", help="emit re,im rows instead of PGM")
    p.set_defaults(func=cmd_julia)

    p = sub.add_parser("report", help="tally a results file")
    p.add_argument("--in", dest="in_path", required=True)
    p.set_defaults(func=cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return INVARIANT_ERROR
    except (DegenerateBasePoint, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
