"""Command-line front end.

Input formats:
  points CSV    one point per line, coordinates comma-separated
  points JSON   {"points": [[...], ...], "metric": "l1|l2|linf|lp:<p>"}
  matrix JSON   {"matrix": [[...], ...]}

Outputs: analyze emits a JSON report; generate emits a points CSV; converge
emits the fixed-column table as CSV or JSON; transform emits a matrix JSON.

Exit codes: 0 ok, 2 input error, 3 budget exceeded, 4 oracle mismatch.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .errors import (
    BadParameter,
    DegenerateInput,
    EmptyApproximation,
    EmptySpace,
    ExactLimitExceeded,
    MalformedCover,
    MalformedInput,
    NoCoverExists,
    NotAMetric,
    OracleMismatch,
    OracleTooLarge,
    SingletonSpace,
    TooFine,
)
from .families import FAMILY_NAMES, FamilySpec, build
from .lattice import family_convergence, table_csv_lines, table_json
from .metric import FiniteMetric, PointCloud, from_points
from .report import build_report
from .transforms import HolderParams, holder_transform

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_ORACLE = 4

_INPUT_ERRORS = (MalformedInput, DegenerateInput, NotAMetric, BadParameter,
                 EmptySpace, SingletonSpace, NoCoverExists, MalformedCover,
                 EmptyApproximation, json.JSONDecodeError, ValueError, OSError)
_BUDGET_ERRORS = (ExactLimitExceeded, OracleTooLarge, TooFine)


def _load_space(path: str, metric: str, tol, skip_triangle: bool):
    raw = Path(path).read_bytes()
    text = raw.decode("utf-8")
    tag = metric
    if text.lstrip().startswith("{"):
        obj = json.loads(text)
        if "matrix" in obj:
            m = FiniteMetric.from_matrix(obj["matrix"], tolerance=tol,
                                         validate_triangle=not skip_triangle)
            return m, raw, "matrix"
        if "points" in obj:
            tag = obj.get("metric", metric)
            cloud = PointCloud(points=obj["points"], metric=tag)
            return from_points(cloud, tolerance=tol,
                               validate_triangle=not skip_triangle), raw, tag
        raise MalformedInput("JSON input needs a 'points' or 'matrix' key")
    rows = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rows.append([float(cell) for cell in line.split(",")])
    cloud = PointCloud(points=rows, metric=tag)
    return from_points(cloud, tolerance=tol,
                       validate_triangle=not skip_triangle), raw, tag


def _emit(text: str, out_path) -> None:
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)


def _parse_levels(spec: str) -> list:
    if ".." in spec:
        lo, hi = spec.split("..", 1)
        return list(range(int(lo), int(hi) + 1))
    return [int(spec)]


def _cmd_analyze(args) -> int:
    m, raw, tag = _load_space(args.input, args.metric, args.tol,
                              args.skip_triangle_check)
    report = build_report(m, source=args.input, raw_bytes=raw, metric_tag=tag,
                          oracle=args.oracle, stable=args.stable,
                          max_exact=args.max_exact)
    _emit(json.dumps(report, indent=2, sort_keys=True) + "\n", args.output)
    return EXIT_OK


def _cmd_generate(args) -> int:
    spec = FamilySpec(family=args.family.replace("-", "_"), level=args.level,
                      spacing=args.spacing, epsilon=args.epsilon)
    cloud = build(spec)
    lines = [",".join(repr(float(x)) for x in row) for row in cloud.points]
    _emit("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _cmd_converge(args) -> int:
    table = family_convergence(args.family.replace("-", "_"),
                               _parse_levels(args.levels),
                               max_exact=args.max_exact)
    if args.format == "json":
        _emit(json.dumps(table_json(table), indent=2, sort_keys=True) + "\n",
              args.output)
    else:
        _emit("\n".join(table_csv_lines(table)) + "\n", args.output)
    return EXIT_OK


def _cmd_transform(args) -> int:
    m, _, _ = _load_space(args.input, args.metric, args.tol,
                          args.skip_triangle_check)
    image = holder_transform(m, HolderParams(r=args.r, beta=args.beta),
                             strict=args.strict_metric)
    payload = {"matrix": [[float(v) for v in row] for row in image.dist]}
    _emit(json.dumps(payload, indent=2, sort_keys=True) + "\n", args.output)
    return EXIT_OK


def _cmd_bench(args) -> int:
    from .bench import run_benchmark

    run_benchmark(count=args.count, repeats=args.repeats)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="findim",
        description="Exact dimensions of finite metric spaces.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input_flags(p):
        p.add_argument("--metric", default="l2",
                       help="metric tag for point input: l1, l2, linf, lp:<p>")
        p.add_argument("--tol", type=float, default=None,
                       help="distance-equality tolerance (default: scaled)")
        p.add_argument("--skip-triangle-check", action="store_true",
                       help="skip triangle-inequality validation of the input")
        p.add_argument("-o", "--output", default=None, help="output path")

    p = sub.add_parser("analyze", help="full dimension/nn report for one space")
    p.add_argument("input")
    add_input_flags(p)
    p.add_argument("--oracle", action="store_true",
                   help="cross-check against the brute-force oracle (<= 10 points)")
    p.add_argument("--max-exact", type=int, default=None,
                   help="exact-solver point budget")
    p.add_argument("--stable", action="store_true",
                   help="omit timing so identical inputs give identical bytes")
    p.set_defaults(fn=_cmd_analyze)

    p = sub.add_parser("generate", help="emit an example family as points CSV")
    p.add_argument("family", help=f"one of {', '.join(FAMILY_NAMES)}")
    p.add_argument("level", type=int)
    p.add_argument("--spacing", type=float, default=1.0)
    p.add_argument("--epsilon", type=float, default=None,
                   help="triangle family leg shortfall")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(fn=_cmd_generate)

    p = sub.add_parser("converge", help="convergence table over family levels")
    p.add_argument("family")
    p.add_argument("levels", help="range like 2..6, or a single level")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--max-exact", type=int, default=None)
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(fn=_cmd_converge)

    p = sub.add_parser("transform", help="apply d' = r * d^beta and emit the matrix")
    p.add_argument("input")
    p.add_argument("--r", type=float, required=True)
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--strict-metric", action="store_true",
                   help="fail if the transform breaks the triangle inequality")
    add_input_flags(p)
    p.set_defaults(fn=_cmd_transform)

    p = sub.add_parser("bench", help="compare compiled and pure kernels")
    p.add_argument("--count", type=int, default=20)
    p.add_argument("--repeats", type=int, default=3)
    p.set_defaults(fn=_cmd_bench)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except OracleMismatch as exc:
        print(f"findim: oracle mismatch: {exc}", file=sys.stderr)
        return EXIT_ORACLE
    except _BUDGET_ERRORS as exc:
        print(f"findim: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except _INPUT_ERRORS as exc:
        print(f"findim: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
