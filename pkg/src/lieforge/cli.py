"""Command-line surface: metric/curvature evaluation, Einstein checks,
the conjecture scan, and sphere pullbacks.

Exit codes: 0 all checks passed, 1 an Einstein check failed, 2 invalid
input or I/O failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .catalog import parse_group_name
from .charts import ChartPoint, safe_domain
from .curvature import einstein_check, riemann_ricci
from .errors import LieForgeError
from .metric import (
    MetricConfig,
    euler_metric_field,
    exp_metric_field,
    metric,
)
from .scan import (
    ScanConfig,
    dumps_json,
    emit_report,
    run_scan,
    sample_safe_points,
)
from .sphere import pullback_metric, sphere_einstein_check


def _csv_floats(text: str) -> np.ndarray:
    try:
        return np.array([float(x) for x in text.split(",")])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad float list {text!r}: {exc}")


def _k_value(text: str):
    if text == "auto":
        return "auto"
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"k must be a real number or 'auto', got {text!r}")


def parse_cli(argv) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="lieforge",
        description="Metrics from Lie group charts, their curvature, and "
                    "Einstein-property scans.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("metric", help="evaluate the metric at one chart point")
    p.add_argument("--group", required=True)
    p.add_argument("--chart", choices=("exp", "euler"), default="exp")
    p.add_argument("--point", required=True, type=_csv_floats)
    p.add_argument("--k", type=_k_value, default="auto")
    p.add_argument("--format", choices=("json", "csv", "table"), default="table")

    p = sub.add_parser("curvature", help="curvature bundle at one chart point")
    p.add_argument("--group", required=True)
    p.add_argument("--chart", choices=("exp", "euler"), default="exp")
    p.add_argument("--point", required=True, type=_csv_floats)
    p.add_argument("--k", type=_k_value, default="auto")

    p = sub.add_parser("einstein", help="Einstein check for one group")
    p.add_argument("--group", required=True)
    p.add_argument("--chart", choices=("exp", "euler"), default="exp")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=_k_value, default="auto")

    p = sub.add_parser("scan", help="conjecture scan over several groups")
    p.add_argument("--groups", required=True)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=_k_value, default="auto")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")

    p = sub.add_parser("sphere", help="pullback metric on the unit sphere")
    p.add_argument("--dim", type=int, required=True,
                   help="ambient dimension N of S^{N-1}")
    p.add_argument("--point", type=_csv_floats, default=None)
    p.add_argument("--einstein", action="store_true")
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--tol", type=float, default=1e-6)
    p.add_argument("--seed", type=int, default=0)

    return parser.parse_args(argv)


def _metric_payload(name, chart, coords, k, mt) -> dict:
    return {
        "group": name,
        "chart": chart,
        "point": [float(x) for x in coords],
        "k": k,
        "condition": mt.condition,
        "g": [[float(v) for v in row] for row in mt.g],
        "g_inv": [[float(v) for v in row] for row in mt.g_inv],
    }


def _print_matrix(label, m):
    print(label)
    for row in m:
        print("  " + "  ".join(f"{v: .12f}" for v in row))


def _cmd_metric(args) -> int:
    spec = parse_group_name(args.group)
    cfg = MetricConfig(group=spec, chart=args.chart, k=args.k)
    mt = metric(cfg, ChartPoint(args.chart, args.point, spec))
    payload = _metric_payload(spec.name, args.chart, args.point, cfg.resolve_k(), mt)
    if args.format == "json":
        sys.stdout.write(dumps_json(payload))
    elif args.format == "csv":
        for row in mt.g:
            print(",".join(format(v, ".17g") for v in row))
    else:
        _print_matrix(f"g ({spec.name}, {args.chart} chart):", mt.g)
        _print_matrix("g_inv:", mt.g_inv)
        print(f"condition: {mt.condition:.3e}")
    return 0


def _build_field(spec, chart, k):
    if chart == "euler":
        return euler_metric_field(k)
    return exp_metric_field(spec, k)


def _cmd_curvature(args) -> int:
    spec = parse_group_name(args.group)
    k = MetricConfig(group=spec, chart=args.chart, k=args.k).resolve_k()
    ChartPoint(args.chart, args.point, spec)  # validates coordinate count
    bundle = riemann_ricci(_build_field(spec, args.chart, k), args.point)
    d = spec.dim
    _print_matrix("ricci:", bundle.ricci)
    print(f"scalar: {bundle.scalar:.10f}")
    print(f"lambda (R / 2d): {bundle.scalar / (2 * d):.10f}")
    return 0


def _cmd_einstein(args) -> int:
    spec = parse_group_name(args.group)
    k = MetricConfig(group=spec, chart=args.chart, k=args.k).resolve_k()
    field = _build_field(spec, args.chart, k)
    dom = safe_domain(spec, args.chart)
    rng = np.random.default_rng(args.seed)
    pts = sample_safe_points(field, dom.lo, dom.hi, args.samples, rng)
    v = einstein_check(field, pts, args.tol)
    sys.stdout.write(dumps_json({
        "group": spec.name,
        "chart": args.chart,
        "samples": v.samples,
        "tolerance": v.tol,
        "lambda_hat": v.lambda_hat,
        "lambda_spread": v.lambda_spread,
        "residual": v.residual,
        "field_residual": v.field_residual,
        "pass": v.passed,
    }))
    return 0 if v.passed else 1


def _cmd_scan(args) -> int:
    names = tuple(s.strip() for s in args.groups.split(",") if s.strip())
    cfg = ScanConfig(groups=names, samples=args.samples, tolerance=args.tol,
                     seed=args.seed, k=args.k)
    report = run_scan(cfg)
    payload = emit_report(report.to_dict(), args.format)
    if args.out:
        try:
            with open(args.out, "wb") as fh:
                fh.write(payload)
        except OSError as exc:
            print(f"lieforge: cannot write {args.out}: {exc}", file=sys.stderr)
            return 2
    else:
        sys.stdout.buffer.write(payload)
    return 0 if report.passed else 1


def _cmd_sphere(args) -> int:
    if args.einstein:
        v = sphere_einstein_check(args.dim, args.samples, args.tol, args.seed)
        sys.stdout.write(dumps_json({
            "sphere": f"S{args.dim - 1}",
            "samples": v.samples,
            "tolerance": v.tol,
            "lambda_hat": v.lambda_hat,
            "lambda_spread": v.lambda_spread,
            "residual": v.residual,
            "pass": v.passed,
        }))
        return 0 if v.passed else 1
    if args.point is None:
        raise LieForgeError("sphere needs --point unless --einstein is given")
    mt = pullback_metric(args.dim, args.point)
    _print_matrix(f"pullback metric on S{args.dim - 1}:", mt.g)
    return 0


_COMMANDS = {
    "metric": _cmd_metric,
    "curvature": _cmd_curvature,
    "einstein": _cmd_einstein,
    "scan": _cmd_scan,
    "sphere": _cmd_sphere,
}


def main(argv=None) -> int:
    args = parse_cli(sys.argv[1:] if argv is None else argv)
    try:
        code = _COMMANDS[args.command](args)
    except LieForgeError as exc:
        print(f"lieforge: {exc}", file=sys.stderr)
        return 2
    return code


if __name__ == "__main__":
    sys.exit(main())
