"""Conjecture scan across group families and report serialization.

A scan draws sample points uniformly in each group's safe box (deterministic
from the seed), runs the Einstein check, and aggregates one row per group.
JSON is the canonical lossless report form; floats are written with 17
significant digits so reports round-trip byte-identically.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

import numpy as np

from .catalog import GroupSpec, parse_group_name
from .charts import safe_domain
from .curvature import einstein_check
from .errors import InvalidInputError, LieForgeError
from .metric import MetricConfig, MetricField, exp_metric_field

VERSION = "0.1.0"
SAMPLE_CONDITION_LIMIT = 1e8


@dataclass(frozen=True)
class ScanConfig:
    groups: tuple[str, ...]
    chart: str = "exp"
    samples: int = 20
    tolerance: float = 1e-6
    seed: int = 0
    k: float | str = "auto"

    def __post_init__(self):
        if self.samples < 1:
            raise InvalidInputError("samples must be >= 1")
        if self.tolerance <= 0:
            raise InvalidInputError("tolerance must be positive")


@dataclass(frozen=True)
class GroupResult:
    name: str
    dim: int
    lambda_hat: float
    lambda_spread: float
    max_residual: float
    passed: bool
    wall_time_ms: float
    failure: str | None = None


@dataclass(frozen=True)
class ScanReport:
    config: ScanConfig
    rows: tuple[GroupResult, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.rows)

    def to_dict(self) -> dict:
        return {
            "config": {
                "groups": list(self.config.groups),
                "chart": self.config.chart,
                "samples": self.config.samples,
                "tolerance": self.config.tolerance,
                "seed": self.config.seed,
                "k": self.config.k,
            },
            "seed": self.config.seed,
            "version": VERSION,
            "groups": [
                {
                    "name": r.name,
                    "dim": r.dim,
                    "lambda_hat": r.lambda_hat,
                    "lambda_spread": r.lambda_spread,
                    "max_residual": r.max_residual,
                    "pass": r.passed,
                    "wall_time_ms": r.wall_time_ms,
                }
                for r in self.rows
            ],
            "pass": self.passed,
        }


def sample_safe_points(field: MetricField, lo: np.ndarray, hi: np.ndarray,
                       count: int, rng) -> np.ndarray:
    """Rejection-sample points with a well-conditioned metric."""
    out = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 200:
            raise LieForgeError(
                f"could not draw {count} well-conditioned points in {field.name}"
            )
        batch = rng.uniform(lo, hi, (count, len(lo)))
        ok = np.asarray(field.contains(batch))
        if not np.any(ok):
            continue
        g = field(batch[ok])
        cond = np.linalg.cond(g)
        for p, c in zip(batch[ok], cond):
            if np.isfinite(c) and c <= SAMPLE_CONDITION_LIMIT and len(out) < count:
                out.append(p)
    return np.array(out)


def scan_one_group(spec: GroupSpec, cfg: ScanConfig, group_index: int) -> GroupResult:
    start = time.perf_counter()
    try:
        k = MetricConfig(group=spec, chart="exp", k=cfg.k).resolve_k()
        metric_field = exp_metric_field(spec, k)
        dom = safe_domain(spec, "exp")
        rng = np.random.default_rng([cfg.seed, group_index])
        pts = sample_safe_points(metric_field, dom.lo, dom.hi, cfg.samples, rng)
        verdict = einstein_check(metric_field, pts, cfg.tolerance)
        elapsed = (time.perf_counter() - start) * 1000.0
        return GroupResult(
            name=spec.name, dim=spec.dim,
            lambda_hat=verdict.lambda_hat,
            lambda_spread=verdict.lambda_spread,
            max_residual=verdict.residual,
            passed=verdict.passed,
            wall_time_ms=elapsed,
            failure=verdict.failure,
        )
    except LieForgeError as exc:
        elapsed = (time.perf_counter() - start) * 1000.0
        return GroupResult(
            name=spec.name, dim=spec.dim,
            lambda_hat=float("nan"), lambda_spread=float("nan"),
            max_residual=float("inf"), passed=False,
            wall_time_ms=elapsed, failure=str(exc),
        )


def run_scan(cfg: ScanConfig) -> ScanReport:
    # parse every name up front so an unknown group fails before any work
    specs = [parse_group_name(name) for name in cfg.groups]
    rows = tuple(scan_one_group(spec, cfg, i) for i, spec in enumerate(specs))
    return ScanReport(config=cfg, rows=rows)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------

def _json_value(obj) -> str:
    if isinstance(obj, dict):
        items = ", ".join(f"{json.dumps(k)}: {_json_value(v)}" for k, v in obj.items())
        return "{" + items + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_json_value(v) for v in obj) + "]"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not np.isfinite(x):
            return "null"
        return format(x, ".17g")
    if obj is None:
        return "null"
    return json.dumps(obj)


def dumps_json(obj: dict) -> str:
    return _json_value(obj) + "\n"


CSV_COLUMNS = ("name", "dim", "lambda_hat", "lambda_spread", "max_residual",
               "status", "wall_time_ms")


def _fmt_float(x: float) -> str:
    return format(x, ".17g") if np.isfinite(x) else "nan"


def dumps_csv(report_dict: dict) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for row in report_dict["groups"]:
        lines.append(",".join([
            row["name"], str(row["dim"]),
            _fmt_float(row["lambda_hat"] if row["lambda_hat"] is not None else float("nan")),
            _fmt_float(row["lambda_spread"] if row["lambda_spread"] is not None else float("nan")),
            _fmt_float(row["max_residual"] if row["max_residual"] is not None else float("nan")),
            "pass" if row["pass"] else "fail",
            _fmt_float(row["wall_time_ms"]),
        ]))
    return "\n".join(lines) + "\n"


def dumps_table(report_dict: dict) -> str:
    header = f"{'group':<8}{'dim':>4}{'lambda':>12}{'spread':>12}{'residual':>12}  {'status':<6}{'ms':>10}"
    lines = [header, "-" * len(header)]
    def num(x, spec):
        return format(x, spec) if x is not None else "nan"

    for row in report_dict["groups"]:
        lines.append(
            f"{row['name']:<8}{row['dim']:>4}"
            f"{num(row['lambda_hat'], '.6f'):>12}"
            f"{num(row['lambda_spread'], '.2e'):>12}"
            f"{num(row['max_residual'], '.2e'):>12}"
            f"  {'pass' if row['pass'] else 'fail':<6}"
            f"{row['wall_time_ms']:>10.1f}"
        )
    lines.append(f"overall: {'pass' if report_dict['pass'] else 'fail'}")
    return "\n".join(lines) + "\n"


def emit_report(report_dict: dict, fmt: str = "json") -> bytes:
    if fmt == "json":
        return dumps_json(report_dict).encode()
    if fmt == "csv":
        return dumps_csv(report_dict).encode()
    if fmt == "table":
        return dumps_table(report_dict).encode()
    raise InvalidInputError(f"unknown report format {fmt!r}")
