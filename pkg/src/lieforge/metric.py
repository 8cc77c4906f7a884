"""Maurer-Cartan frames and the group metric g_ab = k Tr(w_a^dag w_b).

Also carries the closed-form SU(2) metrics for both charts, which serve as
independent oracles for the numeric pipeline, and the Euler-chart isometry
residuals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .catalog import GRAM_CONSTANT, GroupSpec, make_group
from .charts import (
    ChartPoint,
    FrameEvaluation,
    EXP_SU2_NORM_MAX,
    euler_chart_batch,
    evaluate,
    exp_chart_batch,
    safe_domain,
)
from .errors import InvalidInputError, LieForgeError, SingularityError
from .kernel import mat_inverse

METRIC_CONDITION_LIMIT = 1e10
_IMAG_TOL = 1e-8


@dataclass(frozen=True)
class MetricConfig:
    group: GroupSpec
    chart: str = "exp"
    k: Union[float, str] = "auto"

    def resolve_k(self) -> float:
        if self.k == "auto":
            # unique k with g(0) = identity under the catalog normalization
            return 1.0 / GRAM_CONSTANT
        k = float(self.k)
        if k <= 0:
            raise InvalidInputError(f"metric constant k must be positive, got {k}")
        return k


@dataclass(frozen=True)
class MetricTensor:
    g: np.ndarray
    g_inv: np.ndarray
    point: ChartPoint | None
    condition: float


@dataclass(frozen=True)
class MetricField:
    """Batch-evaluable metric over one chart: points (m, d) -> metrics (m, d, d)."""

    dim: int
    func: Callable[[np.ndarray], np.ndarray]
    contains: Callable[[np.ndarray], np.ndarray]
    name: str = "field"

    def __call__(self, pts: np.ndarray) -> np.ndarray:
        return self.func(np.atleast_2d(np.asarray(pts, dtype=float)))


def maurer_cartan(frame: FrameEvaluation) -> np.ndarray:
    """w_a = U^{-1} dU_a, one anti-Hermitian matrix per coordinate."""
    u_inv = mat_inverse(frame.U)
    return u_inv[None, :, :] @ frame.dU


def _gram(omega: np.ndarray, k: float) -> np.ndarray:
    raw = k * np.einsum("...aji,...bji->...ab", omega.conj(), omega)
    imag = float(np.max(np.abs(raw.imag)))
    if imag > _IMAG_TOL:
        raise LieForgeError(
            f"metric entries acquired imaginary parts up to {imag:.3e}"
        )
    return raw.real


def metric_from_frame(frame: FrameEvaluation, k: float) -> np.ndarray:
    return _gram(maurer_cartan(frame), k)


def _finish(g: np.ndarray, point: ChartPoint | None) -> MetricTensor:
    cond = float(np.linalg.cond(g))
    if not np.isfinite(cond) or cond > METRIC_CONDITION_LIMIT:
        where = "" if point is None else f" at {point.chart} point {point.coords}"
        raise SingularityError(
            f"metric is degenerate (condition {cond:.3e}){where}",
            condition=cond,
            point=point,
        )
    return MetricTensor(g=g, g_inv=np.linalg.inv(g), point=point, condition=cond)


def metric(cfg: MetricConfig, point: ChartPoint) -> MetricTensor:
    """Pipeline metric at one chart point."""
    frame = evaluate(point)
    g = metric_from_frame(frame, cfg.resolve_k())
    return _finish(g, point)


def exp_metric_field(spec: GroupSpec, k: float = 2.0) -> MetricField:
    dom = safe_domain(spec, "exp")

    def func(pts):
        u, du = exp_chart_batch(spec, pts)
        omega = np.linalg.inv(u)[:, None, :, :] @ du
        return _gram(omega, k)

    return MetricField(dim=spec.dim, func=func, contains=dom.contains,
                       name=f"{spec.name}-exp")


def euler_metric_field(k: float = 2.0) -> MetricField:
    dom = safe_domain(make_group("su", 2), "euler")

    def func(pts):
        u, du = euler_chart_batch(pts)
        omega = np.linalg.inv(u)[:, None, :, :] @ du
        return _gram(omega, k)

    return MetricField(dim=3, func=func, contains=dom.contains, name="su2-euler")


# ---------------------------------------------------------------------------
# closed-form SU(2) oracles
# ---------------------------------------------------------------------------

def _radial_coeff(t: float) -> float:
    """A(t) = 4 sin^2(t/2) / t^2, Taylor-expanded near t = 0."""
    if t < 1e-4:
        t2 = t * t
        return 1.0 - t2 / 12.0 + t2 * t2 / 360.0 - t2 * t2 * t2 / 20160.0
    s = np.sin(0.5 * t)
    return 4.0 * s * s / (t * t)


def closed_form_metric_su2_exp(theta: np.ndarray) -> MetricTensor:
    """Printed exponential-chart metric and its printed inverse."""
    theta = np.asarray(theta, dtype=float)
    if theta.shape != (3,):
        raise InvalidInputError("su2 exp chart takes 3 coordinates")
    t = float(np.linalg.norm(theta))
    if t >= EXP_SU2_NORM_MAX:
        raise SingularityError(
            f"|theta| = {t:.6f} is at or beyond the chart degeneracy at 2*pi",
            point=theta,
        )
    eye = np.eye(3)
    if t < 1e-12:
        g = eye.copy()
        g_inv = eye.copy()
    else:
        proj = np.outer(theta, theta) / (t * t)
        a = _radial_coeff(t)
        g = a * eye + (1.0 - a) * proj
        g_inv = (1.0 / a) * eye + (1.0 - 1.0 / a) * proj
    point = ChartPoint("exp", theta, make_group("su", 2))
    return MetricTensor(g=g, g_inv=g_inv, point=point,
                        condition=float(np.linalg.cond(g)))


def closed_form_su2_exp_metric_derivative(theta: np.ndarray) -> np.ndarray:
    """Analytic d_c g_ab of the printed exponential-chart metric.

    Written as g_ab = p_ab + h(t) (t^2 d_ab - t_a t_b) with p the radial
    projector and h(t) = 2 (1 - cos t) / t^4; returns array [c, a, b].
    """
    theta = np.asarray(theta, dtype=float)
    t = float(np.linalg.norm(theta))
    if t < 1e-3:
        raise InvalidInputError("analytic derivative needs |theta| away from 0")
    eye = np.eye(3)
    t2 = t * t
    h = 2.0 * (1.0 - np.cos(t)) / (t2 * t2)
    hp = 2.0 * np.sin(t) / (t2 * t2) - 8.0 * (1.0 - np.cos(t)) / (t2 * t2 * t)
    outer = np.outer(theta, theta)
    d = np.empty((3, 3, 3))
    for c in range(3):
        dproj = np.zeros((3, 3))
        dproj[c, :] += theta
        dproj[:, c] += theta
        d[c] = (
            dproj / t2
            - 2.0 * outer * theta[c] / (t2 * t2)
            + hp * (theta[c] / t) * (t2 * eye - outer)
            + h * (2.0 * theta[c] * eye - dproj)
        )
    return d


def closed_form_metric_su2_euler(theta: float, phi: float, psi: float) -> MetricTensor:
    """Printed Euler-chart metric (coordinates ordered theta, phi, psi)."""
    s, c = np.sin(theta), np.cos(theta)
    if abs(s) <= 1e-6:
        raise SingularityError(
            f"euler metric degenerates at theta = {theta:.6f} (sin theta -> 0)",
            point=np.array([theta, phi, psi]),
        )
    g = np.array([
        [1.0, 0.0, 0.0],
        [0.0, 1.0, c],
        [0.0, c, 1.0],
    ])
    s2 = s * s
    g_inv = np.array([
        [1.0, 0.0, 0.0],
        [0.0, 1.0 / s2, -c / s2],
        [0.0, -c / s2, 1.0 / s2],
    ])
    point = ChartPoint("euler", np.array([theta, phi, psi]), make_group("su", 2))
    return MetricTensor(g=g, g_inv=g_inv, point=point,
                        condition=float(np.linalg.cond(g)))


_SHIFTS = {"phi_shift": 1, "psi_shift": 2}


def isometry_residual(cfg: MetricConfig, point: ChartPoint, which: str, xi: float) -> float:
    """Frobenius change of the pipeline metric under a printed global shift."""
    if point.chart != "euler":
        raise InvalidInputError("isometry shifts are defined on the euler chart")
    if which not in _SHIFTS:
        raise InvalidInputError(f"unknown isometry {which!r}")
    shifted = np.array(point.coords, dtype=float)
    shifted[_SHIFTS[which]] += xi
    g0 = metric(cfg, point).g
    g1 = metric(cfg, ChartPoint("euler", shifted, point.group)).g
    return float(np.linalg.norm(g1 - g0))
