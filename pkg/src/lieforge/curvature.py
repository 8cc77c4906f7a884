"""Levi-Civita curvature of a black-box metric field by finite differences.

First derivatives use 4th-order central stencils (base step 1e-3) with one
Richardson halving; second derivatives come from nested application.  The
Riemann sign convention is fixed so the unit 2-sphere has Ric = +g.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidInputError, SingularityError
from .metric import MetricField, closed_form_su2_exp_metric_derivative

BASE_STEP = 1e-3


def first_partials(f, pts: np.ndarray, h: float = BASE_STEP,
                   richardson: bool = True) -> np.ndarray:
    """Directional derivatives of a batch map f: (m, d) -> (m, ...).

    Returns an array of shape (m, d, ...); entry [m, a] is the partial of
    f along coordinate a.  One batched call to f covers the whole stencil.
    """
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    m, d = pts.shape
    if richardson:
        offsets = np.array([-2.0, -1.0, -0.5, 0.5, 1.0, 2.0]) * h
    else:
        offsets = np.array([-2.0, -1.0, 1.0, 2.0]) * h
    k = len(offsets)
    disp = np.zeros((k, d, m, d))
    disp[:] = pts[None, None, :, :]
    for a in range(d):
        disp[:, a, :, a] += offsets[:, None]
    vals = np.asarray(f(disp.reshape(k * d * m, d)))
    vals = vals.reshape((k, d, m) + vals.shape[1:])

    def central4(fm2, fm1, fp1, fp2, step):
        return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * step)

    if richardson:
        d_h = central4(vals[0], vals[1], vals[4], vals[5], h)
        d_h2 = central4(vals[1], vals[2], vals[3], vals[4], 0.5 * h)
        deriv = (16.0 * d_h2 - d_h) / 15.0
    else:
        deriv = central4(vals[0], vals[1], vals[2], vals[3], h)
    return np.moveaxis(deriv, 1, 0)  # -> (m, d, ...)


def _guarded(field: MetricField):
    def f(pts):
        inside = np.asarray(field.contains(pts))
        if not np.all(inside):
            bad = np.atleast_2d(pts)[~inside][0]
            raise DomainError(
                f"finite-difference stencil leaves the safe domain of "
                f"{field.name} near {bad}"
            )
        return field(pts)

    return f


def christoffel_batch(field: MetricField, pts: np.ndarray,
                      h: float = BASE_STEP, richardson: bool = True) -> np.ndarray:
    """Gamma[m, c, a, b] = Gamma^c_ab at each point."""
    pts = np.atleast_2d(np.asarray(pts, dtype=float))
    f = _guarded(field)
    g = f(pts)
    ginv = np.linalg.inv(g)
    dg = first_partials(f, pts, h, richardson)  # (m, c, a, b) = d_c g_ab
    t = (
        np.transpose(dg, (0, 2, 1, 3))    # d_a g_db
        + np.transpose(dg, (0, 2, 3, 1))  # d_b g_da
        - dg                              # d_d g_ab
    )
    return 0.5 * np.einsum("mcd,mdab->mcab", ginv, t)


def christoffel(field: MetricField, point: np.ndarray,
                h: float = BASE_STEP) -> np.ndarray:
    return christoffel_batch(field, np.asarray(point, dtype=float)[None, :], h)[0]


@dataclass(frozen=True)
class CurvatureBundle:
    gamma: np.ndarray     # Gamma^c_ab, shape (d, d, d)
    riemann: np.ndarray   # R^d_cab, shape (d, d, d, d)
    ricci: np.ndarray     # Ric_ab
    scalar: float
    metric: np.ndarray
    point: np.ndarray


def riemann_ricci(field: MetricField, point: np.ndarray,
                  h: float = BASE_STEP, h2: float = BASE_STEP) -> CurvatureBundle:
    """Full curvature hierarchy at one point."""
    point = np.asarray(point, dtype=float)
    pts = point[None, :]

    def gamma_func(x):
        return christoffel_batch(field, x, h)

    gam = gamma_func(pts)[0]
    dgam = first_partials(gamma_func, pts, h2)[0]  # (e, c, a, b) = d_e Gamma^c_ab
    t1 = np.transpose(dgam, (1, 3, 0, 2))  # d_a Gamma^d_bc -> [d, c, a, b]
    t2 = np.transpose(dgam, (1, 3, 2, 0))  # d_b Gamma^d_ac -> [d, c, a, b]
    q1 = np.einsum("dae,ebc->dcab", gam, gam)
    q2 = np.einsum("dbe,eac->dcab", gam, gam)
    riem = t1 - t2 + q1 - q2
    ric = np.einsum("cacb->ab", riem)
    g = _guarded(field)(pts)[0]
    scalar = float(np.einsum("ab,ab->", np.linalg.inv(g), ric))
    return CurvatureBundle(gamma=gam, riemann=riem, ricci=ric,
                           scalar=scalar, metric=g, point=point)


@dataclass(frozen=True)
class EinsteinVerdict:
    lambda_hat: float
    lambda_spread: float
    residual: float
    field_residual: float
    samples: int
    tol: float
    passed: bool
    failure: str | None = None


def einstein_check(field: MetricField, points: np.ndarray, tol: float,
                   h: float = BASE_STEP, h2: float = BASE_STEP) -> EinsteinVerdict:
    """Test R_ab = 2 Lambda g_ab over a sample of points.

    Lambda is estimated per sample as R / (2 d) and averaged; the residual is
    the worst relative Frobenius deviation of Ric from 2 Lambda g.  The
    Lambda-term field equation is checked with Lambda_field = Lambda (d - 2),
    which is degenerate (identically zero) for d = 2 and is then reported but
    excluded from pass/fail.
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if len(points) < 1:
        raise InvalidInputError("einstein check needs at least one sample point")
    d = field.dim
    lambdas, residual, field_residual = [], 0.0, 0.0
    bundles = []
    for p in points:
        try:
            bundles.append(riemann_ricci(field, p, h, h2))
        except (SingularityError, DomainError) as exc:
            return EinsteinVerdict(
                lambda_hat=float("nan"), lambda_spread=float("nan"),
                residual=float("inf"), field_residual=float("inf"),
                samples=len(points), tol=tol, passed=False,
                failure=f"sample {p} failed: {exc}",
            )
    lambdas = np.array([b.scalar / (2.0 * d) for b in bundles])
    lam = float(lambdas.mean())
    for b in bundles:
        gnorm = np.linalg.norm(b.metric)
        residual = max(residual, np.linalg.norm(b.ricci - 2.0 * lam * b.metric) / gnorm)
        fr = np.linalg.norm(
            b.ricci - 0.5 * b.scalar * b.metric + lam * (d - 2) * b.metric
        ) / gnorm
        field_residual = max(field_residual, fr)
    passed = residual < tol and (d == 2 or field_residual < tol)
    return EinsteinVerdict(
        lambda_hat=lam,
        lambda_spread=float(lambdas.max() - lambdas.min()),
        residual=float(residual),
        field_residual=float(field_residual),
        samples=len(points), tol=tol, passed=bool(passed),
    )


def fd_cross_check(field: MetricField, point: np.ndarray,
                   h: float = BASE_STEP) -> float:
    """Worst deviation of FD metric derivatives from the analytic SU(2) form."""
    if field.name != "su2-exp":
        raise InvalidInputError("fd_cross_check is defined on the su2 exp field")
    point = np.asarray(point, dtype=float)
    dg = first_partials(_guarded(field), point[None, :], h)[0]
    return float(np.max(np.abs(dg - closed_form_su2_exp_metric_derivative(point))))
