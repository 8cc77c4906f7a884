"""Chart parametrizations U(theta) of group manifolds with first derivatives.

Two charts are provided: the exponential chart for any cataloged group
(derivatives by dual-number seeds through the matrix exponential) and the
z-x-z Euler-angle chart for SU(2) (closed 2x2 factors, derivatives by
differentiating each factor).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .catalog import GroupSpec, make_group
from .errors import InvalidInputError
from .kernel import expm_dual

EXP_SU2_NORM_MIN = 1e-4
EXP_SU2_NORM_MAX = 2.0 * np.pi - 1e-2
EULER_SIN_MARGIN = 1e-6


@dataclass(frozen=True)
class SafeDomain:
    """Sampling box plus the membership predicate for one chart."""

    lo: np.ndarray
    hi: np.ndarray
    contains: Callable[[np.ndarray], np.ndarray]  # (m, d) -> bool (m,)


@dataclass(frozen=True)
class ChartPoint:
    chart: str  # "exp" | "euler"
    coords: np.ndarray
    group: GroupSpec

    def __post_init__(self):
        object.__setattr__(self, "coords", np.asarray(self.coords, dtype=float))
        if self.chart == "exp":
            if len(self.coords) != self.group.dim:
                raise InvalidInputError(
                    f"exp chart for {self.group.name} needs {self.group.dim} "
                    f"coordinates, got {len(self.coords)}"
                )
        elif self.chart == "euler":
            if self.group.name != "su2" or len(self.coords) != 3:
                raise InvalidInputError("euler chart is the 3-coordinate SU(2) chart")
        else:
            raise InvalidInputError(f"unknown chart {self.chart!r}")


@dataclass(frozen=True)
class FrameEvaluation:
    """Group element U and its coordinate derivatives dU_a at one point."""

    U: np.ndarray
    dU: np.ndarray  # (d, n, n)


def exp_chart_batch(spec: GroupSpec, thetas: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """U = exp(sum_a theta^a X_a) and dU_a for a batch of points (m, dim)."""
    thetas = np.atleast_2d(np.asarray(thetas, dtype=float))
    if thetas.shape[1] != spec.dim:
        raise InvalidInputError(
            f"exp chart for {spec.name}: expected {spec.dim} coordinates, "
            f"got {thetas.shape[1]}"
        )
    m = thetas.shape[0]
    n = spec.matrix_size
    stack = np.empty((m, spec.dim + 1, n, n), dtype=complex)
    stack[:, 0] = np.einsum("ma,aij->mij", thetas, spec.generators)
    stack[:, 1:] = spec.generators  # seed one direction per coordinate
    out = expm_dual(stack)
    return out[:, 0], out[:, 1:]


def exp_chart(spec: GroupSpec, theta: np.ndarray) -> FrameEvaluation:
    u, du = exp_chart_batch(spec, np.asarray(theta, dtype=float)[None, :])
    return FrameEvaluation(U=u[0], dU=du[0])


def _uz(alpha):
    alpha = np.asarray(alpha, dtype=float)
    out = np.zeros(alpha.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = np.exp(0.5j * alpha)
    out[..., 1, 1] = np.exp(-0.5j * alpha)
    return out


def _duz(alpha):
    alpha = np.asarray(alpha, dtype=float)
    out = np.zeros(alpha.shape + (2, 2), dtype=complex)
    out[..., 0, 0] = 0.5j * np.exp(0.5j * alpha)
    out[..., 1, 1] = -0.5j * np.exp(-0.5j * alpha)
    return out


def _ux(theta):
    theta = np.asarray(theta, dtype=float)
    out = np.zeros(theta.shape + (2, 2), dtype=complex)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    out[..., 0, 0] = out[..., 1, 1] = c
    out[..., 0, 1] = out[..., 1, 0] = 1j * s
    return out


def _dux(theta):
    theta = np.asarray(theta, dtype=float)
    out = np.zeros(theta.shape + (2, 2), dtype=complex)
    c, s = np.cos(theta / 2), np.sin(theta / 2)
    out[..., 0, 0] = out[..., 1, 1] = -0.5 * s
    out[..., 0, 1] = out[..., 1, 0] = 0.5j * c
    return out


def euler_chart_batch(angles: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """SU(2) z-x-z chart for a batch of (theta, phi, psi) rows."""
    angles = np.atleast_2d(np.asarray(angles, dtype=float))
    if angles.shape[1] != 3:
        raise InvalidInputError("euler chart takes (theta, phi, psi)")
    th, ph, ps = angles[:, 0], angles[:, 1], angles[:, 2]
    uzp, uxt, uzs = _uz(ph), _ux(th), _uz(ps)
    u = uzp @ uxt @ uzs
    du = np.empty(angles.shape[:1] + (3, 2, 2), dtype=complex)
    du[:, 0] = uzp @ _dux(th) @ uzs
    du[:, 1] = _duz(ph) @ uxt @ uzs
    du[:, 2] = uzp @ uxt @ _duz(ps)
    return u, du


def euler_chart(theta: float, phi: float, psi: float) -> FrameEvaluation:
    u, du = euler_chart_batch(np.array([[theta, phi, psi]]))
    return FrameEvaluation(U=u[0], dU=du[0])


_SU2 = None


def _su2_spec() -> GroupSpec:
    global _SU2
    if _SU2 is None:
        _SU2 = make_group("su", 2)
    return _SU2


def evaluate(point: ChartPoint) -> FrameEvaluation:
    if point.chart == "exp":
        return exp_chart(point.group, point.coords)
    return euler_chart(*point.coords)


def chart_transition_check(p_exp: ChartPoint, p_euler: ChartPoint) -> float:
    """Frobenius distance between the group elements of two SU(2) points."""
    if p_exp.group.name != "su2" or p_euler.group.name != "su2":
        raise InvalidInputError("transition check is defined for SU(2) charts")
    ua = evaluate(p_exp).U
    ub = evaluate(p_euler).U
    return float(np.linalg.norm(ua - ub))


def su2_log(u: np.ndarray) -> np.ndarray:
    """Exponential-chart coordinates of an SU(2) element (|theta| < 2*pi)."""
    c = 0.5 * np.real(u[0, 0] + u[1, 1])
    s = np.array([
        0.5 * np.imag(u[0, 1] + u[1, 0]),
        0.5 * np.real(u[0, 1] - u[1, 0]),
        0.5 * np.imag(u[0, 0] - u[1, 1]),
    ])
    sn = np.linalg.norm(s)
    half = np.arctan2(sn, c)
    if sn < 1e-14:
        return np.zeros(3)
    return 2.0 * half * s / sn


def safe_domain(spec: GroupSpec, chart: str) -> SafeDomain:
    """Sampling box and membership predicate for a chart.

    The exponential chart of SU(2) is nondegenerate for
    1e-4 < |theta| < 2*pi - 1e-2; other groups get a conservative
    injectivity ball |theta| < pi/2 in the normalized basis.
    """
    if chart == "euler":
        if spec.name != "su2":
            raise InvalidInputError("euler chart exists only for su2")
        lo = np.array([0.25, -np.pi, -np.pi])
        hi = np.array([np.pi - 0.25, np.pi, np.pi])

        def contains(pts, _lo=lo, _hi=hi):
            pts = np.atleast_2d(pts)
            return np.abs(np.sin(pts[:, 0])) > EULER_SIN_MARGIN

        return SafeDomain(lo=lo, hi=hi, contains=contains)

    if chart != "exp":
        raise InvalidInputError(f"unknown chart {chart!r}")

    d = spec.dim
    if spec.name == "su2":
        r = 1.5
        nmin, nmax = EXP_SU2_NORM_MIN, EXP_SU2_NORM_MAX
    else:
        r = 0.95 * (np.pi / 2) / np.sqrt(d)
        nmin, nmax = -1.0, np.pi / 2

    def contains(pts, _nmin=nmin, _nmax=nmax):
        pts = np.atleast_2d(pts)
        norms = np.linalg.norm(pts, axis=1)
        return (norms > _nmin) & (norms < _nmax)

    return SafeDomain(lo=np.full(d, -r), hi=np.full(d, r), contains=contains)
