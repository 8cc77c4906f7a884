"""Dense complex matrix kernel with forward-mode dual propagation.

Dual-valued matrices are stored as numpy stacks of shape ``(..., p+1, n, n)``:
slot 0 along the third-to-last axis is the value matrix, slots ``1..p`` are
the partial-derivative matrices, one per seeded coordinate direction.  All
kernel operations broadcast over leading batch axes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, NumericRangeError, SingularityError

SIGMA_1 = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_2 = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_3 = np.array([[1, 0], [0, -1]], dtype=complex)
PAULI = (SIGMA_1, SIGMA_2, SIGMA_3)

# Pade-13 numerator coefficients (denominator = numerator with alternating signs)
_PADE13_B = (
    64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
    1187353796428800.0, 129060195264000.0, 10559470521600.0, 670442572800.0,
    33522128640.0, 1323241920.0, 40840800.0, 960960.0, 16380.0, 182.0, 1.0,
)
_PADE13_THETA = 5.371920351148152
_MAX_SQUARINGS = 64

CONDITION_LIMIT = 1e12


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Plain matrix product with shape validation."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape[-1] != b.shape[-2]:
        raise InvalidInputError(
            f"matmul dimension mismatch: {a.shape} x {b.shape}"
        )
    return a @ b


def mat_adjoint(a: np.ndarray) -> np.ndarray:
    """Hermitian adjoint (conjugate transpose) over the last two axes."""
    return np.conj(np.swapaxes(np.asarray(a), -1, -2))


def mat_inverse(a: np.ndarray) -> np.ndarray:
    """Inverse of a well-conditioned square matrix.

    Raises ``SingularityError`` (carrying the condition estimate) when the
    condition number reaches 1e12 or the matrix is exactly singular.
    """
    a = np.asarray(a, dtype=complex)
    if a.shape[-1] != a.shape[-2]:
        raise InvalidInputError(f"cannot invert non-square matrix of shape {a.shape}")
    cond = np.linalg.cond(a)
    worst = float(np.max(cond))
    if not np.isfinite(worst) or worst >= CONDITION_LIMIT:
        raise SingularityError(
            f"matrix condition estimate {worst:.3e} exceeds {CONDITION_LIMIT:.0e}",
            condition=worst,
        )
    return np.linalg.inv(a)


# ---------------------------------------------------------------------------
# dual-matrix stack primitives
# ---------------------------------------------------------------------------

def dual_matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Product of two dual stacks: first-order Leibniz rule in the partials."""
    value = a[..., :1, :, :] @ b[..., :1, :, :]
    parts = a[..., :1, :, :] @ b[..., 1:, :, :] + a[..., 1:, :, :] @ b[..., :1, :, :]
    return np.concatenate([value, parts], axis=-3)


def dual_eye(n: int, ndirections: int, batch_shape=()) -> np.ndarray:
    out = np.zeros(batch_shape + (ndirections + 1, n, n), dtype=complex)
    out[..., 0, :, :] = np.eye(n)
    return out


def dual_solve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve a @ x = b for dual stacks: x_i = a0^{-1} (b_i - a_i x0)."""
    a0 = a[..., 0, :, :]
    x0 = np.linalg.solve(a0, b[..., 0, :, :])
    rhs = b[..., 1:, :, :] - a[..., 1:, :, :] @ x0[..., None, :, :]
    parts = np.linalg.solve(a0[..., None, :, :], rhs)
    return np.concatenate([x0[..., None, :, :], parts], axis=-3)


def dual_inverse(a: np.ndarray) -> np.ndarray:
    n = a.shape[-1]
    p = a.shape[-3] - 1
    return dual_solve(a, dual_eye(n, p, a.shape[:-3]))


def expm_dual(a: np.ndarray) -> np.ndarray:
    """Matrix exponential of a dual stack by Pade-13 scaling and squaring.

    The dual partials ride through the same approximant, so the partial
    slots of the result are the exact derivatives of the computed value.
    """
    a = np.asarray(a, dtype=complex)
    if a.shape[-1] != a.shape[-2]:
        raise InvalidInputError(f"expm needs square matrices, got shape {a.shape}")
    norm = float(np.max(np.abs(a[..., 0, :, :]).sum(axis=-2), initial=0.0))
    if not math.isfinite(norm):
        raise NumericRangeError("non-finite entries in expm input")
    s = 0
    if norm > _PADE13_THETA:
        s = int(math.ceil(math.log2(norm / _PADE13_THETA)))
        if s > _MAX_SQUARINGS:
            raise NumericRangeError(
                f"expm input norm {norm:.3e} exceeds the scaling budget"
            )
        a = a / (2.0 ** s)

    b = _PADE13_B
    n = a.shape[-1]
    p = a.shape[-3] - 1
    ident = dual_eye(n, p, a.shape[:-3])
    a2 = dual_matmul(a, a)
    a4 = dual_matmul(a2, a2)
    a6 = dual_matmul(a2, a4)
    u = dual_matmul(
        a,
        dual_matmul(a6, b[13] * a6 + b[11] * a4 + b[9] * a2)
        + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * ident,
    )
    v = (
        dual_matmul(a6, b[12] * a6 + b[10] * a4 + b[8] * a2)
        + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * ident
    )
    r = dual_solve(v - u, v + u)
    for _ in range(s):
        r = dual_matmul(r, r)
    if not np.all(np.isfinite(r)):
        raise NumericRangeError("expm produced non-finite entries")
    return r


def expm(a: np.ndarray) -> np.ndarray:
    """Plain (non-dual) matrix exponential via the same kernel."""
    return expm_dual(np.asarray(a, dtype=complex)[..., None, :, :])[..., 0, :, :]


# ---------------------------------------------------------------------------
# thin object wrapper for single dual matrices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DualMatrix:
    """A square complex matrix with first-order partials, wrapping a stack."""

    data: np.ndarray  # shape (p+1, n, n)

    @staticmethod
    def constant(value: np.ndarray, ndirections: int) -> "DualMatrix":
        value = np.asarray(value, dtype=complex)
        stack = np.zeros((ndirections + 1,) + value.shape, dtype=complex)
        stack[0] = value
        return DualMatrix(stack)

    @staticmethod
    def seeded(value: np.ndarray, partials) -> "DualMatrix":
        value = np.asarray(value, dtype=complex)
        stack = np.stack([value] + [np.asarray(p, dtype=complex) for p in partials])
        return DualMatrix(stack)

    @property
    def value(self) -> np.ndarray:
        return self.data[0]

    @property
    def partials(self) -> np.ndarray:
        return self.data[1:]

    def __matmul__(self, other: "DualMatrix") -> "DualMatrix":
        return DualMatrix(dual_matmul(self.data, other.data))

    def __add__(self, other: "DualMatrix") -> "DualMatrix":
        return DualMatrix(self.data + other.data)

    def __sub__(self, other: "DualMatrix") -> "DualMatrix":
        return DualMatrix(self.data - other.data)

    def __mul__(self, scalar) -> "DualMatrix":
        return DualMatrix(self.data * scalar)

    __rmul__ = __mul__

    def inverse(self) -> "DualMatrix":
        return DualMatrix(dual_inverse(self.data))


def mat_exp(a: DualMatrix) -> DualMatrix:
    """Exponential of a dual matrix, partials propagated."""
    return DualMatrix(expm_dual(a.data))
