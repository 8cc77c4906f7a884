"""First-order forward-mode dual scalars.

A ``DualScalar`` carries a value and a fixed-length vector of partial
derivatives, one slot per seeded coordinate direction.  Values and partials
may be numpy arrays (broadcast elementwise), so a single expression can be
evaluated over a whole batch of points at once; the partials axis is always
the last one.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class DualScalar:
    """value + sum_a partials[..., a] * eps_a with eps_a*eps_b = 0."""

    value: np.ndarray | float
    partials: np.ndarray

    @staticmethod
    def constant(value, ndirections: int) -> "DualScalar":
        value = np.asarray(value, dtype=float)
        return DualScalar(value, np.zeros(value.shape + (ndirections,)))

    @staticmethod
    def variable(value, direction: int, ndirections: int) -> "DualScalar":
        """Seed coordinate `direction` with unit derivative."""
        value = np.asarray(value, dtype=float)
        partials = np.zeros(value.shape + (ndirections,))
        partials[..., direction] = 1.0
        return DualScalar(value, partials)

    def _coerce(self, other) -> "DualScalar":
        if isinstance(other, DualScalar):
            return other
        return DualScalar.constant(other, self.partials.shape[-1])

    def __add__(self, other):
        other = self._coerce(other)
        return DualScalar(self.value + other.value, self.partials + other.partials)

    __radd__ = __add__

    def __neg__(self):
        return DualScalar(-self.value, -self.partials)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        return DualScalar(
            self.value * other.value,
            np.asarray(self.value)[..., None] * other.partials
            + np.asarray(other.value)[..., None] * self.partials,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        inv = 1.0 / np.asarray(other.value)
        value = self.value * inv
        return DualScalar(
            value,
            inv[..., None] * (self.partials - np.asarray(value)[..., None] * other.partials),
        )

    def __rtruediv__(self, other):
        return self._coerce(other) / self


def _chain(x: DualScalar, value, dvalue) -> DualScalar:
    return DualScalar(value, np.asarray(dvalue)[..., None] * x.partials)


def sin(x: DualScalar) -> DualScalar:
    return _chain(x, np.sin(x.value), np.cos(x.value))


def cos(x: DualScalar) -> DualScalar:
    return _chain(x, np.cos(x.value), -np.sin(x.value))


def sqrt(x: DualScalar) -> DualScalar:
    r = np.sqrt(x.value)
    return _chain(x, r, 0.5 / r)
