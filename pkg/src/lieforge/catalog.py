"""Algebra bases for the classical families su(n), so(n), sp(n).

Every stored generator X_a is anti-Hermitian and normalized so that
Tr(X_a^dag X_b) = (1/2) delta_ab.  With the metric constant k = 2 this makes
the group metric equal the identity at the origin of the exponential chart
for every family, so Einstein constants are comparable across a scan.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError

GRAM_CONSTANT = 0.5


@dataclass(frozen=True)
class GroupSpec:
    family: str  # "SU" | "SO" | "Sp"
    n: int
    matrix_size: int
    dim: int
    generators: np.ndarray  # (dim, matrix_size, matrix_size), complex
    name: str = field(default="")

    def __post_init__(self):
        if not self.name:
            object.__setattr__(self, "name", f"{self.family.lower()}{self.n}")


@dataclass(frozen=True)
class StructureConstants:
    """f[a, b, c] defined by [X_a, X_b] = sum_c f_abc X_c."""

    f: np.ndarray


def _normalize(x: np.ndarray) -> np.ndarray:
    scale = np.sqrt(GRAM_CONSTANT / np.real(np.trace(x.conj().T @ x)))
    return x * scale


def _gell_mann(n: int) -> list[np.ndarray]:
    """Generalized Gell-Mann matrices (Hermitian, Tr(l_a l_b) = 2 delta_ab)."""
    mats = []
    for j in range(n):
        for k in range(j + 1, n):
            sym = np.zeros((n, n), dtype=complex)
            sym[j, k] = sym[k, j] = 1.0
            mats.append(sym)
            asym = np.zeros((n, n), dtype=complex)
            asym[j, k] = -1j
            asym[k, j] = 1j
            mats.append(asym)
    for l in range(1, n):
        diag = np.zeros((n, n), dtype=complex)
        for m in range(l):
            diag[m, m] = 1.0
        diag[l, l] = -l
        mats.append(diag * np.sqrt(2.0 / (l * (l + 1))))
    return mats


def _su_generators(n: int) -> list[np.ndarray]:
    return [0.5j * lam for lam in _gell_mann(n)]


def _so_generators(n: int) -> list[np.ndarray]:
    gens = []
    for j in range(n):
        for k in range(j + 1, n):
            x = np.zeros((n, n), dtype=complex)
            x[j, k] = 0.5
            x[k, j] = -0.5
            gens.append(x)
    return gens


def _sp_generators(n: int) -> list[np.ndarray]:
    """Compact symplectic algebra sp(n) = u(2n) intersect sp(2n, C).

    Block form X = [[A, B], [-conj(B), conj(A)]] with A anti-Hermitian and
    B complex symmetric, acting on C^{2n}.
    """
    def embed_a(a):
        x = np.zeros((2 * n, 2 * n), dtype=complex)
        x[:n, :n] = a
        x[n:, n:] = a.conj()
        return x

    def embed_b(b):
        x = np.zeros((2 * n, 2 * n), dtype=complex)
        x[:n, n:] = b
        x[n:, :n] = -b.conj()
        return x

    gens = []
    for j in range(n):
        a = np.zeros((n, n), dtype=complex)
        a[j, j] = 1j
        gens.append(embed_a(a))
    for j in range(n):
        for k in range(j + 1, n):
            a = np.zeros((n, n), dtype=complex)
            a[j, k] = 1.0
            a[k, j] = -1.0
            gens.append(embed_a(a))
            a = np.zeros((n, n), dtype=complex)
            a[j, k] = 1j
            a[k, j] = 1j
            gens.append(embed_a(a))
    for j in range(n):
        for k in range(j, n):
            b = np.zeros((n, n), dtype=complex)
            b[j, k] = b[k, j] = 1.0
            gens.append(embed_b(b))
            b = np.zeros((n, n), dtype=complex)
            b[j, k] = b[k, j] = 1j
            gens.append(embed_b(b))
    return gens


def symplectic_form(n: int) -> np.ndarray:
    """Standard block-antisymmetric form J preserved by sp(n) generators."""
    j = np.zeros((2 * n, 2 * n), dtype=complex)
    j[:n, n:] = np.eye(n)
    j[n:, :n] = -np.eye(n)
    return j


_FAMILIES = {
    "SU": dict(min_n=2, dim=lambda n: n * n - 1, size=lambda n: n, build=_su_generators),
    "SO": dict(min_n=3, dim=lambda n: n * (n - 1) // 2, size=lambda n: n, build=_so_generators),
    "Sp": dict(min_n=1, dim=lambda n: n * (2 * n + 1), size=lambda n: 2 * n, build=_sp_generators),
}


def make_group(family: str, n: int) -> GroupSpec:
    """Build the algebra basis for one classical group."""
    fam = {"su": "SU", "so": "SO", "sp": "Sp"}.get(family.lower())
    if fam is None:
        raise InvalidInputError(f"unknown group family {family!r}")
    info = _FAMILIES[fam]
    if n < info["min_n"]:
        raise InvalidInputError(f"{fam}({n}) not supported: need n >= {info['min_n']}")
    gens = np.stack([_normalize(x) for x in info["build"](n)])
    dim = info["dim"](n)
    if len(gens) != dim:
        raise AssertionError(f"generator count {len(gens)} != dim {dim} for {fam}({n})")
    return GroupSpec(family=fam, n=n, matrix_size=info["size"](n), dim=dim, generators=gens)


_NAME_RE = re.compile(r"^(su|so|sp)(\d+)$")


def parse_group_name(name: str) -> GroupSpec:
    """Parse CLI group names of the form su2, so4, sp1."""
    m = _NAME_RE.match(name.strip().lower())
    if not m:
        raise InvalidInputError(
            f"bad group name {name!r}: expected e.g. su2, so3, sp1"
        )
    return make_group(m.group(1), int(m.group(2)))


def structure_constants(spec: GroupSpec) -> StructureConstants:
    """f_abc from commutators projected on the orthogonal generator basis."""
    x = spec.generators
    comm = np.einsum("aij,bjk->abik", x, x) - np.einsum("bij,ajk->abik", x, x)
    # Tr(X_c^dag [X_a, X_b]) / (1/2)
    f = np.real(np.einsum("cji,abji->abc", x.conj(), comm)) / GRAM_CONSTANT
    return StructureConstants(f=f)
