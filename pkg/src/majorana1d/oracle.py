"""Brute-force spectral ground truth.

The partner Hamiltonians H_∓ = -(c ħ)^2 d²/dx² + V_∓ are discretized
with the 3-point Laplacian on the interior points of a uniform grid
(Dirichlet-zero truncation) and diagonalized with a symmetric
tridiagonal eigensolver. Everything the algebraic machinery produces is
checked against these numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .errors import DiscretizationError
from .model import GridFunction, GridSpec, PhysicalParams, normalize


class Sector(str, Enum):
    MINUS = "minus"
    PLUS = "plus"


@dataclass(frozen=True, eq=False)
class TridiagonalOperator:
    """Symmetric tridiagonal matrix acting on interior grid values."""

    diagonal: np.ndarray = field(repr=False)
    off_diagonal: np.ndarray = field(repr=False)
    spec: GridSpec
    sector: Sector

    @property
    def dim(self) -> int:
        return self.diagonal.shape[0]

    def matvec(self, v: np.ndarray) -> np.ndarray:
        out = self.diagonal * v
        out[:-1] += self.off_diagonal * v[1:]
        out[1:] += self.off_diagonal * v[:-1]
        return out

    def norm_bound(self) -> float:
        """Max absolute row sum, an upper bound on the spectral norm."""
        row = np.abs(self.diagonal).astype(float)
        row[:-1] += np.abs(self.off_diagonal)
        row[1:] += np.abs(self.off_diagonal)
        return float(row.max())


@dataclass(frozen=True, eq=False)
class Eigenpair:
    """One bound level: its energy-squared eigenvalue and eigenfunction
    (zero at the truncated boundaries, unit trapezoidal norm)."""

    energy_squared: float
    eigenfunction: GridFunction
    n: int
    sector: Sector

    @property
    def energy(self) -> float:
        return math.sqrt(max(self.energy_squared, 0.0))


def discretize(
    p: PhysicalParams, v: GridFunction, sector: Sector = Sector.MINUS
) -> TridiagonalOperator:
    """3-point discretization of -(c ħ)² d²/dx² + V with Dirichlet-zero
    boundaries; the matrix acts on the n_points - 2 interior values."""
    spec = v.spec
    if spec.n_points < 5:
        raise ValueError("discretization needs at least 5 grid points")
    kin = (p.c * p.hbar) ** 2 / spec.h**2
    diagonal = 2.0 * kin + v.values[1:-1]
    off_diagonal = np.full(spec.n_points - 3, -kin)
    return TridiagonalOperator(diagonal, off_diagonal, spec, sector)


def eigensolve(op: TridiagonalOperator, k: int) -> list[Eigenpair]:
    """The k smallest eigenpairs, by bisection + inverse iteration.

    Deterministic; eigenfunctions are zero-padded onto the full grid,
    normalized, and sign-fixed.
    """
    if not 1 <= k <= op.dim:
        raise ValueError(f"k must be in [1, {op.dim}], got {k}")
    values, vectors = eigh_tridiagonal(
        op.diagonal, op.off_diagonal, select="i", select_range=(0, k - 1)
    )
    if np.any(np.diff(values) <= 0):
        raise DiscretizationError("eigenvalues not strictly increasing")
    pairs = []
    for i in range(k):
        padded = np.zeros(op.spec.n_points)
        padded[1:-1] = vectors[:, i]
        pairs.append(
            Eigenpair(
                energy_squared=float(values[i]),
                eigenfunction=normalize(GridFunction(op.spec, padded)),
                n=i,
                sector=op.sector,
            )
        )
    return pairs


def energy_from_lambda(lam: float, tol: float = 1e-9) -> float:
    """E = sqrt(λ) with a clamp for slightly negative eigenvalues.

    H_∓ are squares of first-order operators, so a λ below -tol means
    the discretization failed rather than a genuine level.
    """
    if lam < -tol:
        raise DiscretizationError(
            f"eigenvalue {lam} < -{tol}: operator should be positive semi-definite"
        )
    return math.sqrt(max(lam, 0.0))


@dataclass(frozen=True)
class LevelMatch:
    n: int
    energy_plus: float
    energy_minus_next: float
    abs_diff: float


@dataclass(frozen=True)
class IsospectralReport:
    entries: tuple[LevelMatch, ...]
    tol: float
    passed: bool

    @property
    def max_diff(self) -> float:
        return max((e.abs_diff for e in self.entries), default=0.0)


def verify_isospectral(
    minus: list[Eigenpair],
    plus: list[Eigenpair],
    tol: float,
    clamp_tol: float = 1e-3,
) -> IsospectralReport:
    """Check the partner-spectrum interlacing E+_n = E-_{n+1} for all
    comparable levels of two sorted eigenpair lists."""
    entries = []
    for n in range(min(len(plus), len(minus) - 1)):
        e_plus = energy_from_lambda(plus[n].energy_squared, clamp_tol)
        e_minus = energy_from_lambda(minus[n + 1].energy_squared, clamp_tol)
        entries.append(LevelMatch(n, e_plus, e_minus, abs(e_plus - e_minus)))
    passed = all(e.abs_diff <= tol for e in entries)
    return IsospectralReport(tuple(entries), tol, passed)
