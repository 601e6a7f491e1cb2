"""Core model: physical constants, scalar potentials, grids and the
reality audit for external couplings.

A Majorana fermion in 1+1 dimensions is a two-component *real* spinor.
Hermiticity plus reality of the Hamiltonian force three of the four
possible static couplings (electric/gauge pair and pseudoscalar) to
vanish identically; only a scalar potential phi(x) survives, entering
through the superpotential W(x) = m c^2 + phi(x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import expressions
from .errors import (
    DegenerateFunctionError,
    EvaluationError,
    GridMismatchError,
)

# Unit-norm snap threshold: functions whose squared norm is already this
# close to 1 are returned unscaled, which makes normalize() idempotent.
_UNIT_NORM_SNAP = 1e-12


@dataclass(frozen=True)
class PhysicalParams:
    """Mass and the two dimensionful constants, kept symbolic so both
    natural-unit and dimensionful runs work unchanged."""

    mass: float = 1.0
    c: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if self.mass < 0:
            raise ValueError(f"mass must be non-negative, got {self.mass}")
        if self.c <= 0 or self.hbar <= 0:
            raise ValueError("c and hbar must be positive")

    @property
    def rest_energy(self) -> float:
        return self.mass * self.c**2


@dataclass(frozen=True)
class GridSpec:
    """Uniform 1D grid on [x_min, x_max] with n_points samples."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError(f"need x_min < x_max, got [{self.x_min}, {self.x_max}]")
        if self.n_points < 3:
            raise ValueError(f"need at least 3 grid points, got {self.n_points}")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)


@dataclass(frozen=True, eq=False)
class GridFunction:
    """Real samples of a function on a GridSpec. Immutable."""

    spec: GridSpec
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.shape != (self.spec.n_points,):
            raise ValueError(
                f"expected {self.spec.n_points} samples, got shape {values.shape}"
            )
        if not np.all(np.isfinite(values)):
            bad = int(np.flatnonzero(~np.isfinite(values))[0])
            x_bad = self.spec.points()[bad]
            raise EvaluationError(f"non-finite sample at x={x_bad!r}")
        values = values.copy()
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def x(self) -> np.ndarray:
        return self.spec.points()


class ScalarPotential:
    """Base class for the static scalar coupling phi(x)."""

    kind = "abstract"

    def evaluate(self, x):
        raise NotImplementedError

    def derivative(self, x, step: float | None = None):
        """d(phi)/dx; analytic for built-ins, central difference for
        expression-defined potentials (step = grid spacing)."""
        raise NotImplementedError

    def describe(self) -> dict:
        raise NotImplementedError

    def __call__(self, x):
        return self.evaluate(x)

    def _check(self, x, values):
        values = np.asarray(values, dtype=float)
        finite = np.isfinite(values)
        if not np.all(finite):
            if values.ndim == 0:
                raise EvaluationError(f"potential {self.kind!r} is non-finite at x={x!r}")
            bad = int(np.flatnonzero(~finite)[0])
            x_bad = np.asarray(x, dtype=float).ravel()[bad]
            raise EvaluationError(f"potential {self.kind!r} is non-finite at x={x_bad!r}")
        return values if values.ndim else float(values)


@dataclass(frozen=True)
class LinearPotential(ScalarPotential):
    """phi(x) = k x. k = 0 gives the free case."""

    k: float
    kind = "linear"

    def evaluate(self, x):
        return self._check(x, self.k * np.asarray(x, dtype=float))

    def derivative(self, x, step=None):
        return np.full_like(np.asarray(x, dtype=float), self.k) if np.ndim(x) else self.k

    def describe(self):
        return {"kind": self.kind, "k": self.k}


@dataclass(frozen=True)
class PoschlTellerPotential(ScalarPotential):
    """phi(x) = depth * tanh(width * x)."""

    depth: float
    width: float = 1.0
    kind = "poschl_teller"

    def evaluate(self, x):
        return self._check(x, self.depth * np.tanh(self.width * np.asarray(x, dtype=float)))

    def derivative(self, x, step=None):
        z = self.width * np.asarray(x, dtype=float)
        return self.depth * self.width / np.cosh(z) ** 2

    def describe(self):
        return {"kind": self.kind, "depth": self.depth, "width": self.width}


@dataclass(frozen=True)
class RosenMorsePotential(ScalarPotential):
    """phi(x) = a * tanh(alpha x) + b."""

    a: float
    b: float
    alpha: float = 1.0
    kind = "rosen_morse"

    def evaluate(self, x):
        z = self.alpha * np.asarray(x, dtype=float)
        return self._check(x, self.a * np.tanh(z) + self.b)

    def derivative(self, x, step=None):
        z = self.alpha * np.asarray(x, dtype=float)
        return self.a * self.alpha / np.cosh(z) ** 2

    def describe(self):
        return {"kind": self.kind, "a": self.a, "b": self.b, "alpha": self.alpha}


@dataclass(frozen=True)
class ScarfPotential(ScalarPotential):
    """phi(x) = a * tanh(alpha x) + b * sech(alpha x)."""

    a: float
    b: float
    alpha: float = 1.0
    kind = "scarf"

    def evaluate(self, x):
        z = self.alpha * np.asarray(x, dtype=float)
        return self._check(x, self.a * np.tanh(z) + self.b / np.cosh(z))

    def derivative(self, x, step=None):
        z = self.alpha * np.asarray(x, dtype=float)
        sech = 1.0 / np.cosh(z)
        return self.alpha * (self.a * sech**2 - self.b * sech * np.tanh(z))

    def describe(self):
        return {"kind": self.kind, "a": self.a, "b": self.b, "alpha": self.alpha}


class CustomPotential(ScalarPotential):
    """Potential defined by a parsed expression tree.

    No symbolic differentiation: the derivative is a central difference
    whose step must be supplied by the caller (use the grid spacing).
    """

    kind = "custom"

    def __init__(self, source: str, parameters: dict[str, float] | None = None):
        self.parameters = dict(parameters or {})
        self.tree = expressions.parse_potential(source, frozenset(self.parameters))
        self.source = expressions.to_source(self.tree)

    def evaluate(self, x):
        return self._check(x, expressions.evaluate(self.tree, x, self.parameters))

    def derivative(self, x, step: float | None = None):
        if step is None or step <= 0:
            raise ValueError("custom potentials need an explicit finite-difference step")
        xp = np.asarray(x, dtype=float)
        return (self.evaluate(xp + step) - self.evaluate(xp - step)) / (2.0 * step)

    def describe(self):
        out = {"kind": self.kind, "expression": self.source}
        if self.parameters:
            out["parameters"] = dict(sorted(self.parameters.items()))
        return out


def zero_potential() -> CustomPotential:
    return CustomPotential("0")


def sample(spec: GridSpec, f) -> GridFunction:
    """Sample a potential or plain callable on a grid."""
    x = spec.points()
    values = f.evaluate(x) if isinstance(f, ScalarPotential) else f(x)
    return GridFunction(spec, np.asarray(values, dtype=float))


def superpotential(p: PhysicalParams, phi: ScalarPotential, x):
    """W(x) = m c^2 + phi(x); the generator of the ladder operators."""
    return p.rest_energy + phi.evaluate(x)


def inner_product(f: GridFunction, g: GridFunction) -> float:
    """Trapezoidal approximation of the L2 pairing on the shared grid."""
    if f.spec != g.spec:
        raise GridMismatchError(f"grids differ: {f.spec} vs {g.spec}")
    prod = f.values * g.values
    return float(f.spec.h * (prod.sum() - 0.5 * (prod[0] + prod[-1])))


def norm(f: GridFunction) -> float:
    return math.sqrt(max(inner_product(f, f), 0.0))


def normalize(f: GridFunction) -> GridFunction:
    """Scale to unit trapezoidal norm and fix the overall sign so the
    entry of largest magnitude is positive (first such entry on ties)."""
    n2 = inner_product(f, f)
    if n2 <= 0.0:
        raise DegenerateFunctionError("cannot normalize a zero-norm function")
    values = f.values if abs(n2 - 1.0) <= _UNIT_NORM_SNAP else f.values / math.sqrt(n2)
    peak = int(np.argmax(np.abs(values)))
    if values[peak] < 0:
        values = -values
    return GridFunction(f.spec, values)


@dataclass(frozen=True)
class CouplingSet:
    """Coefficients of the four matrix channels a static external field
    could occupy: f1/f4 gauge pair, f2 scalar, f3 pseudoscalar."""

    f1: ScalarPotential
    f2: ScalarPotential
    f3: ScalarPotential
    f4: ScalarPotential


@dataclass(frozen=True)
class CouplingAudit:
    compatible: bool
    offending: tuple[tuple[str, float], ...]
    max_abs: dict[str, float]


def majorana_compatible(cs: CouplingSet, grid: GridSpec, tol: float = 0.0) -> CouplingAudit:
    """Check that a coupling set survives the reality constraint.

    Reality of the spinor forces f1 = f3 = f4 = 0; only the scalar
    channel f2 may be nonzero. A channel fails when its max absolute
    value on the grid exceeds ``tol``.
    """
    x = grid.points()
    max_abs = {}
    offending = []
    for name in ("f1", "f2", "f3", "f4"):
        values = getattr(cs, name).evaluate(x)
        max_abs[name] = float(np.max(np.abs(values)))
    for name in ("f1", "f3", "f4"):
        if max_abs[name] > tol:
            offending.append((name, max_abs[name]))
    return CouplingAudit(
        compatible=not offending, offending=tuple(offending), max_abs=max_abs
    )
