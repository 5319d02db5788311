"""Uniform grids, sampled fields, finite differences and quadrature."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Literal

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator
from scipy.integrate import simpson

from darboux_lab.utils.errors import (
    GridMismatch,
    GridTooCoarse,
    InvalidSamples,
    TimeMismatch,
    ZeroNorm,
)
from darboux_lab.utils.logger import get_logger

logger = get_logger(__name__)

DERIVATIVE_TOLERANCE = 1e-5
ZERO_NORM = 1e-12
_TIME_MATCH = 1e-12

QuadratureRule = Literal["trapezoid", "simpson"]


class Grid1D(BaseModel):
    """Uniform grid on [x_min, x_max] with n_points samples."""

    model_config = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

    x_min: float = -20.0
    x_max: float = 20.0
    n_points: int = Field(default=2001, ge=16)

    @model_validator(mode="after")
    def _ordered(self) -> "Grid1D":
        if not self.x_min < self.x_max:
            raise ValueError(f"x_min ({self.x_min}) must be below x_max ({self.x_max})")
        return self

    @property
    def spacing(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def points(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def refined(self) -> "Grid1D":
        """Same interval with half the spacing."""
        return Grid1D(x_min=self.x_min, x_max=self.x_max, n_points=2 * self.n_points - 1)

    def widened(self, factor: float = 1.25) -> "Grid1D":
        """Interval grown about its center by ``factor`` at (almost) the same spacing."""
        center = 0.5 * (self.x_min + self.x_max)
        half = 0.5 * (self.x_max - self.x_min) * factor
        intervals = int(np.ceil(2.0 * half / self.spacing))
        return Grid1D(x_min=center - half, x_max=center + half, n_points=intervals + 1)

    @classmethod
    def around(cls, center: float, half_width: float, spacing: float) -> "Grid1D":
        intervals = int(np.ceil(2.0 * half_width / spacing))
        return cls(x_min=center - half_width, x_max=center + half_width, n_points=intervals + 1)


@dataclass(frozen=True)
class StateField:
    """Complex wavefunction sampled on a grid at one time."""

    grid: Grid1D
    values: np.ndarray
    time: float
    norm_hint: float | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=complex)
        if values.shape != (self.grid.n_points,):
            raise InvalidSamples(
                f"values have shape {values.shape}, grid has {self.grid.n_points} points"
            )
        if not np.all(np.isfinite(values)):
            raise InvalidSamples("field values must be finite")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def sample(
        cls,
        evaluator: Callable[[np.ndarray, float], np.ndarray],
        grid: Grid1D,
        t: float,
        normalized: bool = False,
    ) -> "StateField":
        """Evaluate ``evaluator(x, t)`` on the grid; optionally record its norm."""
        values = evaluator(grid.points, t)
        state = cls(grid=grid, values=values, time=float(t))
        if normalized:
            return state.with_values(state.values, norm_hint=state.norm())
        return state

    def with_values(self, values: np.ndarray, norm_hint: float | None = None) -> "StateField":
        return StateField(grid=self.grid, values=values, time=self.time, norm_hint=norm_hint)

    def norm(self) -> float:
        return float(np.sqrt(quadrature(np.abs(self.values) ** 2, self.grid.spacing).real))

    def density(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    def boundary_amplitude(self) -> float:
        """Largest edge magnitude relative to the field maximum."""
        peak = np.max(np.abs(self.values))
        if peak == 0.0:
            return 0.0
        return float(max(abs(self.values[0]), abs(self.values[-1])) / peak)


def quadrature(values: np.ndarray, dx: float, rule: QuadratureRule = "trapezoid") -> complex:
    """Integrate uniformly sampled values along the last axis."""
    if rule == "trapezoid":
        return np.trapezoid(values, dx=dx, axis=-1)
    if rule == "simpson":
        return simpson(values, dx=dx, axis=-1)
    raise ValueError(f"Unknown quadrature rule {rule!r}")


def trapezoid_weights(grid: Grid1D) -> np.ndarray:
    weights = np.full(grid.n_points, grid.spacing)
    weights[0] = weights[-1] = 0.5 * grid.spacing
    return weights


def derivative(values: np.ndarray, dx: float, order: int = 1) -> np.ndarray:
    """Fourth-order finite-difference derivative (order 1 or 2) along the last axis.

    Central five-point stencils in the interior, one-sided closures of the same
    order on the two outermost points at each edge.
    """
    f = np.asarray(values)
    if f.shape[-1] < 6:
        raise GridTooCoarse("at least six samples are needed for fourth-order stencils")
    out = np.empty_like(f, dtype=np.result_type(f.dtype, float))
    if order == 1:
        out[..., 2:-2] = (-f[..., 4:] + 8.0 * f[..., 3:-1] - 8.0 * f[..., 1:-3] + f[..., :-4]) / (
            12.0 * dx
        )
        out[..., 0] = (
            -25.0 * f[..., 0] + 48.0 * f[..., 1] - 36.0 * f[..., 2] + 16.0 * f[..., 3] - 3.0 * f[..., 4]
        ) / (12.0 * dx)
        out[..., 1] = (
            -3.0 * f[..., 0] - 10.0 * f[..., 1] + 18.0 * f[..., 2] - 6.0 * f[..., 3] + f[..., 4]
        ) / (12.0 * dx)
        out[..., -1] = (
            25.0 * f[..., -1] - 48.0 * f[..., -2] + 36.0 * f[..., -3] - 16.0 * f[..., -4] + 3.0 * f[..., -5]
        ) / (12.0 * dx)
        out[..., -2] = (
            3.0 * f[..., -1] + 10.0 * f[..., -2] - 18.0 * f[..., -3] + 6.0 * f[..., -4] - f[..., -5]
        ) / (12.0 * dx)
        return out
    if order == 2:
        h2 = 12.0 * dx * dx
        out[..., 2:-2] = (
            -f[..., 4:] + 16.0 * f[..., 3:-1] - 30.0 * f[..., 2:-2] + 16.0 * f[..., 1:-3] - f[..., :-4]
        ) / h2
        for edge, step in ((0, 1), (-1, -1)):
            i = [edge + step * k for k in range(6)]
            out[..., i[0]] = (
                45.0 * f[..., i[0]]
                - 154.0 * f[..., i[1]]
                + 214.0 * f[..., i[2]]
                - 156.0 * f[..., i[3]]
                + 61.0 * f[..., i[4]]
                - 10.0 * f[..., i[5]]
            ) / h2
            out[..., i[1]] = (
                10.0 * f[..., i[0]]
                - 15.0 * f[..., i[1]]
                - 4.0 * f[..., i[2]]
                + 14.0 * f[..., i[3]]
                - 6.0 * f[..., i[4]]
                + f[..., i[5]]
            ) / h2
        return out
    raise ValueError(f"Only first and second derivatives are supported, got order {order}")


def third_derivative(values: np.ndarray, dx: float) -> np.ndarray:
    """Central second-order third derivative on interior points (two points lost per edge)."""
    f = np.asarray(values)
    return (f[..., 4:] - 2.0 * f[..., 3:-1] + 2.0 * f[..., 1:-3] - f[..., :-4]) / (2.0 * dx**3)


def derivative_error(values: np.ndarray, dx: float, order: int = 1) -> float:
    """Richardson estimate of the relative error of ``derivative`` on these samples.

    The derivative on every other sample (spacing 2*dx) carries about sixteen times
    the error of the full-resolution one; their difference over fifteen estimates it.
    """
    f = np.asarray(values)
    fine = derivative(f, dx, order)[..., ::2]
    coarse = derivative(f[..., ::2], 2.0 * dx, order)
    interior = slice(2, -2)
    scale = np.linalg.norm(fine[..., interior])
    if scale == 0.0:
        return 0.0
    return float(np.linalg.norm((coarse - fine)[..., interior]) / (15.0 * scale))


def checked_derivative(
    state: StateField, order: int = 1, tolerance: float = DERIVATIVE_TOLERANCE
) -> np.ndarray:
    """Derivative of a field, refusing grids whose estimated error exceeds ``tolerance``.

    Raises:
        GridTooCoarse: If the Richardson error estimate is above tolerance.
    """
    dx = state.grid.spacing
    estimate = derivative_error(state.values, dx, order)
    if estimate > tolerance:
        raise GridTooCoarse(
            f"estimated derivative error {estimate:.2e} exceeds {tolerance:.0e} at dx = {dx}"
        )
    return derivative(state.values, dx, order)


def _check_compatible(f: StateField, g: StateField) -> None:
    if f.grid != g.grid:
        raise GridMismatch(f"fields live on different grids: {f.grid} vs {g.grid}")
    if abs(f.time - g.time) > _TIME_MATCH * max(1.0, abs(f.time)):
        raise TimeMismatch(
            f"inner products need equal times, got t = {f.time} and t = {g.time}"
        )


def inner_product(f: StateField, g: StateField, rule: QuadratureRule = "trapezoid") -> complex:
    """<f|g> = integral of conj(f) g dx, conjugate-linear in the first argument.

    Raises:
        GridMismatch: If the grids differ.
        TimeMismatch: If the fields belong to different times.
    """
    _check_compatible(f, g)
    return complex(quadrature(np.conj(f.values) * g.values, f.grid.spacing, rule))


@dataclass(frozen=True)
class GramReport:
    matrix: np.ndarray
    deviation: float


def gram_matrix(fields: list[StateField]) -> GramReport:
    """Matrix of pairwise inner products and its sup-norm distance from the identity."""
    if not fields:
        raise ValueError("gram_matrix needs at least one field")
    for other in fields[1:]:
        _check_compatible(fields[0], other)
    stacked = np.stack([f.values for f in fields])
    weights = trapezoid_weights(fields[0].grid)
    matrix = (np.conj(stacked) * weights) @ stacked.T
    deviation = float(np.max(np.abs(matrix - np.eye(len(fields)))))
    return GramReport(matrix=matrix, deviation=deviation)


def rayleigh_quotient(
    operator_applier: Callable[[StateField], StateField], state: StateField
) -> complex:
    """<f|O f> / <f|f>.

    Raises:
        ZeroNorm: If the field norm is below 1e-12.
    """
    norm = state.norm()
    if norm <= ZERO_NORM:
        raise ZeroNorm(f"field norm {norm:.2e} is too small for a Rayleigh quotient")
    return inner_product(state, operator_applier(state)) / norm**2


def ensure_decay(
    grid: Grid1D,
    evaluator: Callable[[np.ndarray, float], np.ndarray],
    t: float,
    threshold: float = 1e-13,
    max_steps: int = 8,
) -> Grid1D:
    """Widen ``grid`` until the sampled field is below ``threshold`` at both edges."""
    for _ in range(max_steps):
        state = StateField.sample(evaluator, grid, t)
        if state.boundary_amplitude() <= threshold:
            return grid
        logger.warning(
            f"Boundary amplitude {state.boundary_amplitude():.1e} at t = {t}; widening grid"
        )
        grid = grid.widened()
    return grid
