"""Finite-difference residuals of the Schrödinger equation and of the intertwining relation."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from darboux_lab.utils.logger import get_logger
from darboux_lab.verify.grid import (
    Grid1D,
    StateField,
    checked_derivative,
    derivative,
)

logger = get_logger(__name__)

Evaluator = Callable[[np.ndarray, float], np.ndarray]
FieldOperator = Callable[[StateField], StateField]

DT_RANGE = (1e-7, 1e-3)
DEFAULT_DT = 1e-5


@dataclass(frozen=True)
class ResidualReport:
    """Residual of a field equation at one grid plus a two-resolution order estimate."""

    abs_residual: float
    rel_residual: float
    dx: float
    dt: float
    convergence_order_estimate: float

    def within(self, tolerance: float) -> bool:
        return self.rel_residual < tolerance


def _check_dt(dt: float) -> None:
    low, high = DT_RANGE
    if not low <= dt <= high:
        raise ValueError(f"dt must lie in [{low}, {high}], got {dt}")


def _l2(values: np.ndarray, dx: float) -> float:
    return float(np.sqrt(np.trapezoid(np.abs(values) ** 2, dx=dx)))


def hamiltonian_action(
    values: np.ndarray, potential: np.ndarray, dx: float, hbar: float, m: float
) -> np.ndarray:
    """-(hbar**2/2m) f'' + V f on grid samples."""
    return -(hbar**2) / (2.0 * m) * derivative(values, dx, order=2) + potential * values


def _schrodinger_action(
    state: Evaluator,
    potential: Evaluator,
    grid: Grid1D,
    t: float,
    dt: float,
    hbar: float,
    m: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Samples of (i hbar d/dt - H) psi and of psi at time t."""
    x = grid.points
    center = state(x, t)
    time_derivative = (state(x, t + dt) - state(x, t - dt)) / (2.0 * dt)
    action = 1j * hbar * time_derivative - hamiltonian_action(
        center, potential(x, t), grid.spacing, hbar, m
    )
    return action, center


def _order(coarse: float, fine: float) -> float:
    if coarse <= 0.0 or fine <= 0.0:
        return math.nan
    return math.log2(coarse / fine)


def schrodinger_residual(
    state: Evaluator,
    potential: Evaluator,
    grid: Grid1D,
    t: float,
    dt: float = DEFAULT_DT,
    hbar: float = 1.0,
    m: float = 1.0,
) -> ResidualReport:
    """Residual of i hbar dpsi/dt = [-(hbar**2/2m) d2/dx2 + V] psi at time t.

    The time derivative is a symmetric difference with step ``dt``; the spatial one
    uses fourth-order stencils. The residual is evaluated on ``grid`` and on the
    refined grid with half its spacing, and log2 of their ratio is reported as
    the observed convergence order.

    Args:
        state: psi(x, t) evaluator.
        potential: V(x, t) evaluator.
        grid: Spatial grid.
        t: Evaluation time.
        dt: Time step in [1e-7, 1e-3].
        hbar: Action constant.
        m: Mass.

    Returns:
        Residual report for ``grid``.

    Raises:
        GridTooCoarse: If the second-derivative error estimate of psi is above tolerance.
    """
    _check_dt(dt)
    checked_derivative(StateField.sample(state, grid, t), order=2)

    residuals = []
    for level in (grid, grid.refined()):
        action, center = _schrodinger_action(state, potential, level, t, dt, hbar, m)
        absolute = _l2(action, level.spacing)
        residuals.append((absolute, absolute / _l2(center, level.spacing)))

    (absolute, relative), (fine_absolute, _) = residuals
    report = ResidualReport(
        abs_residual=absolute,
        rel_residual=relative,
        dx=grid.spacing,
        dt=dt,
        convergence_order_estimate=_order(absolute, fine_absolute),
    )
    logger.debug(f"Schrödinger residual at t={t}: {report}")
    return report


def intertwining_residual(
    field: Evaluator,
    intertwiner: FieldOperator,
    v0: Evaluator,
    v1: Evaluator,
    grid: Grid1D,
    t: float,
    dt: float = DEFAULT_DT,
    hbar: float = 1.0,
    m: float = 1.0,
) -> float:
    """Relative residual ||L(i hbar d/dt - H0) f - (i hbar d/dt - H1) L f|| / ||f||.

    ``f`` need not solve either equation; both sides are assembled independently
    from grid samples at t and t +/- dt, with L applied through ``intertwiner``.
    """
    _check_dt(dt)
    dx = grid.spacing

    before, center = _schrodinger_action(field, v0, grid, t, dt, hbar, m)
    left = intertwiner(StateField(grid=grid, values=before, time=t)).values

    def transformed(x: np.ndarray, tau: float) -> np.ndarray:
        return intertwiner(StateField(grid=grid, values=field(x, tau), time=tau)).values

    right, _ = _schrodinger_action(transformed, v1, grid, t, dt, hbar, m)
    residual = _l2(left - right, dx) / _l2(center, dx)
    logger.debug(f"Intertwining residual at t={t}: {residual:.3e}")
    return residual
