"""Checks of the Ermakov amplitude, the Riccati function, theta and the packet trajectory."""

import math

import numpy as np

from darboux_lab.checks.base import CheckContext, check
from darboux_lab.physics.classical import (
    alpha_state,
    classical_energy,
    ermakov_residual,
    riccati_residual,
    s_complex,
    theta,
    theta_closed_form,
    trajectory,
    variance_x,
)

SAMPLES = 1000
FD_STEP = 1e-5


def _sample_times(ctx: CheckContext) -> np.ndarray:
    """1000 instants over two periods 4 pi/omega0 of alpha."""
    period = 2.0 * math.pi / ctx.model.omega0
    return np.linspace(ctx.t0, ctx.t0 + 2.0 * period, SAMPLES)


@check(tolerance=1e-9)
def ermakov_equation(ctx: CheckContext) -> float:
    """Largest residual of alpha'' + omega0**2 alpha - kappa**2/alpha**3."""
    return float(np.max(np.abs(ermakov_residual(ctx.model, _sample_times(ctx)))))


@check(tolerance=1e-8)
def riccati_equation(ctx: CheckContext) -> float:
    """Riccati residual of S with S' by central differences."""
    residual = riccati_residual(ctx.model, _sample_times(ctx), step=FD_STEP)
    return float(np.max(np.abs(residual)))


@check(tolerance=1e-12)
def riccati_equation_analytic(ctx: CheckContext) -> float:
    return float(np.max(np.abs(riccati_residual(ctx.model, _sample_times(ctx)))))


@check(tolerance=1e-7)
def theta_branch_agreement(ctx: CheckContext) -> float:
    """Distance modulo pi between the integral and the arctan forms of theta."""
    times = _sample_times(ctx)
    gap = np.asarray(theta(ctx.model, times)) - theta_closed_form(ctx.model, times)
    wrapped = np.mod(gap + 0.5 * math.pi, math.pi) - 0.5 * math.pi
    return float(np.max(np.abs(wrapped)))


@check(tolerance=1e-12)
def ermakov_parameter_identity(ctx: CheckContext) -> float:
    """Relative error of a c - b**2 = (2 hbar lambda/(m omega0))**2."""
    model = ctx.model
    threshold = (2.0 * model.hbar * model.lam / (model.m * model.omega0)) ** 2
    return abs(model.a * model.c - model.b**2 - threshold) / threshold


@check(tolerance=1e-12)
def imaginary_part_of_s(ctx: CheckContext) -> float:
    """alpha**2 Im S equals lambda at every sample."""
    times = _sample_times(ctx)
    alpha, _ = alpha_state(ctx.model, times)
    return float(np.max(np.abs(alpha**2 * s_complex(ctx.model, times).imag - ctx.model.lam)))


@check(tolerance=1e-12)
def trajectory_energy(ctx: CheckContext) -> float:
    """Relative energy drift of each packet centre along its orbit."""
    times = _sample_times(ctx)
    params = ctx.model.params
    drift = 0.0
    for traj in ctx.trajectories:
        x, p = trajectory(params, traj, times)
        energy = classical_energy(params, x, p)
        reference = float(classical_energy(params, traj.x0, traj.p0))
        if reference == 0.0:
            drift = max(drift, float(np.max(np.abs(energy))))
        else:
            drift = max(drift, float(np.max(np.abs(energy - reference))) / reference)
    return drift


@check(tolerance=1e-10)
def trajectory_period(ctx: CheckContext) -> float:
    """Return of each packet centre to its initial point after 2 pi/omega0."""
    period = 2.0 * math.pi / ctx.model.omega0
    gap = 0.0
    for traj in ctx.trajectories:
        x, p = trajectory(ctx.model.params, traj, ctx.t0 + period)
        gap = max(gap, abs(float(x) - traj.x0), abs(float(p) - traj.p0))
    return gap


@check(tolerance=1e-10)
def variance_period(ctx: CheckContext) -> float:
    """Relative change of the position variance over pi/omega0, the period of alpha**2."""
    times = _sample_times(ctx)
    later = variance_x(ctx.model, times + math.pi / ctx.model.omega0)
    current = variance_x(ctx.model, times)
    return float(np.max(np.abs(later - current)) / np.max(current))

classical_checks = [
    ermakov_equation,
    riccati_equation,
    riccati_equation_analytic,
    theta_branch_agreement,
    ermakov_parameter_identity,
    imaginary_part_of_s,
    trajectory_energy,
    trajectory_period,
    variance_period,
]
