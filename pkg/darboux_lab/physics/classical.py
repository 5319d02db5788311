"""Closed-form classical layer: packet center, Ermakov amplitude, phase and Riccati function.

All functions accept scalar or array times and broadcast with numpy.
"""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike
from scipy.integrate import quad

from darboux_lab.models.oscillator import OscillatorParams, TrajectorySpec, ValidatedModel
from darboux_lab.utils.logger import get_logger

logger = get_logger(__name__)

_QUAD_TOL = 1e-13
_QUAD_LIMIT = 200


def _angle(model: ValidatedModel, t: ArrayLike) -> np.ndarray:
    return model.omega0 * (np.asarray(t, dtype=float) - model.t0)


def _alpha_squared(model: ValidatedModel, t: ArrayLike) -> np.ndarray:
    phi = _angle(model, t)
    return (
        model.a * np.cos(phi) ** 2
        + model.b * np.sin(2.0 * phi)
        + model.c * np.sin(phi) ** 2
    )


def alpha_state(model: ValidatedModel, t: ArrayLike) -> tuple[np.ndarray, np.ndarray]:
    """Ermakov amplitude and its time derivative.

    Args:
        model: Validated oscillator model.
        t: Time or array of times.

    Returns:
        Tuple (alpha, alpha_dot) with alpha > 0.
    """
    phi = _angle(model, t)
    alpha = np.sqrt(_alpha_squared(model, t))
    d_alpha_sq = model.omega0 * (
        (model.c - model.a) * np.sin(2.0 * phi) + 2.0 * model.b * np.cos(2.0 * phi)
    )
    return alpha, d_alpha_sq / (2.0 * alpha)


def alpha_ddot(model: ValidatedModel, t: ArrayLike) -> np.ndarray:
    """Analytic second derivative of alpha."""
    phi = _angle(model, t)
    alpha, alpha_dot = alpha_state(model, t)
    dd_alpha_sq = 2.0 * model.omega0**2 * (
        (model.c - model.a) * np.cos(2.0 * phi) - 2.0 * model.b * np.sin(2.0 * phi)
    )
    return dd_alpha_sq / (2.0 * alpha) - alpha_dot**2 / alpha


def ermakov_residual(model: ValidatedModel, t: ArrayLike) -> np.ndarray:
    """alpha'' + omega0**2 alpha - kappa**2 / alpha**3, zero for an exact Ermakov solution."""
    alpha, _ = alpha_state(model, t)
    return alpha_ddot(model, t) + model.omega0**2 * alpha - model.kappa**2 / alpha**3


def _theta_integrand(tau: float, model: ValidatedModel) -> float:
    return float(model.kappa / _alpha_squared(model, tau))


def theta(model: ValidatedModel, t: ArrayLike) -> np.ndarray | float:
    """Global phase theta(t) = kappa * integral_{t0}^{t} dtau / alpha(tau)**2.

    The integral is taken with adaptive quadrature between consecutive sorted
    sample times and accumulated, so array inputs cost one quad call per sample.
    Times before t0 give negative phases.

    Args:
        model: Validated oscillator model.
        t: Time or array of times.

    Returns:
        Phase with the same shape as ``t``.
    """
    times = np.asarray(t, dtype=float)
    flat = np.atleast_1d(times).ravel()
    order = np.argsort(flat, kind="stable")
    result = np.empty_like(flat)

    # Walk outward from t0 in both directions so each piece is short
    forward = [i for i in order if flat[i] >= model.t0]
    backward = [i for i in order[::-1] if flat[i] < model.t0]
    for indices in (forward, backward):
        previous_time, accumulated = model.t0, 0.0
        for i in indices:
            piece, _ = quad(
                _theta_integrand,
                previous_time,
                flat[i],
                args=(model,),
                epsabs=_QUAD_TOL,
                epsrel=_QUAD_TOL,
                limit=_QUAD_LIMIT,
            )
            accumulated += piece
            result[i] = accumulated
            previous_time = flat[i]

    if times.ndim == 0:
        return float(result[0])
    return result.reshape(times.shape)


def theta_closed_form(model: ValidatedModel, t: ArrayLike) -> np.ndarray:
    """Branch-continued arctan form of theta, used as an independent cross-check.

    With phi = omega0*(t - t0) the antiderivative is
    arctan(omega0*(c*tan(phi) + b)/kappa) - arctan(omega0*b/kappa); atan2 keeps the
    value on the branch that stays within pi of phi, which makes it continuous.
    """
    phi = _angle(model, t)
    raw = np.arctan2(
        model.omega0 * (model.c * np.sin(phi) + model.b * np.cos(phi)),
        model.kappa * np.cos(phi),
    )
    turns = np.round((phi - raw) / (2.0 * np.pi))
    return raw + 2.0 * np.pi * turns - np.arctan2(model.omega0 * model.b, model.kappa)


def s_complex(model: ValidatedModel, t: ArrayLike) -> np.ndarray:
    """Complex Riccati function S = (m/2hbar)(alpha_dot/alpha) + i*lambda/alpha**2."""
    alpha, alpha_dot = alpha_state(model, t)
    s_real = model.m / (2.0 * model.hbar) * alpha_dot / alpha
    s_imag = model.lam / alpha**2
    return s_real + 1j * s_imag


def s_dot(model: ValidatedModel, t: ArrayLike) -> np.ndarray:
    """Analytic time derivative of S."""
    alpha, alpha_dot = alpha_state(model, t)
    ddot = alpha_ddot(model, t)
    real = model.m / (2.0 * model.hbar) * (ddot / alpha - (alpha_dot / alpha) ** 2)
    imag = -2.0 * model.lam * alpha_dot / alpha**3
    return real + 1j * imag


def riccati_residual(
    model: ValidatedModel, t: ArrayLike, step: float | None = None
) -> np.ndarray:
    """Residual (2hbar/m) S' + ((2hbar/m) S)**2 + omega0**2.

    Args:
        model: Validated oscillator model.
        t: Time or array of times.
        step: If given, S' is taken by central differences with this step instead of
            the analytic derivative.

    Returns:
        Complex residual, zero for an exact solution.
    """
    scale = 2.0 * model.hbar / model.m
    if step is None:
        derivative = s_dot(model, t)
    else:
        times = np.asarray(t, dtype=float)
        derivative = (s_complex(model, times + step) - s_complex(model, times - step)) / (
            2.0 * step
        )
    return scale * derivative + (scale * s_complex(model, t)) ** 2 + model.omega0**2


def trajectory(
    params: OscillatorParams, traj: TrajectorySpec, t: ArrayLike
) -> tuple[np.ndarray, np.ndarray]:
    """Packet center (<x>, <p>) at time t by the phase-space rotation matrix.

    Args:
        params: Oscillator constants.
        traj: Initial point (<x>_0, <p>_0) at t0.
        t: Time or array of times.

    Returns:
        Tuple (x_mean, p_mean).
    """
    phi = params.omega0 * (np.asarray(t, dtype=float) - params.t0)
    m_omega = params.m * params.omega0
    cos_phi, sin_phi = np.cos(phi), np.sin(phi)
    x_mean = cos_phi * traj.x0 + sin_phi / m_omega * traj.p0
    p_mean = -m_omega * sin_phi * traj.x0 + cos_phi * traj.p0
    return x_mean, p_mean


def classical_energy(params: OscillatorParams, x: ArrayLike, p: ArrayLike) -> np.ndarray:
    """Energy p**2/2m + m*omega0**2*x**2/2 of a phase-space point."""
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    return p**2 / (2.0 * params.m) + 0.5 * params.m * params.omega0**2 * x**2


def variance_x(model: ValidatedModel, t: ArrayLike) -> np.ndarray:
    """Position variance hbar*alpha**2/(2*m*kappa), i.e. (hbar/4 m omega0) alpha**2 by default."""
    return model.hbar * _alpha_squared(model, t) / (2.0 * model.m * model.kappa)
