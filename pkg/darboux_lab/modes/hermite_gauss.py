"""Hermite-Gauss wave packets of the stationary oscillator, ladder operators and invariant.

The packet centre follows the classical trajectory, the width breathes with the
Ermakov amplitude alpha(t), and every mode carries the phase exp(-i(n+1/2)theta).
Operators act on grid fields with centred position X = x - <x> and momentum
P = p - <p>.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

from darboux_lab.models.oscillator import TrajectorySpec, ValidatedModel
from darboux_lab.modes.expansion import Direction, ModeExpansion
from darboux_lab.physics.classical import alpha_state, s_complex, theta, trajectory
from darboux_lab.physics.specfun import hermite_functions
from darboux_lab.utils.logger import get_logger
from darboux_lab.verify.grid import Grid1D, StateField, checked_derivative, derivative

logger = get_logger(__name__)

RELATION_STEP = 1e-5


@dataclass(frozen=True)
class PacketFrame:
    """Time-dependent packet data shared by every mode at one instant."""

    t: float
    alpha: float
    alpha_dot: float
    theta: float
    x_mean: float
    p_mean: float
    s: complex


def packet_frame(model: ValidatedModel, traj: TrajectorySpec, t: float) -> PacketFrame:
    """Evaluate alpha, theta, the packet centre and S at one time."""
    alpha, alpha_dot = alpha_state(model, t)
    x_mean, p_mean = trajectory(model.params, traj, t)
    return PacketFrame(
        t=float(t),
        alpha=float(alpha),
        alpha_dot=float(alpha_dot),
        theta=float(theta(model, t)),
        x_mean=float(x_mean),
        p_mean=float(p_mean),
        s=complex(s_complex(model, t)),
    )


def _chi(model: ValidatedModel, frame: PacketFrame, x: ArrayLike) -> np.ndarray:
    return model.chi_scale * (np.asarray(x, dtype=float) - frame.x_mean) / frame.alpha


def _xi(model: ValidatedModel, frame: PacketFrame, x: ArrayLike) -> np.ndarray:
    shifted = np.asarray(x, dtype=float) - frame.x_mean
    return (
        model.m / (2.0 * model.hbar) * frame.alpha_dot / frame.alpha * shifted**2
        + frame.p_mean * shifted / model.hbar
        + frame.p_mean * frame.x_mean / (2.0 * model.hbar)
    )


def chi(model: ValidatedModel, traj: TrajectorySpec, x: ArrayLike, t: float) -> np.ndarray:
    """Scaled coordinate sqrt(m kappa/hbar) (x - <x>(t)) / alpha(t)."""
    return _chi(model, packet_frame(model, traj, t), x)


def xi_phase(model: ValidatedModel, traj: TrajectorySpec, x: ArrayLike, t: float) -> np.ndarray:
    """Real phase (m/2hbar)(alpha_dot/alpha)(x-<x>)**2 + <p>(x-<x>)/hbar + <p><x>/2hbar."""
    return _xi(model, packet_frame(model, traj, t), x)


def mode_table(
    model: ValidatedModel, frame: PacketFrame, n_max: int, x: ArrayLike
) -> np.ndarray:
    """Rows phi_0..phi_{n_max} sampled at x for one packet frame.

    Each row is sqrt(scale/alpha) h_n(chi) exp(-i(n+1/2)theta) exp(i xi) with h_n the
    orthonormal Hermite functions, which is the (m kappa/(pi hbar))**(1/4) / sqrt(2**n n! alpha)
    normalised Hermite-Gauss mode.

    Raises:
        DegreeTooLarge: If n_max exceeds the Hermite cap.
    """
    chi_values = _chi(model, frame, x)
    shapes = hermite_functions(n_max, chi_values)
    n = np.arange(n_max + 1).reshape((-1,) + (1,) * chi_values.ndim)
    phases = np.exp(-1j * (n + 0.5) * frame.theta)
    envelope = np.sqrt(model.chi_scale / frame.alpha) * np.exp(1j * _xi(model, frame, x))
    return shapes * phases * envelope


def phi_n(
    model: ValidatedModel, traj: TrajectorySpec, n: int, x: ArrayLike, t: float
) -> np.ndarray:
    """Normalised Hermite-Gauss mode phi_n(x, t).

    Args:
        model: Validated oscillator model.
        traj: Packet-centre initial point.
        n: Mode index.
        x: Abscissa or array of abscissae.
        t: Time.

    Returns:
        Complex mode values with the shape of x.

    Raises:
        DegreeTooLarge: If n exceeds the Hermite cap.
    """
    return mode_table(model, packet_frame(model, traj, t), n, x)[n]


def phi_field(
    model: ValidatedModel, traj: TrajectorySpec, n: int, grid: Grid1D, t: float
) -> StateField:
    values = phi_n(model, traj, n, grid.points, t)
    return StateField(grid=grid, values=values, time=t, norm_hint=1.0)


def expansion_values(
    model: ValidatedModel, traj: TrajectorySpec, expansion: ModeExpansion, x: ArrayLike, t: float
) -> np.ndarray:
    """Sum over n of c_n phi_n(x, t)."""
    table = mode_table(model, packet_frame(model, traj, t), expansion.n_max, x)
    return np.tensordot(expansion.coeffs, table, axes=1)


def _centred_momentum(
    model: ValidatedModel, frame: PacketFrame, values: np.ndarray, first: np.ndarray
) -> np.ndarray:
    """(p - <p>) f with p = -i hbar d/dx."""
    return -1j * model.hbar * first - frame.p_mean * values


def apply_A(
    direction: Direction, field: StateField, model: ValidatedModel, traj: TrajectorySpec
) -> StateField:
    """Ladder operator on a grid field.

    A- = i e^{i theta} (alpha/sqrt(lambda)) [(p - <p>)/2hbar - S (x - <x>)] and
    A+ = -i e^{-i theta} (alpha/sqrt(lambda)) [(p - <p>)/2hbar - S* (x - <x>)],
    normalised so that [A-, A+] = 1.

    Raises:
        GridTooCoarse: If the first-derivative error estimate is above tolerance.
    """
    frame = packet_frame(model, traj, field.time)
    x_c = field.grid.points - frame.x_mean
    f = field.values
    momentum = _centred_momentum(model, frame, f, checked_derivative(field, order=1))
    scale = frame.alpha / np.sqrt(model.lam)
    if direction == "lower":
        bracket = momentum / (2.0 * model.hbar) - frame.s * x_c * f
        values = 1j * np.exp(1j * frame.theta) * scale * bracket
    elif direction == "raise":
        bracket = momentum / (2.0 * model.hbar) - np.conj(frame.s) * x_c * f
        values = -1j * np.exp(-1j * frame.theta) * scale * bracket
    else:
        raise ValueError(f"direction must be 'raise' or 'lower', got {direction!r}")
    return field.with_values(values)


def invariant_coefficients(
    model: ValidatedModel, t: ArrayLike
) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Coefficients (c1, c2, c3, c4) of X**2, P**2, {X, P} and G in the invariant over I0."""
    alpha, alpha_dot = alpha_state(model, t)
    c1 = alpha_dot**2 + model.kappa**2 / alpha**2
    c2 = alpha**2 / model.m**2
    c3 = -alpha * alpha_dot / model.m
    c4 = -2.0 * model.hbar**2 * alpha**2 / model.m**2
    return c1, c2, c3, c4


def coefficient_relation_residuals(
    model: ValidatedModel, t: ArrayLike, step: float = RELATION_STEP
) -> dict[str, np.ndarray]:
    """First-order relations among c1..c4 that make the deformed invariant conserved.

    Time derivatives are central differences with the given step.
    """
    times = np.asarray(t, dtype=float)
    c1, c2, c3, c4 = invariant_coefficients(model, times)
    ahead = invariant_coefficients(model, times + step)
    behind = invariant_coefficients(model, times - step)
    d1, d2, d3, d4 = ((f - b) / (2.0 * step) for f, b in zip(ahead, behind))
    alpha, alpha_dot = alpha_state(model, times)
    m, w2, hbar = model.m, model.omega0**2, model.hbar
    return {
        "x2": c1 - m**2 * w2 * c2 + m * d3,
        "p2": 2.0 * c3 + m * d2,
        "xp": -2.0 * m * w2 * c3 + d1,
        "g": c4 + 2.0 * hbar**2 * c2,
        "g_commutator": 2.0 * hbar**2 / m * c3 - alpha_dot / alpha * c4,
        "g_time": d4 - 2.0 * alpha_dot / alpha * c4,
    }


def apply_invariant(
    field: StateField,
    model: ValidatedModel,
    traj: TrajectorySpec,
    g_values: np.ndarray | None = None,
    i0: float | None = None,
) -> StateField:
    """I0 [c2 P**2 + c3 {X, P} + c1 X**2 + c4 G] on a grid field; G is skipped when None."""
    frame = packet_frame(model, traj, field.time)
    c1, c2, c3, c4 = invariant_coefficients(model, field.time)
    hbar, p = model.hbar, frame.p_mean
    x_c = field.grid.points - frame.x_mean
    f = field.values
    first = checked_derivative(field, order=1)
    second = checked_derivative(field, order=2)

    p_squared = -(hbar**2) * second + 2j * hbar * p * first + p**2 * f
    anticommutator = -1j * hbar * (2.0 * x_c * first + f) - 2.0 * p * x_c * f
    values = c2 * p_squared + c3 * anticommutator + c1 * x_c**2 * f
    if g_values is not None:
        values = values + c4 * g_values * f
    scale = model.hbar if i0 is None else i0
    return field.with_values(scale * values)


def apply_invariant_I(
    field: StateField, model: ValidatedModel, traj: TrajectorySpec, i0: float | None = None
) -> StateField:
    """Apply the quadratic invariant of the stationary oscillator.

    I/I0 = (alpha**2/m**2) P**2 - (alpha alpha_dot/m) {X, P} + (alpha_dot**2 + kappa**2/alpha**2) X**2
    with X, P centred on the packet; its eigenvalue on phi_n is I0 (2 hbar kappa/m)(n + 1/2).

    Args:
        field: Grid field.
        model: Validated oscillator model.
        traj: Packet-centre initial point.
        i0: Scale I0 with units of action, hbar when omitted.

    Returns:
        Field with the invariant applied.

    Raises:
        GridTooCoarse: If a derivative error estimate is above tolerance.
    """
    return apply_invariant(field, model, traj, None, i0)


def invariant_eigenvalue(model: ValidatedModel, level: float, i0: float | None = None) -> float:
    """I0 (2 hbar kappa / m) level, with level = n + 1/2 for phi_n."""
    scale = model.hbar if i0 is None else i0
    return scale * 2.0 * model.hbar * model.kappa / model.m * level


def commutator_residuals(field: StateField, potential: np.ndarray, hbar: float) -> dict[str, float]:
    """Relative grid residuals of three position-momentum commutator identities.

    [x**2, p**2] = 2 i hbar {x, p}, [x**2, {x, p}] = 4 i hbar x**2 and
    [{x, p}, V(x)] = 2 x [p, V(x)], each applied to ``field``.
    """
    x = field.grid.points
    dx = field.grid.spacing
    f = field.values

    def p(g: np.ndarray) -> np.ndarray:
        return -1j * hbar * derivative(g, dx, 1)

    def anti(g: np.ndarray) -> np.ndarray:
        return x * p(g) + p(x * g)

    scale = np.linalg.norm(f)
    checks = {
        "x2_p2": x**2 * p(p(f)) - p(p(x**2 * f)) - 2j * hbar * anti(f),
        "x2_xp": x**2 * anti(f) - anti(x**2 * f) - 4j * hbar * x**2 * f,
        "xp_v": anti(potential * f)
        - potential * anti(f)
        - 2.0 * x * (p(potential * f) - potential * p(f)),
    }
    return {name: float(np.linalg.norm(r[4:-4]) / scale) for name, r in checks.items()}
