"""Intertwining operator L, transformed states psi_n, the missing state and the deformed invariant."""

from __future__ import annotations

import math
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike

from darboux_lab.darboux.transform import DarbouxModel, beta_function, g_operator
from darboux_lab.modes.expansion import Direction, ModeExpansion
from darboux_lab.modes.hermite_gauss import apply_A, apply_invariant, mode_table
from darboux_lab.utils.errors import CapExceeded, NotNormalizable
from darboux_lab.utils.logger import get_logger
from darboux_lab.verify.grid import Grid1D, StateField, checked_derivative, derivative

logger = get_logger(__name__)

LForm = Literal["primitive", "ladder"]


def apply_L(
    dm: DarbouxModel, field: StateField, form: LForm = "primitive", strict: bool = True
) -> StateField:
    """Intertwining operator on a grid field.

    The primitive form is alpha (d/dx + beta); the ladder form is
    -alpha d/dx ln F + 2 sqrt(lambda) e^{-i theta} A-. Both must agree. With
    ``strict=False`` the primitive form skips the derivative error estimate, for
    fields that are round-off noise by construction.

    Raises:
        GridTooCoarse: If a derivative error estimate is above tolerance.
        OutOfWindow: If the grid leaves the certified window.
    """
    frame = dm.frame(field.time)
    x = field.grid.points
    if form == "primitive":
        beta = beta_function(dm, x, field.time)
        if strict:
            first = checked_derivative(field, order=1)
        else:
            first = derivative(field.values, field.grid.spacing, 1)
        return field.with_values(frame.alpha * (first + beta * field.values))
    if form != "ladder":
        raise ValueError(f"form must be 'primitive' or 'ladder', got {form!r}")
    _, f = dm.f_values(frame, x)
    lowered = apply_A("lower", field, dm.base, dm.traj).values
    ladder = 2.0 * math.sqrt(dm.base.lam) * np.exp(-1j * frame.theta)
    local = -dm.base.chi_scale * f.log_derivative * field.values
    return field.with_values(local + ladder * lowered)


def apply_L_adjoint(dm: DarbouxModel, field: StateField) -> StateField:
    """L-dagger = alpha (-d/dx + beta*) on a grid field."""
    frame = dm.frame(field.time)
    beta = beta_function(dm, field.grid.points, field.time)
    first = checked_derivative(field, order=1)
    return field.with_values(frame.alpha * (-first + np.conj(beta) * field.values))


def l_phi_table(dm: DarbouxModel, n_max: int, x: ArrayLike, t: float) -> np.ndarray:
    """Rows L phi_0..L phi_{n_max} from -scale y phi_n + 2 sqrt(lambda n) e^{-i theta} phi_{n-1}."""
    x = np.asarray(x, dtype=float)
    frame = dm.frame(t)
    _, f = dm.f_values(frame, x)
    table = mode_table(dm.base, frame, n_max, x)
    out = -dm.base.chi_scale * f.log_derivative * table
    ladder = 2.0 * np.exp(-1j * frame.theta) * np.sqrt(dm.base.lam * np.arange(1, n_max + 1))
    out[1:] += ladder.reshape((-1,) + (1,) * x.ndim) * table[:-1]
    return out


def l_phi_n(dm: DarbouxModel, n: int, x: ArrayLike, t: float) -> np.ndarray:
    """Unnormalised L phi_n(x, t) in closed form."""
    return l_phi_table(dm, n, x, t)[n]


def l_phi_norm_exact(dm: DarbouxModel, n: int) -> float:
    """||L phi_n|| = sqrt((2 m kappa/hbar)(n + 1/2 - epsilon))."""
    model = dm.base
    return math.sqrt(2.0 * model.chi_scale**2 * (n + 0.5 - dm.spec.epsilon))


def missing_state(dm: DarbouxModel, x: ArrayLike, t: float) -> np.ndarray:
    """Normalised missing state psi_M = 1/(N alpha u*).

    Raises:
        NotNormalizable: If 1/(alpha u*) is not square integrable.
        OutOfWindow: Outside the certified window.
    """
    if dm.missing_norm is None:
        raise NotNormalizable(dm.missing_reason or "missing state is not square integrable")
    x = np.asarray(x, dtype=float)
    model = dm.base
    frame = dm.frame(t)
    chi, f = dm.f_values(frame, x)
    xi = (
        model.m / (2.0 * model.hbar) * frame.alpha_dot / frame.alpha * (x - frame.x_mean) ** 2
        + frame.p_mean * (x - frame.x_mean) / model.hbar
        + frame.p_mean * frame.x_mean / (2.0 * model.hbar)
    )
    with np.errstate(over="ignore"):
        amplitude = np.exp(0.5 * chi**2 - f.log_scale) / f.mantissa
    phase = np.exp(1j * (xi - dm.spec.epsilon * frame.theta))
    return phase * amplitude / (math.sqrt(frame.alpha) * dm.missing_norm)


def _check_level(dm: DarbouxModel, n: int) -> None:
    if n < 0:
        raise ValueError(f"state index must be nonnegative, got {n}")
    if n > len(dm.l_phi_norms):
        raise CapExceeded(
            f"psi_{n} needs the norm of L phi_{n - 1}; tabulated up to n = {len(dm.l_phi_norms)}"
        )


def psi_table(dm: DarbouxModel, n_max: int, x: ArrayLike, t: float) -> np.ndarray:
    """Rows psi_0..psi_{n_max}; psi_0 is the missing state, psi_{n+1} = L phi_n / ||L phi_n||_{t0}.

    Raises:
        CapExceeded: If n_max is beyond the normalisation table.
        NotNormalizable: If the missing state is not square integrable.
    """
    _check_level(dm, n_max)
    x = np.asarray(x, dtype=float)
    rows = np.empty((n_max + 1,) + x.shape, dtype=complex)
    rows[0] = missing_state(dm, x, t)
    if n_max > 0:
        norms = np.asarray(dm.l_phi_norms[:n_max]).reshape((-1,) + (1,) * x.ndim)
        rows[1:] = l_phi_table(dm, n_max - 1, x, t) / norms
    return rows


def psi_n(dm: DarbouxModel, n: int, x: ArrayLike, t: float) -> np.ndarray:
    """Normalised transformed state psi_n(x, t).

    psi_0 is the missing state; for n >= 1 the closed-form L phi_{n-1} is divided
    by its norm measured once at t0, so norm conservation at later times is a
    property of the construction, not imposed.

    Args:
        dm: Certified transformation.
        n: State index.
        x: Abscissa or array of abscissae.
        t: Time.

    Returns:
        Complex state values with the shape of x.

    Raises:
        CapExceeded: If n is beyond the normalisation table.
        NotNormalizable: For n = 0 when the missing state is not square integrable.
        OutOfWindow: Outside the certified window.
    """
    _check_level(dm, n)
    if n == 0:
        return missing_state(dm, x, t)
    return l_phi_n(dm, n - 1, x, t) / dm.l_phi_norms[n - 1]


def psi_field(dm: DarbouxModel, n: int, grid: Grid1D, t: float) -> StateField:
    return StateField(grid=grid, values=psi_n(dm, n, grid.points, t), time=t)


def apply_invariant_IG(field: StateField, dm: DarbouxModel, i0: float | None = None) -> StateField:
    """Deformed invariant I_G = I + I0 c4 G, c4 = -2 hbar**2 alpha**2/m**2.

    Its eigenvalue on psi_{n+1} is I0 (2 hbar kappa/m)(n + 1/2) and on the missing
    state I0 (2 hbar kappa/m) epsilon.

    Raises:
        GridTooCoarse: If a derivative error estimate is above tolerance.
        OutOfWindow: If the grid leaves the certified window.
    """
    g = g_operator(dm, field.grid.points, field.time)
    return apply_invariant(field, dm.base, dm.traj, g_values=g, i0=i0)


def ladder_B(direction: Direction, expansion: ModeExpansion) -> ModeExpansion:
    """B+ psi_n = sqrt(n+1) psi_{n+1}, B- psi_n = sqrt(n) psi_{n-1} on expansion coefficients.

    Raises:
        CapExceeded: If raising reaches beyond n = 64.
    """
    return expansion.ladder(direction)


def psi_expansion_values(
    dm: DarbouxModel, expansion: ModeExpansion, x: ArrayLike, t: float
) -> np.ndarray:
    """Sum over n of c_n psi_n(x, t)."""
    table = psi_table(dm, expansion.n_max, x, t)
    return np.tensordot(expansion.coeffs, table, axes=1)
