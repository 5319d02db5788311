"""Classical layer and special functions."""

from darboux_lab.physics.classical import (
    alpha_ddot,
    alpha_state,
    classical_energy,
    ermakov_residual,
    riccati_residual,
    s_complex,
    s_dot,
    theta,
    theta_closed_form,
    trajectory,
    variance_x,
)
from darboux_lab.physics.specfun import erf, hermite, hermite_functions, kummer

__all__ = [
    "alpha_ddot",
    "alpha_state",
    "classical_energy",
    "ermakov_residual",
    "riccati_residual",
    "s_complex",
    "s_dot",
    "theta",
    "theta_closed_form",
    "trajectory",
    "variance_x",
    "erf",
    "hermite",
    "hermite_functions",
    "kummer",
]
