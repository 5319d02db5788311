"""Numerical oracle layer: grids, quadrature, finite differences and residuals."""

from darboux_lab.verify.grid import (
    DERIVATIVE_TOLERANCE,
    Grid1D,
    GramReport,
    StateField,
    checked_derivative,
    derivative,
    derivative_error,
    ensure_decay,
    gram_matrix,
    inner_product,
    quadrature,
    rayleigh_quotient,
    third_derivative,
)
from darboux_lab.verify.residuals import (
    ResidualReport,
    hamiltonian_action,
    intertwining_residual,
    schrodinger_residual,
)

__all__ = [
    "DERIVATIVE_TOLERANCE",
    "Grid1D",
    "GramReport",
    "StateField",
    "checked_derivative",
    "derivative",
    "derivative_error",
    "ensure_decay",
    "gram_matrix",
    "inner_product",
    "quadrature",
    "rayleigh_quotient",
    "third_derivative",
    "ResidualReport",
    "hamiltonian_action",
    "intertwining_residual",
    "schrodinger_residual",
]
