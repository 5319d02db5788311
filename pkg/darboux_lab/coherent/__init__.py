"""Coherent-state families and their quadrature statistics."""

from darboux_lab.coherent.states import (
    CoherentLabel,
    coherent_coeffs,
    coherent_values,
    default_cap,
    displaced_ground,
    overcompleteness_error,
    phi_z,
    poisson_tail,
    psi_tilde_z,
    psi_z,
    quadrature_stats,
)

__all__ = [
    "CoherentLabel",
    "coherent_coeffs",
    "coherent_values",
    "default_cap",
    "displaced_ground",
    "overcompleteness_error",
    "phi_z",
    "poisson_tail",
    "psi_tilde_z",
    "psi_z",
    "quadrature_stats",
]
