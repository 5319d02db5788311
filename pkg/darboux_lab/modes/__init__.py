"""Hermite-Gauss mode basis, ladder operators and the quadratic invariant."""

from darboux_lab.modes.expansion import MODE_CAP, ModeExpansion, Quadratures
from darboux_lab.modes.hermite_gauss import (
    PacketFrame,
    apply_A,
    apply_invariant,
    apply_invariant_I,
    chi,
    coefficient_relation_residuals,
    commutator_residuals,
    expansion_values,
    invariant_coefficients,
    invariant_eigenvalue,
    mode_table,
    packet_frame,
    phi_field,
    phi_n,
    xi_phase,
)

__all__ = [
    "MODE_CAP",
    "ModeExpansion",
    "Quadratures",
    "PacketFrame",
    "apply_A",
    "apply_invariant",
    "apply_invariant_I",
    "chi",
    "coefficient_relation_residuals",
    "commutator_residuals",
    "expansion_values",
    "invariant_coefficients",
    "invariant_eigenvalue",
    "mode_table",
    "packet_frame",
    "phi_field",
    "phi_n",
    "xi_phase",
]
