"""Time-dependent Darboux transformation of the oscillator wave packets."""

from darboux_lab.darboux.states import (
    apply_invariant_IG,
    apply_L,
    apply_L_adjoint,
    l_phi_n,
    l_phi_norm_exact,
    l_phi_table,
    ladder_B,
    missing_state,
    psi_expansion_values,
    psi_field,
    psi_n,
    psi_table,
)
from darboux_lab.darboux.transform import (
    DarbouxModel,
    FValues,
    NodelessReport,
    beta_function,
    build_darboux,
    certify_nodeless,
    closed_form_family,
    f_function,
    f_function_kummer,
    g_identity_residual,
    g_operator,
    log_u,
    potential_v0,
    potential_v1,
    potential_v1_complex,
    realness_residual,
    u_function,
    u_log_derivative,
    u_phase,
)

__all__ = [
    "apply_invariant_IG",
    "apply_L",
    "apply_L_adjoint",
    "l_phi_n",
    "l_phi_norm_exact",
    "l_phi_table",
    "ladder_B",
    "missing_state",
    "psi_expansion_values",
    "psi_field",
    "psi_n",
    "psi_table",
    "DarbouxModel",
    "FValues",
    "NodelessReport",
    "beta_function",
    "build_darboux",
    "certify_nodeless",
    "closed_form_family",
    "f_function",
    "f_function_kummer",
    "g_identity_residual",
    "g_operator",
    "log_u",
    "potential_v0",
    "potential_v1",
    "potential_v1_complex",
    "realness_residual",
    "u_function",
    "u_log_derivative",
    "u_phase",
]
