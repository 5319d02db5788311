"""Seed function, nodeless certification, deformed potential and transformed states."""

import math

import numpy as np
import pytest

from darboux_lab.darboux import (
    apply_invariant_IG,
    apply_L,
    apply_L_adjoint,
    beta_function,
    build_darboux,
    certify_nodeless,
    closed_form_family,
    f_function,
    f_function_kummer,
    g_identity_residual,
    g_operator,
    l_phi_norm_exact,
    log_u,
    missing_state,
    potential_v0,
    potential_v1,
    potential_v1_complex,
    psi_field,
    psi_n,
    realness_residual,
    u_function,
    u_log_derivative,
)
from darboux_lab.models import DarbouxSpec
from darboux_lab.modes import invariant_eigenvalue, phi_field, phi_n
from darboux_lab.physics import alpha_state
from darboux_lab.utils.errors import (
    CapExceeded,
    ConfigError,
    NodelessCertificationFailed,
    NotNormalizable,
    OutOfSupport,
    OutOfWindow,
)
from darboux_lab.verify import Grid1D, derivative, gram_matrix, rayleigh_quotient

CHI = np.linspace(-6.0, 6.0, 1201)


def test_family_selection():
    assert closed_form_family(-0.5) == "erf"
    assert closed_form_family(-1.5) == "erf_second"
    assert closed_form_family(0.5) == "identity"
    assert closed_form_family(-0.7) == "kummer"


@pytest.mark.parametrize("fixture", ["erf_spec", "second_spec"])
def test_closed_forms_match_the_kummer_route(fixture, request):
    spec = request.getfixturevalue(fixture)
    closed = f_function(spec, CHI)
    general = f_function_kummer(spec, CHI)
    assert np.allclose(closed.value, general.value, rtol=1e-8)
    assert np.allclose(closed.log_derivative, general.log_derivative, rtol=1e-8, atol=1e-10)


@pytest.mark.parametrize("epsilon", [-0.5, -1.5, -0.7, 0.3])
def test_f_solves_its_differential_equation(epsilon):
    spec = DarbouxSpec(epsilon=epsilon, k_a=2.0, k_b=1.0)
    chi = np.linspace(-3.0, 3.0, 6001)
    values = f_function(spec, chi)
    f = values.value
    dx = chi[1] - chi[0]
    residual = derivative(f, dx, 2) - 2.0 * chi * derivative(f, dx, 1) - (1.0 - 2.0 * epsilon) * f
    assert np.max(np.abs(residual)) / np.max(np.abs(f)) < 1e-6


def test_log_derivatives_are_analytic(erf_spec):
    values = f_function(erf_spec, CHI)
    dx = CHI[1] - CHI[0]
    numeric = derivative(np.log(values.value), dx, 1)
    assert np.max(np.abs(numeric - values.log_derivative)) < 1e-6
    numeric_prime = derivative(values.log_derivative, dx, 1)
    assert np.max(np.abs(numeric_prime - values.log_derivative_prime)) < 1e-6


def test_kummer_route_has_a_finite_support(erf_spec):
    with pytest.raises(OutOfSupport):
        f_function_kummer(erf_spec, np.array([7.2]))


def test_published_parameters_are_certified(erf_spec, second_spec):
    for spec in (erf_spec, second_spec):
        report = certify_nodeless(spec)
        assert report.passed
        assert report.global_certificate
        assert math.isinf(report.window)
        assert report.nearest_value > 0.0


def test_erf_family_with_a_zero_is_rejected():
    report = certify_nodeless(DarbouxSpec(epsilon=-0.5, k_a=0.5, k_b=1.0))
    assert not report.passed
    assert len(report.zeros) == 1
    assert abs(report.zeros[0]) < 8.0


def test_erf_family_boundary_case_fails_the_asymptotic_argument():
    # k_a = (sqrt(pi)/2) k_b leaves F -> 0 as chi -> -inf
    report = certify_nodeless(DarbouxSpec(epsilon=-0.5, k_a=0.5 * math.sqrt(math.pi), k_b=1.0))
    assert not report.passed


def test_kummer_family_is_certified_on_a_window_only():
    report = certify_nodeless(DarbouxSpec(epsilon=-0.7, k_a=1.0, k_b=0.1), chi_max=10.0)
    assert report.passed
    assert not report.global_certificate
    assert report.window == pytest.approx(math.sqrt(50.0))


def test_build_rejects_degenerate_and_noded_seeds(model):
    with pytest.raises(ConfigError):
        build_darboux(model, DarbouxSpec(epsilon=-0.5, k_a=0.0, k_b=0.0))
    with pytest.raises(NodelessCertificationFailed):
        build_darboux(model, DarbouxSpec(epsilon=-0.5, k_a=0.1, k_b=1.0))


def test_points_outside_the_window_are_refused(model):
    dm = build_darboux(model, DarbouxSpec(epsilon=-0.7, k_a=1.0, k_b=0.1), chi_max=10.0)
    with pytest.raises(OutOfWindow):
        potential_v1(dm, np.array([0.0, 20.0]), 0.0)


def test_potential_forms_agree_and_are_real(moving_erf_darboux, grid):
    for t in (0.2, 6.0):
        v1 = potential_v1(moving_erf_darboux, grid.points, t)
        v1_complex = potential_v1_complex(moving_erf_darboux, grid, t)
        assert np.max(np.abs(v1_complex.imag)) < 1e-10 * np.max(np.abs(v1))
        assert np.allclose(v1_complex.real, v1, rtol=0.0, atol=1e-4)


def test_log_u_is_a_branch_of_the_logarithm(moving_erf_darboux):
    x = np.linspace(-5.0, 5.0, 501)
    ratio = u_function(moving_erf_darboux, x, 1.3) / np.exp(log_u(moving_erf_darboux, x, 1.3))
    assert np.allclose(np.abs(ratio), 1.0, atol=1e-12)
    assert np.allclose(ratio.imag, 0.0, atol=1e-12)


def test_phase_curvature_of_u_is_measured_on_the_grid(moving_erf_darboux, model, grid):
    t = 1.3
    frame = moving_erf_darboux.frame(t)
    curvature = derivative(log_u(moving_erf_darboux, grid.points, t).imag, grid.spacing, 2)
    expected = model.m / model.hbar * frame.alpha_dot / frame.alpha
    assert np.max(np.abs(curvature - expected)) < 1e-7


def test_deformation_vanishes_far_from_the_packet(erf_darboux, model):
    # the erf family has y' -> 2 on both sides, so V1 - V0 -> -hbar kappa / alpha**2
    x = np.array([-15.0, 15.0])
    alpha = math.sqrt(model.a)
    difference = potential_v1(erf_darboux, x, 0.0) - potential_v0(model, x)
    assert np.allclose(difference, -model.hbar * model.kappa / alpha**2, atol=1e-10)


def test_realness_condition(moving_erf_darboux):
    grid = Grid1D(x_min=-10.0, x_max=10.0, n_points=201)
    assert realness_residual(moving_erf_darboux, grid, 1.3) < 1e-8


def test_deformation_evolution(moving_erf_darboux, grid):
    assert g_identity_residual(moving_erf_darboux, grid, 1.3) < 1e-5


def test_intertwiner_forms_agree(moving_erf_darboux, model, moving, grid):
    for n in range(3):
        field = phi_field(model, moving, n, grid, 1.3)
        primitive = apply_L(moving_erf_darboux, field, "primitive").values
        ladder = apply_L(moving_erf_darboux, field, "ladder").values
        assert np.max(np.abs(primitive - ladder)) / np.max(np.abs(ladder)) < 1e-6


def test_l_phi_norms_match_the_exact_formula(erf_darboux, second_darboux):
    for dm in (erf_darboux, second_darboux):
        for n in range(6):
            exact = l_phi_norm_exact(dm, n)
            assert dm.l_phi_norms[n] == pytest.approx(exact, rel=1e-8)


def test_exact_norm_formula(erf_darboux):
    # 2 (m kappa/hbar)(n + 1/2 - epsilon) with m kappa/hbar = 1
    assert l_phi_norm_exact(erf_darboux, 0) == pytest.approx(math.sqrt(2.0))


@pytest.mark.parametrize("fixture", ["moving_erf_darboux", "second_darboux"])
def test_transformed_states_are_orthonormal(fixture, request):
    dm = request.getfixturevalue(fixture)
    grid = Grid1D(x_min=-25.0, x_max=25.0, n_points=2501)
    for t in (0.0, 1.3, 6.0):
        fields = [psi_field(dm, n, grid, t) for n in range(6)]
        assert gram_matrix(fields).deviation < 1e-6


def test_missing_state_is_annihilated_by_the_adjoint_direction(erf_darboux, grid):
    # psi_0 = 1/(alpha u*) solves (-d/dx + beta*) psi_0 = 0
    grid = grid.refined()
    values = missing_state(erf_darboux, grid.points, 0.7)
    field = psi_field(erf_darboux, 0, grid, 0.7)
    assert np.allclose(values, field.values)
    image = apply_L_adjoint(erf_darboux, field)
    first = derivative(field.values, grid.spacing, 1)
    alpha = erf_darboux.frame(0.7).alpha
    scale = alpha * np.sqrt(np.trapezoid(np.abs(first) ** 2, dx=grid.spacing))
    assert image.norm() / scale < 1e-6


def test_missing_state_unavailable_for_the_identity_family(model):
    dm = build_darboux(model, DarbouxSpec(epsilon=0.5, k_a=1.0, k_b=0.0))
    assert dm.missing_norm is None
    with pytest.raises(NotNormalizable):
        psi_n(dm, 0, np.zeros(3), 0.0)


def test_state_index_beyond_the_table(erf_darboux):
    with pytest.raises(CapExceeded):
        psi_n(erf_darboux, len(erf_darboux.l_phi_norms) + 1, np.zeros(3), 0.0)


def test_deformed_invariant_spectrum(moving_erf_darboux, model, grid):
    t = 1.3
    for n in range(4):
        field = psi_field(moving_erf_darboux, n, grid, t)
        quotient = rayleigh_quotient(lambda f: apply_invariant_IG(f, moving_erf_darboux), field)
        level = -0.5 if n == 0 else n - 0.5
        expected = invariant_eigenvalue(model, level)
        assert abs(quotient.real - expected) < 1e-5 * abs(invariant_eigenvalue(model, 0.5))


def test_identity_seed_reduces_u_to_the_ground_mode(model, origin):
    dm = build_darboux(model, DarbouxSpec(epsilon=0.5, k_a=1.0, k_b=0.0))
    x = np.linspace(-6.0, 6.0, 121)
    ratio = u_function(dm, x, 1.3) / phi_n(model, origin, 0, x, 1.3)
    assert np.allclose(ratio, ratio[0], rtol=1e-10)
    alpha, _ = alpha_state(model, 1.3)
    assert np.allclose(g_operator(dm, x, 1.3), -model.chi_scale**2 / alpha**2)


def test_beta_is_minus_the_log_derivative_of_u(moving_erf_darboux):
    grid = Grid1D(x_min=-2.0, x_max=8.0, n_points=4001)
    t = 1.3
    beta = beta_function(moving_erf_darboux, grid.points, t)
    assert np.allclose(beta, -u_log_derivative(moving_erf_darboux, grid.points, t), atol=1e-10)
    u = u_function(moving_erf_darboux, grid.points, t)
    numeric = derivative(u, grid.spacing, 1) / u
    inner = slice(4, -4)
    assert np.max(np.abs(numeric[inner] + beta[inner])) / np.max(np.abs(beta)) < 1e-6


def test_g_operator_rebuilds_the_deformed_potential(moving_erf_darboux, model, grid):
    t = 1.3
    rebuilt = potential_v0(model, grid.points) - model.hbar**2 / model.m * g_operator(
        moving_erf_darboux, grid.points, t
    )
    assert np.allclose(rebuilt, potential_v1(moving_erf_darboux, grid.points, t), atol=1e-9)
