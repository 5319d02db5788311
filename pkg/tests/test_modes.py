"""Hermite-Gauss modes, ladder operators, the quadratic invariant and mode expansions."""

import math

import numpy as np
import pytest

from darboux_lab.darboux import potential_v0
from darboux_lab.modes import (
    MODE_CAP,
    ModeExpansion,
    apply_A,
    apply_invariant_I,
    chi,
    coefficient_relation_residuals,
    commutator_residuals,
    invariant_eigenvalue,
    mode_table,
    packet_frame,
    phi_field,
    phi_n,
    xi_phase,
)
from darboux_lab.physics import alpha_state, theta
from darboux_lab.utils.errors import CapExceeded
from darboux_lab.verify import gram_matrix, inner_product, rayleigh_quotient, schrodinger_residual

TIMES = (0.0, 1.3, 6.0)


def test_modes_are_orthonormal(second_model, moving, grid):
    for t in TIMES:
        fields = [phi_field(second_model, moving, n, grid, t) for n in range(8)]
        assert gram_matrix(fields).deviation < 1e-8


def test_mode_table_rows_match_phi_n(model, moving, grid):
    frame = packet_frame(model, moving, 1.3)
    table = mode_table(model, frame, 5, grid.points)
    for n in range(6):
        assert np.allclose(table[n], phi_n(model, moving, n, grid.points, 1.3))


def test_ground_mode_closed_form(model, origin):
    x = np.linspace(-4.0, 4.0, 9)
    t = 0.9
    alpha, alpha_dot = alpha_state(model, t)
    expected = (
        (model.m * model.kappa / (math.pi * model.hbar)) ** 0.25
        / np.sqrt(alpha)
        * np.exp(-model.m * model.kappa / (2.0 * model.hbar) * x**2 / alpha**2)
        * np.exp(1j * model.m / (2.0 * model.hbar) * alpha_dot / alpha * x**2)
        * np.exp(-0.5j * theta(model, t))
    )
    assert np.allclose(phi_n(model, origin, 0, x, t), expected)


def test_chi_is_centred_on_the_packet(model, moving):
    frame = packet_frame(model, moving, 2.0)
    assert float(chi(model, moving, frame.x_mean, 2.0)) == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("n", [0, 1, 3])
def test_modes_solve_the_schrodinger_equation(model, moving, grid, n):
    def mode(x, t):
        return phi_n(model, moving, n, x, t)

    def potential(x, t):
        return potential_v0(model, x)

    report = schrodinger_residual(mode, potential, grid, 1.3, hbar=model.hbar, m=model.m)
    assert report.within(1e-5)
    assert 1.7 <= report.convergence_order_estimate <= 4.3


def test_lowering_annihilates_the_ground_mode(second_model, moving, grid):
    ground = phi_field(second_model, moving, 0, grid, 1.3)
    lowered = apply_A("lower", ground, second_model, moving)
    assert lowered.norm() < 1e-6


@pytest.mark.parametrize("n", [1, 2, 5])
def test_ladder_actions(second_model, moving, grid, n):
    t = 1.3
    field = phi_field(second_model, moving, n, grid, t)
    raised = apply_A("raise", field, second_model, moving).values
    lowered = apply_A("lower", field, second_model, moving).values
    above = math.sqrt(n + 1) * phi_n(second_model, moving, n + 1, grid.points, t)
    below = math.sqrt(n) * phi_n(second_model, moving, n - 1, grid.points, t)
    assert np.max(np.abs(raised - above)) < 1e-6
    assert np.max(np.abs(lowered - below)) < 1e-6


def test_ladder_commutator_on_a_mode(model, moving, grid):
    field = phi_field(model, moving, 2, grid, 0.4)
    raise_lower = apply_A("raise", apply_A("lower", field, model, moving), model, moving)
    lower_raise = apply_A("lower", apply_A("raise", field, model, moving), model, moving)
    commutator = lower_raise.values - raise_lower.values
    assert np.max(np.abs(commutator - field.values)) < 1e-5


def test_invalid_direction(model, origin, grid):
    with pytest.raises(ValueError):
        apply_A("sideways", phi_field(model, origin, 0, grid, 0.0), model, origin)


@pytest.mark.parametrize("t", TIMES)
def test_invariant_eigenvalues_do_not_depend_on_time(second_model, moving, grid, t):
    grid = grid.refined()
    for n in range(4):
        field = phi_field(second_model, moving, n, grid, t)
        quotient = rayleigh_quotient(
            lambda f: apply_invariant_I(f, second_model, moving), field
        )
        expected = invariant_eigenvalue(second_model, n + 0.5)
        assert abs(quotient.real - expected) / expected < 1e-6
        assert abs(quotient.imag) / abs(quotient.real) < 1e-8


def test_invariant_is_diagonal_in_the_modes(model, moving, grid):
    fields = [phi_field(model, moving, n, grid, 2.0) for n in range(4)]
    images = [apply_invariant_I(f, model, moving) for f in fields]
    for i, f in enumerate(fields):
        for j, image in enumerate(images):
            if i != j:
                assert abs(inner_product(f, image)) < 1e-6


def test_invariant_scale(model):
    assert invariant_eigenvalue(model, 0.5) == pytest.approx(model.hbar * model.kappa)
    assert invariant_eigenvalue(model, 0.5, i0=2.0) == pytest.approx(2.0 * model.kappa)


def test_invariant_coefficient_relations(second_model):
    times = np.linspace(0.0, 12.0, 25)
    for name, residual in coefficient_relation_residuals(second_model, times).items():
        assert np.max(np.abs(residual)) < 1e-7, name


def test_commutator_identities(model, origin, grid):
    field = phi_field(model, origin, 1, grid, 0.0)
    residuals = commutator_residuals(field, potential_v0(model, grid.points), model.hbar)
    assert max(residuals.values()) < 1e-4


def test_expansion_ladder_is_exact():
    state = ModeExpansion(np.array([0.6, 0.8j]))
    lowered = state.ladder("lower")
    raised = state.ladder("raise")
    assert np.allclose(lowered.coeffs, [0.8j])
    assert np.allclose(raised.coeffs, [0.0, 0.6, math.sqrt(2.0) * 0.8j])
    assert ModeExpansion.basis(0).ladder("lower").norm() == 0.0


def test_expansion_cap():
    with pytest.raises(CapExceeded):
        ModeExpansion(np.ones(MODE_CAP + 2))
    with pytest.raises(CapExceeded):
        ModeExpansion.basis(MODE_CAP).ladder("raise")
    padded = ModeExpansion.basis(MODE_CAP - 1, size=MODE_CAP + 1).ladder("raise")
    assert padded.n_max == MODE_CAP


def test_number_state_quadratures():
    for n in range(5):
        spreads = ModeExpansion.basis(n).quadratures()
        assert spreads.product == pytest.approx(n + 0.5, rel=1e-12)


def test_xi_phase_at_the_initial_time(model, origin, moving):
    x = np.array([-2.0, 0.0, 4.0])
    assert np.allclose(xi_phase(model, origin, x, 0.0), 0.0)
    # <p>(x - <x>)/hbar + <p><x>/(2 hbar) = 1 + 1.5
    assert xi_phase(model, moving, np.array([4.0]), 0.0)[0] == pytest.approx(2.5)
