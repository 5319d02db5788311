"""Coherent states: truncation, eigenrelations, statistics and overcompleteness."""

import math

import numpy as np
import pytest

from darboux_lab.coherent import (
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
from darboux_lab.darboux import apply_L, ladder_B
from darboux_lab.modes import MODE_CAP, apply_A
from darboux_lab.utils.errors import CapExceeded, CapTooSmall
from darboux_lab.verify import Grid1D, StateField, inner_product


def test_default_cap():
    assert default_cap(0.0) == 10
    assert default_cap(1j) == 16
    assert default_cap(20.0) == MODE_CAP


def test_truncation_tail_is_negligible_for_moderate_labels():
    for z in (1j, 2 + 2j, 3 - 3j):
        label = CoherentLabel.for_z(z)
        assert poisson_tail(z, label.cap_n) <= 1e-14


def test_large_labels_are_refused():
    with pytest.raises(CapTooSmall):
        CoherentLabel.for_z(7.0 + 0j)
    with pytest.raises(CapExceeded):
        CoherentLabel(z=0j, cap_n=MODE_CAP + 1)
    with pytest.raises(ValueError):
        CoherentLabel(z=0j, cap_n=-1)


def test_coefficients_are_poisson_amplitudes():
    label = CoherentLabel.for_z(1.5 - 0.5j)
    coeffs = coherent_coeffs(label).coeffs
    n = np.arange(coeffs.size)
    mean = abs(label.z) ** 2
    weights = np.array([math.exp(-mean) * mean**k / math.factorial(k) for k in n])
    assert np.allclose(np.abs(coeffs) ** 2, weights, atol=1e-15)
    assert np.sum(np.abs(coeffs) ** 2) == pytest.approx(1.0, abs=1e-14)


def test_vacuum_label_is_the_ground_mode(model, origin, grid):
    label = CoherentLabel.for_z(0j)
    values = phi_z(model, origin, label, grid.points, 0.4)
    from_dispatch = coherent_values("phi", model, origin, label, grid.points, 0.4)
    assert np.allclose(values, from_dispatch)
    ground = CoherentLabel(z=0j, cap_n=0)
    assert np.allclose(values, phi_z(model, origin, ground, grid.points, 0.4), atol=1e-10)


@pytest.mark.parametrize("z", [1j, 2 + 2j])
def test_phi_z_is_a_lowering_eigenstate(model, moving, grid, z):
    label = CoherentLabel.for_z(z)
    t = 1.3
    field = StateField(grid=grid, values=phi_z(model, moving, label, grid.points, t), time=t)
    assert field.norm() == pytest.approx(1.0, abs=1e-8)
    lowered = apply_A("lower", field, model, moving).values
    assert np.max(np.abs(lowered - z * field.values)) < 1e-6


def test_phi_z_has_minimum_uncertainty(model, moving, grid):
    label = CoherentLabel.for_z(1j)
    field = StateField(grid=grid, values=phi_z(model, moving, label, grid.points, 2.0), time=2.0)
    spreads = quadrature_stats(field, "A", model, moving)
    assert spreads.product == pytest.approx(0.5, abs=1e-6)


def test_psi_tilde_coefficients_have_minimum_uncertainty():
    spreads = quadrature_stats(coherent_coeffs(CoherentLabel.for_z(3 - 3j)), "B")
    assert spreads.product == pytest.approx(0.5, abs=1e-10)


def test_quadrature_stats_argument_checks(model, grid):
    with pytest.raises(ValueError):
        quadrature_stats(coherent_coeffs(CoherentLabel.for_z(1j)), "A", model)
    with pytest.raises(ValueError):
        quadrature_stats(StateField(grid=grid, values=np.zeros(grid.n_points), time=0.0), "B")


def test_transformed_lowering_eigenrelation():
    expansion = coherent_coeffs(CoherentLabel.for_z(2 + 2j))
    lowered = ladder_B("lower", expansion)
    size = lowered.coeffs.size
    assert np.allclose(lowered.coeffs, (2 + 2j) * expansion.coeffs[:size], rtol=1e-12)


def test_psi_z_closed_form(moving_erf_darboux, grid):
    label = CoherentLabel.for_z(1j)
    t = 1.3
    direct = psi_z(moving_erf_darboux, label, grid.points, t)
    base = moving_erf_darboux.base
    traj = moving_erf_darboux.traj
    field = StateField(grid=grid, values=phi_z(base, traj, label, grid.points, t), time=t)
    via_operator = apply_L(moving_erf_darboux, field).values
    assert np.max(np.abs(direct - via_operator)) / np.max(np.abs(direct)) < 1e-6


def test_psi_tilde_z_is_normalised(moving_erf_darboux):
    grid = Grid1D(x_min=-25.0, x_max=25.0, n_points=2501)
    label = CoherentLabel.for_z(1j)
    values = psi_tilde_z(moving_erf_darboux, label, grid.points, 1.3)
    field = StateField(grid=grid, values=values, time=1.3)
    assert field.norm() == pytest.approx(1.0, abs=1e-6)


def test_dispatch_requires_a_transformation_for_psi(model, origin, grid):
    label = CoherentLabel.for_z(1j)
    with pytest.raises(ValueError):
        coherent_values("psi", model, origin, label, grid.points, 0.0)


def test_overcompleteness():
    assert overcompleteness_error() < 5e-3


def test_displacement_builds_the_coherent_state(model, moving, grid):
    grid = grid.refined()
    z = 0.5 + 0.5j
    t = 0.8
    displaced = displaced_ground(model, moving, z, grid, t, terms=20)
    label = CoherentLabel.for_z(z)
    target = StateField(grid=grid, values=phi_z(model, moving, label, grid.points, t), time=t)
    overlap = inner_product(target, displaced)
    assert abs(overlap) == pytest.approx(1.0, abs=1e-6)
