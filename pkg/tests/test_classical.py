"""Classical layer: Ermakov amplitude, phase, Riccati function and trajectories."""

import math

import numpy as np
import pytest

from darboux_lab.models import ErmakovSpec, OscillatorParams, TrajectorySpec, validate
from darboux_lab.physics import (
    alpha_state,
    classical_energy,
    ermakov_residual,
    riccati_residual,
    s_complex,
    theta,
    theta_closed_form,
    trajectory,
    variance_x,
)
from darboux_lab.utils.errors import ErmakovConditionViolated, NonPositiveParameter, ZeroLambda

TIMES = np.linspace(0.0, 8.0 * math.pi, 1000)


def test_b_is_derived_from_the_ermakov_condition(model, second_model):
    assert model.b == pytest.approx(0.0, abs=1e-12)
    assert second_model.b == pytest.approx(1.0, rel=1e-12)
    assert model.kappa == pytest.approx(2.0 * model.omega0)


def test_condition_violation_is_rejected(params):
    with pytest.raises(ErmakovConditionViolated):
        validate(params, ErmakovSpec(a=1.0, c=3.0))


def test_zero_and_negative_lambda_are_rejected(params):
    with pytest.raises(ZeroLambda):
        validate(params, ErmakovSpec(a=1.0, c=4.0, lam=0.0))
    with pytest.raises(NonPositiveParameter):
        validate(params, ErmakovSpec(a=1.0, c=4.0, lam=-0.5))


def test_nonpositive_mass_is_rejected():
    with pytest.raises(NonPositiveParameter):
        validate(OscillatorParams(m=0.0), ErmakovSpec(a=1.0, c=4.0))


@pytest.mark.parametrize("fixture", ["model", "second_model", "constant_model"])
def test_ermakov_equation_holds(fixture, request):
    m = request.getfixturevalue(fixture)
    alpha, _ = alpha_state(m, TIMES)
    assert np.all(alpha > 0.0)
    assert np.max(np.abs(ermakov_residual(m, TIMES))) < 1e-9


def test_alpha_starts_at_sqrt_a(second_model):
    alpha, alpha_dot = alpha_state(second_model, 0.0)
    assert float(alpha) == pytest.approx(1.0)
    # d(alpha**2)/dt = 2 b omega0 at t0
    assert float(2.0 * alpha * alpha_dot) == pytest.approx(2.0 * second_model.b * 0.5)


def test_constant_alpha_case(constant_model):
    alpha, alpha_dot = alpha_state(constant_model, TIMES)
    assert np.allclose(alpha, math.sqrt(2.0))
    assert np.allclose(alpha_dot, 0.0)


def test_riccati_residual_analytic_and_finite_difference(second_model):
    assert np.max(np.abs(riccati_residual(second_model, TIMES))) < 1e-12
    assert np.max(np.abs(riccati_residual(second_model, TIMES, step=1e-5))) < 1e-8


def test_imaginary_part_of_s(second_model):
    alpha, _ = alpha_state(second_model, TIMES)
    expected = second_model.lam / alpha**2
    assert np.allclose(s_complex(second_model, TIMES).imag, expected, rtol=1e-12)


def test_theta_quadrature_matches_closed_form(model, second_model):
    for m in (model, second_model):
        quad_values = theta(m, TIMES)
        closed = theta_closed_form(m, TIMES)
        assert np.max(np.abs(quad_values - closed)) < 1e-7


def test_theta_is_monotone_and_zero_at_t0(second_model):
    values = theta(second_model, TIMES)
    assert values[0] == 0.0
    assert np.all(np.diff(values) > 0.0)
    assert theta(second_model, -1.0) < 0.0


def test_theta_advances_pi_per_half_period(model):
    # kappa / alpha**2 integrates to pi over half a period whatever a, b, c are
    half_period = math.pi / model.omega0
    assert theta(model, half_period) == pytest.approx(math.pi, rel=1e-10)


def test_theta_scalar_and_array_shapes(model):
    assert isinstance(theta(model, 1.0), float)
    assert theta(model, np.zeros((2, 3))).shape == (2, 3)


def test_trajectory_conserves_energy_and_is_periodic(params):
    traj = TrajectorySpec(x0=3.0, p0=1.0)
    x, p = trajectory(params, traj, TIMES)
    energy = classical_energy(params, x, p)
    assert np.max(np.abs(energy - energy[0])) < 1e-12
    period = 2.0 * math.pi / params.omega0
    x_back, p_back = trajectory(params, traj, period)
    assert float(x_back) == pytest.approx(3.0, abs=1e-10)
    assert float(p_back) == pytest.approx(1.0, abs=1e-10)


def test_variance_default_lambda(model):
    alpha, _ = alpha_state(model, TIMES)
    expected = model.hbar / (4.0 * model.m * model.omega0) * alpha**2
    assert np.allclose(variance_x(model, TIMES), expected)


def test_variance_at_a_general_lambda_has_the_period_of_alpha_squared(params):
    model = validate(params, ErmakovSpec(a=2.0, c=3.0, lam=0.1))
    assert model.b == pytest.approx(math.sqrt(6.0 - 0.16), rel=1e-12)
    alpha, _ = alpha_state(model, TIMES)
    assert np.allclose(variance_x(model, TIMES), alpha**2 / (4.0 * model.lam))
    shifted = variance_x(model, TIMES + math.pi / model.omega0)
    assert np.max(np.abs(shifted - variance_x(model, TIMES))) < 1e-10
