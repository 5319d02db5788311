"""Checks of the Hermite-Gauss modes, the ladder operators A+/- and the invariant I."""

import math

import numpy as np

from darboux_lab.checks.base import CheckContext, check
from darboux_lab.darboux.transform import potential_v0
from darboux_lab.models.oscillator import ErmakovSpec, validate
from darboux_lab.modes.hermite_gauss import (
    apply_A,
    apply_invariant_I,
    coefficient_relation_residuals,
    commutator_residuals,
    invariant_eigenvalue,
    packet_frame,
    phi_field,
    phi_n,
    xi_phase,
)
from darboux_lab.physics.specfun import hermite_functions
from darboux_lab.verify.grid import gram_matrix, inner_product, rayleigh_quotient
from darboux_lab.verify.residuals import schrodinger_residual

GRAM_LEVELS = 8
LADDER_LEVELS = 8
INVARIANT_LEVELS = 4
RESIDUAL_LEVELS = 4
RESIDUAL_TIME = 1.3


def _moving(ctx: CheckContext):
    """The last trajectory, a moving packet in the published presets."""
    return ctx.trajectories[-1]


@check(tolerance=1e-8)
def mode_orthonormality(ctx: CheckContext) -> float:
    """Gram deviation of phi_0..phi_7 at three times for every trajectory."""
    deviation = 0.0
    for traj in ctx.trajectories:
        for t in ctx.times:
            fields = [phi_field(ctx.model, traj, n, ctx.grid, t) for n in range(GRAM_LEVELS)]
            deviation = max(deviation, gram_matrix(fields).deviation)
    return deviation


def _mode_residuals(ctx: CheckContext):
    return ctx.cached("mode_residuals", lambda: _compute_mode_residuals(ctx))


def _compute_mode_residuals(ctx: CheckContext):
    model = ctx.model
    reports = []
    for traj in (ctx.trajectories[0], _moving(ctx)):
        for n in range(RESIDUAL_LEVELS):
            reports.append(
                schrodinger_residual(
                    lambda x, t, n=n, traj=traj: phi_n(model, traj, n, x, t),
                    lambda x, t: potential_v0(model, x),
                    ctx.grid,
                    ctx.t0 + RESIDUAL_TIME,
                    hbar=model.hbar,
                    m=model.m,
                )
            )
    return reports


@check(tolerance=1e-5)
def mode_schrodinger(ctx: CheckContext) -> float:
    """Relative Schrödinger residual of phi_0..phi_3 under V0."""
    return max(report.rel_residual for report in _mode_residuals(ctx))


@check(tolerance=1.3)
def mode_convergence_order(ctx: CheckContext) -> float:
    """Distance of the observed residual order from 3; passes for orders in [1.7, 4.3]."""
    return max(abs(report.convergence_order_estimate - 3.0) for report in _mode_residuals(ctx))


@check(tolerance=1e-6)
def lowering_annihilates_ground(ctx: CheckContext) -> float:
    t = ctx.t0 + RESIDUAL_TIME
    ground = phi_field(ctx.model, _moving(ctx), 0, ctx.fine_grid, t)
    return apply_A("lower", ground, ctx.model, _moving(ctx)).norm()


@check(tolerance=1e-6)
def raising_ground(ctx: CheckContext) -> float:
    """||A+ phi_0 - phi_1||."""
    t = ctx.t0 + RESIDUAL_TIME
    traj = _moving(ctx)
    raised = apply_A("raise", phi_field(ctx.model, traj, 0, ctx.fine_grid, t), ctx.model, traj)
    first = phi_field(ctx.model, traj, 1, ctx.fine_grid, t)
    return raised.with_values(raised.values - first.values).norm()


@check(tolerance=1e-6)
def ladder_commutator(ctx: CheckContext) -> float:
    """max over n <= 8 of |<phi_n|[A-, A+] phi_n> - 1|.

    A+ and A- are mutually adjoint, so <phi_n|[A-, A+] phi_n> = ||A+ phi_n||**2 - ||A- phi_n||**2
    and each operator is applied once to a sampled mode.
    """
    traj = _moving(ctx)
    t = ctx.t0 + RESIDUAL_TIME
    worst = 0.0
    for n in range(LADDER_LEVELS + 1):
        mode = phi_field(ctx.model, traj, n, ctx.fine_grid, t)
        raised = apply_A("raise", mode, ctx.model, traj).norm()
        lowered = apply_A("lower", mode, ctx.model, traj).norm()
        worst = max(worst, abs(raised**2 - lowered**2 - 1.0))
    return worst


@check(tolerance=1e-5)
def number_operator(ctx: CheckContext) -> float:
    """max over 1 <= n <= 8 of ||A+ A- phi_n - n phi_n||.

    A- phi_0 is pure discretisation error; n = 0 is covered by lowering_annihilates_ground.
    """
    traj = _moving(ctx)
    t = ctx.t0 + RESIDUAL_TIME
    worst = 0.0
    for n in range(1, LADDER_LEVELS + 1):
        mode = phi_field(ctx.model, traj, n, ctx.fine_grid, t)
        image = apply_A("raise", apply_A("lower", mode, ctx.model, traj), ctx.model, traj)
        worst = max(worst, image.with_values(image.values - n * mode.values).norm())
    return worst


def _invariant_quotients(ctx: CheckContext) -> np.ndarray:
    return ctx.cached("invariant_quotients", lambda: _compute_invariant_quotients(ctx))


def _compute_invariant_quotients(ctx: CheckContext) -> np.ndarray:
    """Rayleigh quotients of I on phi_0..phi_3 of the moving packet, one row per time."""
    traj = _moving(ctx)
    rows = []
    for t in ctx.times:
        rows.append(
            [
                rayleigh_quotient(
                    lambda f: apply_invariant_I(f, ctx.model, traj, ctx.i0),
                    phi_field(ctx.model, traj, n, ctx.fine_grid, t),
                )
                for n in range(INVARIANT_LEVELS)
            ]
        )
    return np.array(rows)


@check(tolerance=1e-5)
def invariant_time_constancy(ctx: CheckContext) -> float:
    """Relative spread over three times of <phi_n|I phi_n>."""
    quotients = _invariant_quotients(ctx).real
    spread = quotients.max(axis=0) - quotients.min(axis=0)
    return float(np.max(spread / np.abs(quotients.mean(axis=0))))


@check(tolerance=1e-6)
def invariant_spectrum(ctx: CheckContext) -> float:
    """Relative distance of <phi_n|I phi_n> from I0 (2 hbar kappa/m)(n + 1/2)."""
    quotients = _invariant_quotients(ctx).real
    expected = np.array(
        [invariant_eigenvalue(ctx.model, n + 0.5, ctx.i0) for n in range(INVARIANT_LEVELS)]
    )
    return float(np.max(np.abs(quotients - expected) / expected))


@check(tolerance=1e-8)
def invariant_hermiticity(ctx: CheckContext) -> float:
    quotients = _invariant_quotients(ctx)
    return float(np.max(np.abs(quotients.imag) / np.abs(quotients.real)))


@check(tolerance=1e-6)
def invariant_off_diagonal(ctx: CheckContext) -> float:
    """Largest |<phi_m|I phi_n>| for m != n, relative to the ground eigenvalue."""
    traj = _moving(ctx)
    t = ctx.t0 + RESIDUAL_TIME
    modes = [phi_field(ctx.model, traj, n, ctx.fine_grid, t) for n in range(INVARIANT_LEVELS)]
    images = [apply_invariant_I(mode, ctx.model, traj, ctx.i0) for mode in modes]
    scale = invariant_eigenvalue(ctx.model, 0.5, ctx.i0)
    worst = 0.0
    for m, mode in enumerate(modes):
        for n, image in enumerate(images):
            if m != n:
                worst = max(worst, abs(inner_product(mode, image)) / scale)
    return worst


@check(tolerance=1e-6)
def invariant_constant_alpha(ctx: CheckContext) -> float:
    """Static packet a = c, where I = (4 I0/m) H0 at the default lambda."""
    params = ctx.model.params
    width = 2.0 * params.hbar * ctx.model.lam / (params.m * params.omega0)
    model = validate(params, ErmakovSpec(a=width, c=width, lam=ctx.model.lam))
    traj = ctx.trajectories[0]
    worst = 0.0
    for n in range(INVARIANT_LEVELS):
        mode = phi_field(model, traj, n, ctx.fine_grid, ctx.t0 + RESIDUAL_TIME)
        quotient = rayleigh_quotient(lambda f: apply_invariant_I(f, model, traj, ctx.i0), mode)
        expected = ctx.i0 * 2.0 * params.hbar * model.kappa / params.m * (n + 0.5)
        worst = max(worst, abs(quotient - expected) / expected)
    return worst


@check(tolerance=1e-7)
def invariant_coefficient_relations(ctx: CheckContext) -> float:
    """Six first-order relations among c1..c4 at 50 instants of one period."""
    period = 2.0 * math.pi / ctx.model.omega0
    times = np.linspace(ctx.t0, ctx.t0 + period, 50)
    residuals = coefficient_relation_residuals(ctx.model, times)
    return max(float(np.max(np.abs(values))) for values in residuals.values())


@check(tolerance=1e-4)
def commutator_identities(ctx: CheckContext) -> float:
    field = phi_field(ctx.model, _moving(ctx), 2, ctx.fine_grid, ctx.t0 + RESIDUAL_TIME)
    potential = potential_v0(ctx.model, ctx.fine_grid.points)
    return max(commutator_residuals(field, potential, ctx.model.hbar).values())


@check(tolerance=1e-10)
def phase_structure(ctx: CheckContext) -> float:
    """At fixed chi, sqrt(alpha) phi_n e^{i(n+1/2)theta - i xi} is sqrt(scale) h_n(chi) at all t."""
    model = ctx.model
    traj = _moving(ctx)
    chi = np.linspace(-3.0, 3.0, 61)
    reference = math.sqrt(model.chi_scale) * hermite_functions(INVARIANT_LEVELS - 1, chi)
    worst = 0.0
    for t in ctx.times:
        frame = packet_frame(model, traj, t)
        x = frame.x_mean + frame.alpha * chi / model.chi_scale
        xi = xi_phase(model, traj, x, t)
        for n in range(INVARIANT_LEVELS):
            values = phi_n(model, traj, n, x, t)
            stripped = math.sqrt(frame.alpha) * values * np.exp(1j * ((n + 0.5) * frame.theta - xi))
            worst = max(worst, float(np.max(np.abs(stripped - reference[n]))))
    return worst


modes_checks = [
    mode_orthonormality,
    mode_schrodinger,
    mode_convergence_order,
    lowering_annihilates_ground,
    raising_ground,
    ladder_commutator,
    number_operator,
    invariant_time_constancy,
    invariant_spectrum,
    invariant_hermiticity,
    invariant_off_diagonal,
    invariant_constant_alpha,
    invariant_coefficient_relations,
    commutator_identities,
    phase_structure,
]
