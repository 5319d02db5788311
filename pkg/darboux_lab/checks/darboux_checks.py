"""Checks of the transformation: seed function, intertwiner, deformed potential and psi_n."""

import math

import numpy as np

from darboux_lab.checks.base import CheckContext, CheckSkipped, check
from darboux_lab.darboux.states import (
    apply_invariant_IG,
    apply_L,
    apply_L_adjoint,
    l_phi_norm_exact,
    ladder_B,
    missing_state,
    psi_field,
    psi_n,
)
from darboux_lab.darboux.transform import (
    DarbouxModel,
    beta_function,
    build_darboux,
    f_function,
    f_function_kummer,
    g_identity_residual,
    g_operator,
    potential_v0,
    potential_v1,
    potential_v1_complex,
    realness_residual,
    u_function,
    u_log_derivative,
)
from darboux_lab.models.oscillator import DarbouxSpec
from darboux_lab.modes.expansion import ModeExpansion
from darboux_lab.modes.hermite_gauss import (
    apply_invariant,
    apply_invariant_I,
    invariant_eigenvalue,
    phi_field,
    phi_n,
)
from darboux_lab.utils.errors import NotNormalizable
from darboux_lab.verify.grid import (
    Grid1D,
    StateField,
    checked_derivative,
    gram_matrix,
    inner_product,
    rayleigh_quotient,
)
from darboux_lab.verify.residuals import intertwining_residual, schrodinger_residual

STATE_LEVELS = 6
L_LEVELS = 6
COMPLETENESS_LEVELS = 12
COMPLETENESS_IMAGES = 10
U_CHI = 5.0
U_SPACING = 0.01
RESIDUAL_TIME = 1.3
TAIL_CHI = 6.0
REALNESS_SPACING = 0.1
RANDOM_POINTS = 100
SEED = 20230


def _moving_model(ctx: CheckContext) -> DarbouxModel:
    return ctx.darboux(len(ctx.trajectories) - 1)


def _random_points(ctx: CheckContext, dm: DarbouxModel, t: float) -> np.ndarray:
    grid = ctx.grid_for(dm, t)
    rng = np.random.default_rng(SEED)
    return rng.uniform(grid.x_min, grid.x_max, RANDOM_POINTS)


@check(tolerance=0.0, comparison="above")
def nodeless_certificate(ctx: CheckContext) -> float:
    """Nearest approach of exp(-chi**2/2) F to zero on the scan; certification must pass."""
    return ctx.darboux().report.nearest_value


@check(tolerance=1e-8)
def closed_form_matches_kummer(ctx: CheckContext) -> float:
    """Closed-form F and F'/F against the two-branch 1F1 route for |chi| <= 5."""
    dm = ctx.darboux()
    if dm.family == "kummer":
        raise CheckSkipped("epsilon has no closed form; F is evaluated by 1F1 directly")
    chi = np.linspace(-5.0, 5.0, 1001)
    closed = f_function(dm.spec, chi)
    series = f_function_kummer(dm.spec, chi)
    value_gap = np.abs(closed.value - series.value) / np.abs(series.value)
    slope_gap = np.abs(closed.log_derivative - series.log_derivative) / (
        1.0 + np.abs(series.log_derivative)
    )
    return float(max(np.max(value_gap), np.max(slope_gap)))


@check(tolerance=1e-6)
def intertwiner_forms_agree(ctx: CheckContext) -> float:
    """Primitive alpha(d/dx + beta) against the ladder form of L on phi_0..phi_5."""
    dm = _moving_model(ctx)
    worst = 0.0
    for t in ctx.times[:2]:
        grid = ctx.grid_for(dm, t, fine=True)
        for n in range(L_LEVELS):
            mode = phi_field(dm.base, dm.traj, n, grid, t)
            primitive = apply_L(dm, mode, "primitive")
            ladder = apply_L(dm, mode, "ladder")
            gap = primitive.with_values(primitive.values - ladder.values).norm()
            worst = max(worst, gap / ladder.norm())
    return worst


def _bump(x: np.ndarray, t: float) -> np.ndarray:
    """Moving Gaussian with a momentum kick; solves neither Schrödinger equation."""
    return np.exp(-0.5 * (x - 1.0 - 0.1 * t) ** 2 + 0.3j * x + 0.2j * t)


@check(tolerance=1e-4)
def intertwining_relation(ctx: CheckContext) -> float:
    """L(i hbar d/dt - H0) f = (i hbar d/dt - H1) L f on modes and on a non-solution."""
    dm = _moving_model(ctx)
    model = dm.base
    t = ctx.t0 + RESIDUAL_TIME
    grid = ctx.grid_for(dm, t, fine=True)
    fields = [
        lambda x, tau, n=n: phi_n(model, dm.traj, n, x, tau) for n in range(4)
    ] + [_bump]
    worst = 0.0
    for field in fields:
        worst = max(
            worst,
            intertwining_residual(
                field,
                lambda f: apply_L(dm, f, strict=False),
                lambda x, tau: potential_v0(model, x),
                lambda x, tau: potential_v1(dm, x, tau),
                grid,
                t,
                hbar=model.hbar,
                m=model.m,
            ),
        )
    return worst


@check(tolerance=1e-10)
def potential_is_real(ctx: CheckContext) -> float:
    """Imaginary part of V0 - (hbar**2/m) d2/dx2 ln u + i hbar alpha_dot/alpha.

    ln u is differenced on the grid; its phase and modulus are not split analytically.
    """
    dm = _moving_model(ctx)
    worst = 0.0
    for t in ctx.times:
        values = potential_v1_complex(dm, ctx.grid_for(dm, t), t)
        worst = max(worst, float(np.max(np.abs(values.imag)) / np.max(np.abs(values.real))))
    return worst


@check(tolerance=1e-8)
def realness_condition(ctx: CheckContext) -> float:
    """d3/dx3 ln(u/u*) on a grid of spacing 0.1."""
    dm = _moving_model(ctx)
    worst = 0.0
    for t in ctx.times:
        base = ctx.grid_for(dm, t)
        n_points = int(round((base.x_max - base.x_min) / REALNESS_SPACING)) + 1
        grid = Grid1D(x_min=base.x_min, x_max=base.x_max, n_points=n_points)
        worst = max(worst, realness_residual(dm, grid, t))
    return worst


@check(tolerance=1e-10)
def deformation_tail(ctx: CheckContext) -> float:
    """For epsilon = -1/2, V1 - V0 tends to -hbar kappa/alpha**2 beyond |chi| = 6."""
    dm = _moving_model(ctx)
    if dm.family != "erf":
        raise CheckSkipped("tail locality is a property of the epsilon = -1/2 family")
    model = dm.base
    worst = 0.0
    for t in ctx.times:
        frame = dm.frame(t)
        x = ctx.grid_for(dm, t).points
        chi = model.chi_scale * (x - frame.x_mean) / frame.alpha
        x = x[np.abs(chi) > TAIL_CHI]
        shift = model.hbar * model.kappa / frame.alpha**2
        gap = potential_v1(dm, x, t) - potential_v0(model, x) + shift
        worst = max(worst, float(np.max(np.abs(gap))))
    return worst


@check(tolerance=1e-8)
def beta_is_log_derivative(ctx: CheckContext) -> float:
    """beta + d/dx ln u at 100 random points."""
    dm = _moving_model(ctx)
    t = ctx.t0 + RESIDUAL_TIME
    x = _random_points(ctx, dm, t)
    beta = beta_function(dm, x, t)
    return float(np.max(np.abs(beta + u_log_derivative(dm, x, t)) / np.maximum(1.0, np.abs(beta))))


@check(tolerance=1e-10)
def deformation_operator(ctx: CheckContext) -> float:
    """V0 - (hbar**2/m) G reproduces V1 at 100 random points."""
    dm = _moving_model(ctx)
    model = dm.base
    t = ctx.t0 + RESIDUAL_TIME
    x = _random_points(ctx, dm, t)
    v1 = potential_v1(dm, x, t)
    rebuilt = potential_v0(model, x) - model.hbar**2 / model.m * g_operator(dm, x, t)
    return float(np.max(np.abs(rebuilt - v1) / np.maximum(1.0, np.abs(v1))))


@check(tolerance=1e-5)
def deformation_evolution(ctx: CheckContext) -> float:
    """Centred evolution identity of G at three times."""
    dm = _moving_model(ctx)
    return max(g_identity_residual(dm, ctx.grid_for(dm, t), t) for t in ctx.times)


@check(tolerance=1e-8)
def trivial_seed_reduction(ctx: CheckContext) -> float:
    """epsilon = 1/2, k_b = 0 leaves a constant shift and a pure lowering intertwiner.

    V1 - V0 = hbar kappa/alpha**2 and L phi_n = 2 sqrt(lambda n) e^{-i theta} phi_{n-1}.
    """
    traj = ctx.trajectories[-1]
    dm = build_darboux(ctx.model, DarbouxSpec(epsilon=0.5, k_a=1.0, k_b=0.0), traj)
    model = dm.base
    t = ctx.t0 + RESIDUAL_TIME
    frame = dm.frame(t)
    grid = ctx.fine_grid.refined()
    shift = model.hbar * model.kappa / frame.alpha**2
    worst = float(
        np.max(np.abs(potential_v1(dm, grid.points, t) - potential_v0(model, grid.points) - shift))
    )
    for n in range(1, 4):
        image = apply_L(dm, phi_field(model, traj, n, grid, t))
        below = phi_n(model, traj, n - 1, grid.points, t)
        expected = 2.0 * math.sqrt(model.lam * n) * np.exp(-1j * frame.theta) * below
        gap = image.with_values(image.values - expected).norm()
        worst = max(worst, gap / math.sqrt(model.lam * n))
    return worst


@check(tolerance=1e-8)
def l_phi_norms(ctx: CheckContext) -> float:
    """Tabulated ||L phi_n|| against sqrt((2 m kappa/hbar)(n + 1/2 - epsilon)) for n <= 10."""
    dm = ctx.darboux()
    levels = min(11, len(dm.l_phi_norms))
    return max(
        abs(dm.l_phi_norms[n] - l_phi_norm_exact(dm, n)) / l_phi_norm_exact(dm, n)
        for n in range(levels)
    )


def _psi_fields(ctx: CheckContext, dm: DarbouxModel, t: float, fine: bool = False):
    grid = ctx.grid_for(dm, t, fine=fine)
    return [psi_field(dm, n, grid, t) for n in range(STATE_LEVELS)]


@check(tolerance=1e-6)
def state_orthonormality(ctx: CheckContext) -> float:
    """Gram deviation of psi_0..psi_5 at three times."""
    dm = _moving_model(ctx)
    return max(gram_matrix(_psi_fields(ctx, dm, t)).deviation for t in ctx.times)


@check(tolerance=1e-6)
def state_norm_conservation(ctx: CheckContext) -> float:
    """| ||psi_n(t)|| - 1 | for n <= 5 at three times."""
    dm = _moving_model(ctx)
    return max(abs(f.norm() - 1.0) for t in ctx.times for f in _psi_fields(ctx, dm, t))


def _state_residuals(ctx: CheckContext):
    return ctx.cached("state_residuals", lambda: _compute_state_residuals(ctx))


def _compute_state_residuals(ctx: CheckContext):
    dm = _moving_model(ctx)
    model = dm.base
    t = ctx.t0 + RESIDUAL_TIME
    return [
        schrodinger_residual(
            lambda x, tau, n=n: psi_n(dm, n, x, tau),
            lambda x, tau: potential_v1(dm, x, tau),
            ctx.grid_for(dm, t),
            t,
            hbar=model.hbar,
            m=model.m,
        )
        for n in range(1, 4)
    ]


@check(tolerance=1e-4)
def state_schrodinger(ctx: CheckContext) -> float:
    """Relative Schrödinger residual of psi_1..psi_3 under V1."""
    return max(report.rel_residual for report in _state_residuals(ctx))


@check(tolerance=1e-5)
def u_schrodinger_residual(ctx: CheckContext) -> float:
    """Relative residual of u itself under V0 for |chi| <= 5 at dx = 0.01."""
    dm = _moving_model(ctx)
    model = dm.base
    t = ctx.t0 + RESIDUAL_TIME
    frame = dm.frame(t)
    half = min(U_CHI, 0.999 * dm.window) * frame.alpha / model.chi_scale
    report = schrodinger_residual(
        lambda x, tau: u_function(dm, x, tau),
        lambda x, tau: potential_v0(model, x),
        Grid1D.around(frame.x_mean, half, U_SPACING),
        t,
        hbar=model.hbar,
        m=model.m,
    )
    return report.rel_residual


@check(tolerance=1e-4)
def completeness_proxy(ctx: CheckContext) -> float:
    """Sum over n <= 12 of |psi_n><psi_n| applied to L phi_k, k <= 10, at one time.

    L phi_k is taken on the grid from phi_k, independently of the closed-form psi_n;
    the measurement is the largest relative distance between L phi_k and its projection.
    """
    dm = _moving_model(ctx)
    t = ctx.t0 + RESIDUAL_TIME
    grid = ctx.grid_for(dm, t, fine=True)
    top = min(COMPLETENESS_LEVELS, len(dm.l_phi_norms))
    first = 0 if dm.missing_norm is not None else 1
    basis = [psi_field(dm, n, grid, t) for n in range(first, top + 1)]
    worst = 0.0
    for k in range(min(COMPLETENESS_IMAGES, top - 1) + 1):
        image = apply_L(dm, phi_field(dm.base, dm.traj, k, grid, t))
        projected = sum(inner_product(state, image) * state.values for state in basis)
        gap = image.with_values(projected - image.values).norm()
        worst = max(worst, gap / image.norm())
    return worst


@check(tolerance=1.3)
def state_convergence_order(ctx: CheckContext) -> float:
    """Distance of the observed residual order from 3; passes for orders in [1.7, 4.3]."""
    return max(abs(report.convergence_order_estimate - 3.0) for report in _state_residuals(ctx))


@check(tolerance=1e-2, comparison="above", expected_failure=True)
def wrong_state_control(ctx: CheckContext) -> float:
    """phi_0 is not a solution under V1; its residual must stay large."""
    dm = _moving_model(ctx)
    model = dm.base
    t = ctx.t0 + RESIDUAL_TIME
    report = schrodinger_residual(
        lambda x, tau: phi_n(model, dm.traj, 0, x, tau),
        lambda x, tau: potential_v1(dm, x, tau),
        ctx.grid_for(dm, t),
        t,
        hbar=model.hbar,
        m=model.m,
    )
    return report.rel_residual


@check(tolerance=1e-6)
def missing_state_kernel(ctx: CheckContext) -> float:
    """||L-dagger psi_M|| relative to ||alpha d/dx psi_M||."""
    dm = _moving_model(ctx)
    worst = 0.0
    for t in ctx.times:
        grid = ctx.grid_for(dm, t, fine=True)
        state = StateField(grid=grid, values=missing_state(dm, grid.points, t), time=t)
        scale = dm.frame(t).alpha * np.linalg.norm(checked_derivative(state, order=1))
        image = apply_L_adjoint(dm, state)
        worst = max(worst, float(np.linalg.norm(image.values) / scale))
    return worst


@check(tolerance=1e-7)
def missing_state_orthogonality(ctx: CheckContext) -> float:
    """max over n <= 5 of |<psi_M | L phi_n>| with L phi_n normalised."""
    dm = _moving_model(ctx)
    worst = 0.0
    for t in ctx.times:
        fields = _psi_fields(ctx, dm, t)
        worst = max(worst, max(abs(inner_product(fields[0], f)) for f in fields[1:]))
    return worst


@check(tolerance=0.0, expected_error=NotNormalizable)
def missing_state_control(ctx: CheckContext) -> float:
    """epsilon = 1/2 with k_b = 0 leaves 1/(alpha u*) outside L2."""
    dm = build_darboux(ctx.model, DarbouxSpec(epsilon=0.5, k_a=1.0, k_b=0.0))
    return float(np.max(np.abs(missing_state(dm, ctx.grid.points, ctx.t0))))


def _deformed_quotients(ctx: CheckContext) -> np.ndarray:
    return ctx.cached("deformed_quotients", lambda: _compute_deformed_quotients(ctx))


def _compute_deformed_quotients(ctx: CheckContext) -> np.ndarray:
    """Rayleigh quotients of I_G on psi_0..psi_3, one row per time."""
    dm = _moving_model(ctx)
    rows = []
    for t in ctx.times:
        fields = _psi_fields(ctx, dm, t, fine=True)[:4]
        rows.append(
            [rayleigh_quotient(lambda f: apply_invariant_IG(f, dm, ctx.i0), f) for f in fields]
        )
    return np.array(rows)


@check(tolerance=1e-5)
def deformed_invariant_constancy(ctx: CheckContext) -> float:
    """Relative spread over three times of <psi_n|I_G psi_n>."""
    quotients = _deformed_quotients(ctx).real
    spread = quotients.max(axis=0) - quotients.min(axis=0)
    return float(np.max(spread / np.abs(quotients.mean(axis=0))))


@check(tolerance=1e-5)
def deformed_invariant_spectrum(ctx: CheckContext) -> float:
    """Eigenvalues epsilon for psi_M and n + 1/2 for psi_{n+1}, in units I0 (2 hbar kappa/m)."""
    dm = _moving_model(ctx)
    levels = [dm.spec.epsilon] + [n + 0.5 for n in range(3)]
    expected = np.array([invariant_eigenvalue(dm.base, level, ctx.i0) for level in levels])
    quotients = _deformed_quotients(ctx).real
    return float(np.max(np.abs(quotients - expected) / np.max(np.abs(expected))))


@check(tolerance=1e-5)
def deformed_invariant_off_diagonal(ctx: CheckContext) -> float:
    dm = _moving_model(ctx)
    t = ctx.t0 + RESIDUAL_TIME
    fields = _psi_fields(ctx, dm, t, fine=True)[:4]
    images = [apply_invariant_IG(f, dm, ctx.i0) for f in fields]
    scale = invariant_eigenvalue(dm.base, 0.5, ctx.i0)
    return max(
        abs(inner_product(f, image)) / scale
        for m, f in enumerate(fields)
        for n, image in enumerate(images)
        if m != n
    )


@check(tolerance=1e-12)
def deformed_invariant_reduces(ctx: CheckContext) -> float:
    """I_G with G set to zero is I."""
    dm = _moving_model(ctx)
    t = ctx.t0 + RESIDUAL_TIME
    field = _psi_fields(ctx, dm, t, fine=True)[1]
    zeroed = apply_invariant(field, dm.base, dm.traj, np.zeros(field.grid.n_points), ctx.i0)
    plain = apply_invariant_I(field, dm.base, dm.traj, ctx.i0)
    return float(np.max(np.abs(zeroed.values - plain.values)))


@check(tolerance=1e-12)
def transformed_ladder_algebra(ctx: CheckContext) -> float:
    """[B-, B+] = 1 on a random coefficient vector, in coefficient space."""
    rng = np.random.default_rng(SEED)
    coeffs = rng.normal(size=20) + 1j * rng.normal(size=20)
    vector = ModeExpansion(coeffs)
    lower_raise = ladder_B("lower", ladder_B("raise", vector)).coeffs
    raise_lower = ladder_B("raise", ladder_B("lower", vector)).coeffs
    size = max(lower_raise.size, raise_lower.size, coeffs.size)
    commutator = np.zeros(size, dtype=complex)
    commutator[: lower_raise.size] += lower_raise
    commutator[: raise_lower.size] -= raise_lower
    commutator[: coeffs.size] -= coeffs
    return float(np.max(np.abs(commutator)) / np.max(np.abs(coeffs)))


darboux_checks = [
    nodeless_certificate,
    closed_form_matches_kummer,
    intertwiner_forms_agree,
    intertwining_relation,
    potential_is_real,
    realness_condition,
    deformation_tail,
    beta_is_log_derivative,
    deformation_operator,
    deformation_evolution,
    trivial_seed_reduction,
    l_phi_norms,
    state_orthonormality,
    state_norm_conservation,
    state_schrodinger,
    u_schrodinger_residual,
    state_convergence_order,
    wrong_state_control,
    missing_state_kernel,
    missing_state_orthogonality,
    completeness_proxy,
    missing_state_control,
    deformed_invariant_constancy,
    deformed_invariant_spectrum,
    deformed_invariant_off_diagonal,
    deformed_invariant_reduces,
    transformed_ladder_algebra,
]
