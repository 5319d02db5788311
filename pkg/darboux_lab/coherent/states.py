"""Coherent states of the oscillator packets and of the transformed system."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import ArrayLike
from scipy.stats import poisson

from darboux_lab.darboux.states import psi_expansion_values
from darboux_lab.darboux.transform import DarbouxModel
from darboux_lab.models.oscillator import TrajectorySpec, ValidatedModel
from darboux_lab.modes.expansion import MODE_CAP, ModeExpansion, Quadratures
from darboux_lab.modes.hermite_gauss import apply_A, expansion_values, phi_field, phi_n
from darboux_lab.utils.errors import CapExceeded, CapTooSmall
from darboux_lab.utils.logger import get_logger
from darboux_lab.verify.grid import Grid1D, StateField, inner_product

logger = get_logger(__name__)

TAIL_BOUND = 1e-14

CoherentFamily = Literal["phi", "psi", "psi_tilde"]


def default_cap(z: complex) -> int:
    """ceil(|z|**2 + 10 sqrt(|z|**2 + 1)), at most MODE_CAP."""
    mean = abs(z) ** 2
    return min(int(math.ceil(mean + 10.0 * math.sqrt(mean + 1.0))), MODE_CAP)


def poisson_tail(z: complex, cap: int) -> float:
    """Weight exp(-|z|**2) sum_{n > cap} |z|**(2n)/n! left out by the truncation."""
    return float(poisson.sf(cap, abs(z) ** 2))


@dataclass(frozen=True)
class CoherentLabel:
    """Eigenvalue z and the truncation index of its mode series."""

    z: complex
    cap_n: int

    def __post_init__(self) -> None:
        if self.cap_n < 0:
            raise ValueError(f"cap_n must be nonnegative, got {self.cap_n}")
        if self.cap_n > MODE_CAP:
            raise CapExceeded(f"cap_n = {self.cap_n} exceeds the mode cap {MODE_CAP}")
        tail = poisson_tail(self.z, self.cap_n)
        if tail > TAIL_BOUND:
            raise CapTooSmall(
                f"truncation at n = {self.cap_n} leaves Poisson tail {tail:.2e} for z = {self.z}"
            )

    @classmethod
    def for_z(cls, z: complex) -> "CoherentLabel":
        return cls(z=complex(z), cap_n=default_cap(z))


def coherent_coeffs(label: CoherentLabel) -> ModeExpansion:
    """Coefficients exp(-|z|**2/2) z**n / sqrt(n!) for n = 0..cap_n, by recurrence."""
    coeffs = np.empty(label.cap_n + 1, dtype=complex)
    coeffs[0] = math.exp(-0.5 * abs(label.z) ** 2)
    for n in range(1, label.cap_n + 1):
        coeffs[n] = coeffs[n - 1] * label.z / math.sqrt(n)
    return ModeExpansion(coeffs)


def phi_z(
    model: ValidatedModel, traj: TrajectorySpec, label: CoherentLabel, x: ArrayLike, t: float
) -> np.ndarray:
    """Truncated superposition sum_n c_n phi_n(x, t), an eigenstate of A- with eigenvalue z."""
    return expansion_values(model, traj, coherent_coeffs(label), x, t)


def psi_z(dm: DarbouxModel, label: CoherentLabel, x: ArrayLike, t: float) -> np.ndarray:
    """L phi_z = -alpha (d/dx ln F) phi_z + 2 sqrt(lambda) z e^{-i theta} phi_z, unnormalised.

    Raises:
        OutOfWindow: Outside the certified window.
    """
    x = np.asarray(x, dtype=float)
    frame = dm.frame(t)
    _, f = dm.f_values(frame, x)
    base = phi_z(dm.base, dm.traj, label, x, t)
    ladder = 2.0 * math.sqrt(dm.base.lam) * label.z * np.exp(-1j * frame.theta)
    return (-dm.base.chi_scale * f.log_derivative + ladder) * base


def psi_tilde_z(dm: DarbouxModel, label: CoherentLabel, x: ArrayLike, t: float) -> np.ndarray:
    """Poisson superposition sum_n c_n psi_n(x, t), an eigenstate of B- with eigenvalue z.

    Raises:
        NotNormalizable: If the missing state psi_0 is not square integrable.
        OutOfWindow: Outside the certified window.
    """
    return psi_expansion_values(dm, coherent_coeffs(label), x, t)


def coherent_values(
    family: CoherentFamily,
    dm_or_model: DarbouxModel | ValidatedModel,
    traj: TrajectorySpec,
    label: CoherentLabel,
    x: ArrayLike,
    t: float,
) -> np.ndarray:
    """Dispatch on the coherent family; phi accepts a plain oscillator model."""
    if family == "phi":
        model = dm_or_model.base if isinstance(dm_or_model, DarbouxModel) else dm_or_model
        return phi_z(model, traj, label, x, t)
    if not isinstance(dm_or_model, DarbouxModel):
        raise ValueError(f"family {family!r} needs a Darboux transformation")
    if family == "psi":
        return psi_z(dm_or_model, label, x, t)
    if family == "psi_tilde":
        return psi_tilde_z(dm_or_model, label, x, t)
    raise ValueError(f"Unknown coherent family {family!r}")


def _grid_quadratures(
    field: StateField, model: ValidatedModel, traj: TrajectorySpec
) -> Quadratures:
    raised = apply_A("raise", field, model, traj).values
    lowered = apply_A("lower", field, model, traj).values
    norm2 = inner_product(field, field).real
    spreads = []
    for values in ((raised + lowered) / math.sqrt(2.0), 1j * (raised - lowered) / math.sqrt(2.0)):
        image = field.with_values(values)
        mean = inner_product(field, image).real / norm2
        second = inner_product(image, image).real / norm2
        spreads.append(math.sqrt(max(second - mean**2, 0.0)))
    return Quadratures(dq=spreads[0], dp=spreads[1])


def quadrature_stats(
    source: StateField | ModeExpansion,
    which: Literal["A", "B"],
    model: ValidatedModel | None = None,
    traj: TrajectorySpec | None = None,
) -> Quadratures:
    """Quadrature uncertainties of a state.

    ``which="A"`` takes a grid field and applies A+/- by finite differences (model
    and traj required); ``which="B"`` takes a coefficient vector over psi_n and uses
    the exact ladder algebra.

    Raises:
        GridTooCoarse: If a grid derivative is not resolved.
    """
    if which == "B":
        if not isinstance(source, ModeExpansion):
            raise ValueError("B quadratures are computed on expansion coefficients")
        return source.quadratures()
    if which != "A":
        raise ValueError(f"which must be 'A' or 'B', got {which!r}")
    if not isinstance(source, StateField) or model is None:
        raise ValueError("A quadratures need a grid field and the oscillator model")
    return _grid_quadratures(source, model, traj if traj is not None else TrajectorySpec())


def overcompleteness_error(
    m_max: int = 4, radius: float = 6.0, n_angles: int = 24, n_radii: int = 30
) -> float:
    """Sup-norm error of (1/pi) integral |phi_z><phi_z| d2z restricted to phi_0..phi_m_max.

    Uses <phi_m|phi_z> = exp(-|z|**2/2) z**m / sqrt(m!) and a polar midpoint rule
    over |z| <= radius.
    """
    dr = radius / n_radii
    dphi = 2.0 * math.pi / n_angles
    r = (np.arange(n_radii) + 0.5) * dr
    angle = (np.arange(n_angles) + 0.5) * dphi
    z = (r[:, None] * np.exp(1j * angle[None, :])).ravel()
    weights = np.repeat(r * dr * dphi, n_angles) / math.pi
    m = np.arange(m_max + 1)
    factorials = np.array([math.factorial(k) for k in m], dtype=float)
    overlaps = np.exp(-0.5 * np.abs(z) ** 2)[:, None] * z[:, None] ** m / np.sqrt(factorials)
    reconstructed = (overlaps.conj() * weights[:, None]).T @ overlaps
    error = float(np.max(np.abs(reconstructed - np.eye(m_max + 1))))
    logger.debug(f"Overcompleteness reconstruction error {error:.3e}")
    return error


def displaced_ground(
    model: ValidatedModel, traj: TrajectorySpec, z: complex, grid: Grid1D, t: float, terms: int
) -> StateField:
    """exp(-|z|**2/2) exp(z A+) phi_0 with every power of A+ taken on the grid.

    (A+)**k phi_0 = sqrt((k-1)!) A+ phi_{k-1}: one grid application per order, never nested.
    """
    total = phi_n(model, traj, 0, grid.points, t).astype(complex)
    for k in range(1, terms + 1):
        raised = apply_A("raise", phi_field(model, traj, k - 1, grid, t), model, traj)
        weight = z**k * math.exp(0.5 * math.lgamma(k) - math.lgamma(k + 1))
        total = total + weight * raised.values
    return StateField(grid=grid, values=math.exp(-0.5 * abs(z) ** 2) * total, time=t)
