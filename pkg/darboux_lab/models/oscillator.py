"""Parameter records for the stationary oscillator and its wave-packet data."""

import math
from dataclasses import dataclass

from pydantic import BaseModel, ConfigDict, Field

from darboux_lab.utils.errors import (
    ErmakovConditionViolated,
    NonPositiveParameter,
    ZeroLambda,
)
from darboux_lab.utils.logger import get_logger

logger = get_logger(__name__)

_RECORD_CONFIG = ConfigDict(frozen=True, extra="forbid", allow_inf_nan=False)

# Relative slack on a*c >= threshold so exact published values (1 * 4 = 4) pass
_CONDITION_SLACK = 1e-12


class OscillatorParams(BaseModel):
    """Physical constants of the stationary oscillator V0 = m*omega0**2*x**2/2."""

    model_config = _RECORD_CONFIG

    m: float = 1.0
    omega0: float = 0.5
    hbar: float = 1.0
    t0: float = 0.0


class ErmakovSpec(BaseModel):
    """User-facing Ermakov parameters; b is derived, lambda defaults to m*omega0/hbar."""

    model_config = ConfigDict(
        frozen=True, extra="forbid", allow_inf_nan=False, populate_by_name=True
    )

    a: float
    c: float
    lam: float | None = Field(default=None, alias="lambda")


class TrajectorySpec(BaseModel):
    """Initial phase-space point of the packet center."""

    model_config = _RECORD_CONFIG

    x0: float = 0.0
    p0: float = 0.0


class DarbouxSpec(BaseModel):
    """Transformation eigenvalue epsilon and the mixing constants k_a, k_b of F."""

    model_config = _RECORD_CONFIG

    epsilon: float
    k_a: float
    k_b: float


@dataclass(frozen=True)
class ValidatedModel:
    """Oscillator constants plus a complete, admissible set of Ermakov parameters."""

    params: OscillatorParams
    a: float
    b: float
    c: float
    lam: float

    @property
    def m(self) -> float:
        return self.params.m

    @property
    def omega0(self) -> float:
        return self.params.omega0

    @property
    def hbar(self) -> float:
        return self.params.hbar

    @property
    def t0(self) -> float:
        return self.params.t0

    @property
    def kappa(self) -> float:
        """Ermakov constant 2*hbar*lambda/m (equal to 2*omega0 at the default lambda)."""
        return 2.0 * self.hbar * self.lam / self.m

    @property
    def chi_scale(self) -> float:
        """Factor sqrt(m*kappa/hbar) = sqrt(2*lambda) in chi = scale*(x - <x>)/alpha."""
        return math.sqrt(self.m * self.kappa / self.hbar)


def validate(params: OscillatorParams, spec: ErmakovSpec) -> ValidatedModel:
    """Check the oscillator and Ermakov parameters and derive b.

    Args:
        params: Oscillator constants m, omega0, hbar, t0.
        spec: Ermakov parameters a, c and an optional lambda.

    Returns:
        Validated model with b = sqrt(a*c - (2*hbar*lambda/(m*omega0))**2).

    Raises:
        NonPositiveParameter: If m, omega0 or hbar is not positive, or a, c is negative.
        ZeroLambda: If lambda is zero (a negative lambda is a NonPositiveParameter).
        ErmakovConditionViolated: If a*c is below the threshold.
    """
    for name in ("m", "omega0", "hbar"):
        value = getattr(params, name)
        if not value > 0.0:
            raise NonPositiveParameter(f"{name} must be strictly positive, got {value}")
    for name in ("a", "c"):
        value = getattr(spec, name)
        if value < 0.0:
            raise NonPositiveParameter(f"Ermakov parameter {name} must be nonnegative, got {value}")

    lam = spec.lam if spec.lam is not None else params.m * params.omega0 / params.hbar
    if lam == 0.0:
        raise ZeroLambda("lambda = 0 collapses the Gaussian packet")
    if lam < 0.0:
        raise NonPositiveParameter(f"lambda must be positive for a normalizable packet, got {lam}")

    threshold = (2.0 * params.hbar * lam / (params.m * params.omega0)) ** 2
    product = spec.a * spec.c
    if product < threshold * (1.0 - _CONDITION_SLACK):
        raise ErmakovConditionViolated(
            f"a*c = {product} is below (2*hbar*lambda/(m*omega0))**2 = {threshold}"
        )

    b = math.sqrt(max(product - threshold, 0.0))
    logger.debug(f"Validated model: a={spec.a}, b={b}, c={spec.c}, lambda={lam}")
    return ValidatedModel(params=params, a=spec.a, b=b, c=spec.c, lam=lam)
