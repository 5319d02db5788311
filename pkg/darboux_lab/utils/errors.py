"""Exception hierarchy for Darboux Lab.

Every error carries the process exit code the CLI reports for it:
2 for rejected configuration, 3 for failed certification, 4 for numerical
failures and 5 for failed verification suites.
"""


class DarbouxLabError(Exception):
    """Base class for all domain errors."""

    exit_code = 4


class ConfigError(DarbouxLabError, ValueError):
    """Invalid parameters or configuration, rejected before any computation."""

    exit_code = 2


class NonPositiveParameter(ConfigError):
    """A physical constant that must be strictly positive is not."""


class ErmakovConditionViolated(ConfigError):
    """a*c is below (2*hbar*lambda/(m*omega0))**2, so b would be imaginary."""


class ZeroLambda(ConfigError):
    """The Ermakov coupling vanishes and the Gaussian packet degenerates."""


class CertificationError(DarbouxLabError):
    """A transformation could not be certified for use."""

    exit_code = 3


class NodelessCertificationFailed(CertificationError):
    """The seed function has a zero inside the requested window."""


class NotNormalizable(CertificationError):
    """The missing state is not square integrable."""


class NumericalError(DarbouxLabError):
    """A numerical kernel was asked for something outside its contract."""

    exit_code = 4


class DegreeTooLarge(NumericalError):
    """Hermite degree above the supported cap."""


class PoleInB(NumericalError):
    """The second Kummer parameter is a nonpositive integer."""


class NonConvergent(NumericalError):
    """A series did not converge within the supported range."""


class OutOfSupport(NumericalError):
    """Argument outside the support of a special-function kernel."""


class OutOfWindow(NumericalError):
    """Evaluation requested outside the certified nodeless window."""


class GridTooCoarse(NumericalError):
    """Estimated finite-difference error above tolerance."""


class GridMismatch(NumericalError):
    """Fields sampled on different grids."""


class TimeMismatch(NumericalError):
    """Fields evaluated at different times."""


class InvalidSamples(NumericalError, ValueError):
    """Sampled values of the wrong shape or with non-finite entries."""


class ZeroNorm(NumericalError):
    """A field with vanishing norm where a normalized one is required."""


class CapExceeded(NumericalError):
    """A mode index beyond the expansion cap was requested."""


class CapTooSmall(NumericalError):
    """Coherent-state truncation leaves a Poisson tail above 1e-14."""


class VerificationFailed(DarbouxLabError):
    """At least one verification check failed."""

    exit_code = 5
