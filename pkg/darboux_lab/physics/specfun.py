"""Special functions: physicists' Hermite polynomials, erf and Kummer's 1F1."""

from __future__ import annotations

import numpy as np
from numpy.typing import ArrayLike
from scipy import special

from darboux_lab.utils.errors import DegreeTooLarge, NonConvergent, PoleInB
from darboux_lab.utils.logger import get_logger

logger = get_logger(__name__)

HERMITE_MAX_DEGREE = 512

KUMMER_MAX_X = 50.0
KUMMER_TOL = 1.0e-16
KUMMER_MAXITERS = 5000
# Sum|terms| / |sum| above this triggers the Kummer-transformed series
KUMMER_CANCELLATION = 1.0e3


def _check_degree(n: int) -> None:
    if n < 0:
        raise ValueError(f"Hermite degree must be nonnegative, got {n}")
    if n > HERMITE_MAX_DEGREE:
        raise DegreeTooLarge(f"Hermite degree {n} exceeds the cap {HERMITE_MAX_DEGREE}")


def hermite(n: int, x: ArrayLike) -> np.ndarray:
    """Physicists' Hermite polynomial H_n(x) by the three-term recurrence.

    Args:
        n: Degree, 0 <= n <= 512.
        x: Abscissa or array of abscissae.

    Returns:
        H_n evaluated at x.

    Raises:
        DegreeTooLarge: If n exceeds the supported cap.
    """
    _check_degree(n)
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h


def hermite_functions(n_max: int, x: ArrayLike) -> np.ndarray:
    """Orthonormal Hermite functions h_k(x) = H_k(x) exp(-x**2/2) / sqrt(2**k k! sqrt(pi)).

    Rows k = 0..n_max of the returned array hold h_k sampled at x. The normalized
    recurrence h_{k+1} = sqrt(2/(k+1)) x h_k - sqrt(k/(k+1)) h_{k-1} stays in double
    range where H_k itself would overflow.
    """
    _check_degree(n_max)
    x = np.asarray(x, dtype=float)
    table = np.empty((n_max + 1,) + x.shape, dtype=float)
    table[0] = np.pi**-0.25 * np.exp(-0.5 * x**2)
    if n_max >= 1:
        table[1] = np.sqrt(2.0) * x * table[0]
    for k in range(1, n_max):
        table[k + 1] = np.sqrt(2.0 / (k + 1)) * x * table[k] - np.sqrt(k / (k + 1)) * table[k - 1]
    return table


def erf(x: ArrayLike) -> np.ndarray:
    """Error function."""
    return special.erf(x)


def _taylor(a: float, b: float, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Direct series for 1F1 with the running sum of |terms| for a conditioning estimate."""
    term = np.ones_like(x)
    total = np.ones_like(x)
    magnitude = np.ones_like(x)
    for i in range(KUMMER_MAXITERS):
        term = term * (a + i) * x / ((b + i) * (i + 1))
        total = total + term
        magnitude = magnitude + np.abs(term)
        if np.all(np.abs(term) <= KUMMER_TOL * np.abs(total)):
            break
    else:
        raise NonConvergent(
            f"1F1({a}; {b}; x) series exceeded {KUMMER_MAXITERS} terms for max x = {x.max()}"
        )
    return total, magnitude


def kummer(a: float, b: float, x: ArrayLike) -> np.ndarray:
    """Kummer's confluent hypergeometric function 1F1(a; b; x) for 0 <= x <= 50.

    The Taylor series is summed with the term-ratio recurrence. Where the terms
    cancel badly the transformed series exp(x) * 1F1(b - a; b; -x) is tried and
    whichever has the better conditioning estimate is kept.

    Args:
        a: Numerator parameter.
        b: Denominator parameter, not a nonpositive integer.
        x: Argument or array of arguments in [0, 50].

    Returns:
        1F1(a; b; x).

    Raises:
        PoleInB: If b is 0, -1, -2, ...
        NonConvergent: If x lies outside [0, 50] or the series fails to settle.
    """
    if b <= 0 and b == int(b):
        raise PoleInB(f"1F1 has a pole at b = {b}")
    x = np.asarray(x, dtype=float)
    if np.any(x < 0.0) or np.any(x > KUMMER_MAX_X):
        raise NonConvergent(f"1F1 is supported on [0, {KUMMER_MAX_X}] only")

    flat = np.atleast_1d(x).ravel()
    direct, magnitude = _taylor(a, b, flat)
    with np.errstate(divide="ignore", invalid="ignore"):
        condition = magnitude / np.abs(direct)
    poor = ~(condition <= KUMMER_CANCELLATION)
    if np.any(poor):
        transformed, t_magnitude = _taylor(b - a, b, -flat[poor])
        with np.errstate(divide="ignore", invalid="ignore"):
            t_condition = t_magnitude / np.abs(transformed)
        better = t_condition < condition[poor]
        candidates = np.exp(flat[poor]) * transformed
        direct[poor] = np.where(better, candidates, direct[poor])
        logger.debug(f"1F1({a}; {b}): Kummer transform used at {int(better.sum())} points")
    return direct.reshape(x.shape)
